#include <gtest/gtest.h>

#include "cpi/errors.hpp"
#include "cpi/lts.hpp"
#include "cpi/names.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace cpi {
namespace {

using testing::ch;
using testing::chans;
using testing::pi;

std::vector<std::string> labels(const std::vector<Transition>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(render(t.action) + " -> " + render(t.target));
  return out;
}

TEST(successors, free_output) {
  const auto ts = successors(pi("k!<l>.0"), chans({"k", "l"}));
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].action, Action::out(ch("k"), {ch("l")}));
  EXPECT_TRUE(ts[0].target.is_nil());
  EXPECT_EQ(ts[0].rules, std::vector<std::string>{"out"});
}

TEST(successors, bound_output_opens_scope) {
  const auto ts = successors(pi("new l in k!<l>.0"), chans({"k"}));
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].action.kind, ActionKind::BoundOut);
  EXPECT_EQ(ts[0].action.subject, ch("k"));
  ASSERT_EQ(ts[0].action.objects.size(), 1u);
  EXPECT_EQ(ts[0].action.bound, ts[0].action.objects);
  EXPECT_TRUE(ts[0].target.is_nil());
  EXPECT_EQ(ts[0].rules, (std::vector<std::string>{"out", "open"}));
}

TEST(successors, comm_plus_visible_actions) {
  const Process p = pi("k!<l>.0 | k?(x).0");
  const NameSet env = chans({"k", "l"});
  const auto ts = successors(p, env);
  EXPECT_EQ(oracle::as_set(ts), oracle::expected(p, env));
  bool tau = false;
  for (const auto& t : ts) {
    if (t.action.is_tau()) {
      tau = true;
      EXPECT_EQ(render(t.target), "0 | 0");
      EXPECT_EQ(t.rules, (std::vector<std::string>{"out", "in", "comm-l"}));
    }
  }
  EXPECT_TRUE(tau);
  // Out, tau, and inputs over {k, l, fresh}.
  EXPECT_EQ(ts.size(), 5u) << ::testing::PrintToString(labels(ts));
}

TEST(successors, input_instances_use_one_fresh_name_per_position) {
  const auto ts = successors(pi("k?(x, y).0"), chans({"k"}));
  // Tuples over {k} plus fresh names introduced left to right:
  // (k,k) (k,#0) (#0,k) (#0,#0) (#0,#1).
  EXPECT_EQ(ts.size(), 5u) << ::testing::PrintToString(labels(ts));
}

TEST(successors, restricted_subject_blocks) {
  EXPECT_TRUE(successors(pi("new k in k!<l>.0"), {}).empty());
  EXPECT_TRUE(successors(pi("new k in k?(x).0"), {}).empty());
}

TEST(successors, unmatched_guard_blocks) {
  EXPECT_TRUE(successors(pi("[a=b]k!<l>.0"), {}).empty());
  const auto ts = successors(pi("[a=a]k!<l>.0"), {});
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].rules, (std::vector<std::string>{"out", "match"}));
}

TEST(successors, guard_on_received_name_fires_after_instantiation) {
  const auto ts = successors(pi("k?(x).[x=m]m!<m>.0"), chans({"k", "m"}));
  bool matched = false;
  for (const auto& t : ts) {
    if (t.action == Action::in(ch("k"), {ch("m")})) {
      matched = true;
      EXPECT_EQ(render(t.target), "[m=m]m!<m>.0");
    }
  }
  EXPECT_TRUE(matched);
}

TEST(successors, close_extrudes_scope) {
  const Process p = pi("(new l in k!<l>.l!<l>.0) | k?(x).x?(y).0");
  const auto ts = successors(p, {});
  EXPECT_EQ(oracle::as_set(ts), oracle::expected(p, {}));
  bool closed = false;
  for (const auto& t : ts) {
    if (t.action.is_tau()) {
      closed = true;
      EXPECT_EQ(t.rules.back(), "close-l");
      EXPECT_TRUE(t.target.is_restrict());
    }
  }
  EXPECT_TRUE(closed);
}

TEST(successors, close_right) {
  const Process p = pi("k?(x).x?(y).0 | new l in k!<l>.l!<l>.0");
  const auto ts = successors(p, {});
  EXPECT_EQ(oracle::as_set(ts), oracle::expected(p, {}));
  bool closed = false;
  for (const auto& t : ts) {
    if (t.action.is_tau()) {
      closed = true;
      EXPECT_EQ(t.rules.back(), "close-r");
    }
  }
  EXPECT_TRUE(closed);
}

TEST(successors, replication_comm_and_close) {
  for (const char* text : {"!(k!<l>.0 | k?(x).0)", "!(new l in k!<l>.0 | k?(x).x!<m>.0)",
                           "!k!<l>.0 | !k?(x).0", "!new l in (k!<l>.0 | k?(x).x?(y).0)"}) {
    const Process p = pi(text);
    EXPECT_EQ(oracle::as_set(successors(p, {})), oracle::expected(p, {})) << text;
  }
}

TEST(successors, rep_rules_named) {
  std::set<std::string> rules;
  for (const auto& t : successors(pi("!(new l in k!<l>.0 | k?(x).x!<m>.0)"), {})) {
    for (const auto& r : t.rules) rules.insert(r);
  }
  EXPECT_TRUE(rules.count("rep-act"));
  EXPECT_TRUE(rules.count("rep-close"));
  std::set<std::string> plain;
  for (const auto& t : successors(pi("!(k!<l>.0 | k?(x).0)"), {})) {
    for (const auto& r : t.rules) plain.insert(r);
  }
  EXPECT_TRUE(plain.count("rep-comm"));
}

TEST(successors, arity_mismatch_is_sort_error) {
  EXPECT_THROW(successors(testing::raw("k!<l>.0 | k?(x, y).0"), {}), SortError);
}

TEST(successors, environment_monotonicity) {
  const Process p = pi("k?(x).x!<m>.0 | new l in k!<l>.0");
  const auto small = oracle::as_set(successors(p, {}));
  const auto big = oracle::as_set(successors(p, chans({"a", "b"})));
  for (const auto& t : small) EXPECT_TRUE(big.count(t)) << t.first;
  EXPECT_GT(big.size(), small.size());
}

TEST(successors, deterministic) {
  const Process p = pi("!(new l in k!<l>.0 | k?(x).x!<m>.0) | k?(z).0");
  EXPECT_EQ(labels(successors(p, {})), labels(successors(p, {})));
}

TEST(run_trace, output) {
  EXPECT_TRUE(run_trace(pi("k!<l>.0"), {Action::out(ch("k"), {ch("l")})}).is_nil());
}

TEST(run_trace, input) {
  EXPECT_TRUE(run_trace(pi("k?(x).0"), {Action::in(ch("k"), {ch("m")})}).is_nil());
}

TEST(run_trace, nil_has_no_tau) {
  try {
    run_trace(nil(), {Action::tau()});
    FAIL() << "expected NoSuchTransition";
  } catch (const NoSuchTransition& e) {
    EXPECT_EQ(e.step, 0u);
  }
}

TEST(run_trace, bound_output_matches_up_to_renaming) {
  const Process p = pi("new l in k!<l>.l?(x).0");
  const Process end = run_trace(p, {Action::bound_out(ch("k"), {ch("z")}, {ch("z")}),
                                    Action::in(ch("z"), {ch("k")})});
  EXPECT_TRUE(end.is_nil());
}

TEST(run_trace, backtracks_over_choices) {
  const Process p = pi("k!<l>.0 | k!<l>.m!<m>.0");
  EXPECT_TRUE(run_trace(p, {Action::out(ch("k"), {ch("l")}), Action::out(ch("m"), {ch("m")})})
                  .is_par());
}

TEST(run_trace, reports_deepest_failing_step) {
  try {
    run_trace(pi("k!<l>.m!<m>.0"), {Action::out(ch("k"), {ch("l")}), Action::tau()});
    FAIL() << "expected NoSuchTransition";
  } catch (const NoSuchTransition& e) {
    EXPECT_EQ(e.step, 1u);
  }
}

TEST(tau_reachable, nil) {
  const auto r = tau_reachable(nil(), 5);
  ASSERT_EQ(r.states.size(), 1u);
  EXPECT_TRUE(r.states[0].is_nil());
  EXPECT_FALSE(r.budget_exceeded);
}

TEST(tau_reachable, single_comm) {
  const Process p = pi("new k in (k!<k>.0 | k?(x).0)");
  const auto r = tau_reachable(p, 1);
  // Oracle: the start plus the tau targets of one successors call.
  std::set<std::string> want{render(p)};
  for (const auto& t : successors(p, {})) {
    if (t.action.is_tau()) want.insert(render(t.target));
  }
  std::set<std::string> got;
  for (const auto& s : r.states) got.insert(render(s));
  EXPECT_EQ(got, want);
  EXPECT_TRUE(got.count(render(pi("new k in (0 | 0)"))));
  EXPECT_FALSE(r.budget_exceeded);
}

TEST(tau_reachable, replicated_restriction_is_inert) {
  const auto r = tau_reachable(pi("!new k in 0"), 3);
  EXPECT_EQ(r.states.size(), 1u);
  EXPECT_FALSE(r.budget_exceeded);
}

TEST(tau_reachable, budget_flag) {
  const auto r = tau_reachable(pi("!(k!<k>.0 | k?(x).0)"), 2);
  EXPECT_TRUE(r.budget_exceeded);
  EXPECT_EQ(r.distance.back(), 2u);
}

} // namespace
} // namespace cpi
