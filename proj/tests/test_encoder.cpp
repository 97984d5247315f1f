#include <gtest/gtest.h>

#include "cpi/encoder.hpp"
#include "cpi/errors.hpp"
#include "cpi/generator.hpp"
#include "cpi/names.hpp"
#include "cpi/validate.hpp"
#include "support.hpp"

namespace cpi {
namespace {

using testing::ch;
using testing::pi;
using testing::raw;
using testing::to_variable;
using testing::var;

GeneratorOptions source_options(std::size_t max_size) {
  GeneratorOptions opts;
  opts.max_size = max_size;
  opts.variable_objects = true;
  return opts;
}

TEST(renaming_policy, deterministic_reserved_names) {
  const NameTriple t = renaming_policy(ch("k"));
  EXPECT_EQ(t.base, ch("k"));
  EXPECT_EQ(t.n_name, ch("#n_k"));
  EXPECT_EQ(t.m_name, ch("#m_k"));
  EXPECT_EQ(renaming_policy(ch("k")).n_name, t.n_name);
}

TEST(renaming_policy, distinct_names_get_disjoint_triples) {
  const NameTriple a = renaming_policy(ch("a"));
  const NameTriple b = renaming_policy(ch("b"));
  const NameSet sa{a.base, a.n_name, a.m_name};
  for (const auto& n : {b.base, b.n_name, b.m_name}) EXPECT_FALSE(sa.count(n));
}

TEST(renaming_policy, reserved_name_rejected) {
  EXPECT_THROW(renaming_policy(ch("#n_k")), ReservedNameError);
}

TEST(handler, is_cpi_valid) { EXPECT_TRUE(validate_cpi(handler(ch("k"))).accepted()); }

TEST(handler, matches_the_written_form) {
  const Process want = raw(
      "(!#n_k?(a).a!<k>.0) | !#m_k?(b, c).b?(d).new t in d!<k, #n_k, #m_k, t>.c!<t>.0");
  EXPECT_TRUE(alpha_equivalent(handler(ch("k")), want));
}

TEST(handler, restricted_handler_is_inert) {
  const NameTriple t = renaming_policy(ch("k"));
  EXPECT_TRUE(check(restrict({t.base, t.n_name, t.m_name}, handler(ch("k"))), nil(), 4).bisimilar());
}

TEST(handler, different_channels_share_no_free_names) {
  const NameSet a = free_names(handler(ch("k")));
  for (const auto& n : free_names(handler(ch("l")))) EXPECT_FALSE(a.count(n));
}

TEST(encode, nil) { EXPECT_EQ(encode(nil()), nil()); }

TEST(encode, restriction_brings_its_handler) {
  const Process got = encode(raw("new k in 0"), 0);
  const Process want = restrict({ch("k"), ch("#n_k"), ch("#m_k")}, par(nil(), handler(ch("k"))));
  EXPECT_EQ(got, want);
}

TEST(encode, forward_goes_through_received_handler) {
  const Process got = encode(raw("k?(x).g!<x>.0"), 0);
  // Hand transcription of the input and output rules.
  const Process want = raw(
      "k?(x, nx, mx, x1).x1?(y).new e1, e2 in #n_g!<e1>.mx!<e1, e2>.e2?(y1).y1!<e1>.0");
  EXPECT_TRUE(alpha_equivalent(got, want)) << render(got);
  EXPECT_TRUE(validate_cpi(got).accepted());
  EXPECT_EQ(free_names(got), (NameSet{ch("k"), ch("#n_g")}));
}

TEST(encode, match_chain_sits_inside_the_hoisted_restriction) {
  const Process got = encode(raw("[a=b]k!<l>.0"), 0);
  const Process want = raw("new e1, e2 in [a=b]#n_k!<e1>.#m_l!<e1, e2>.e2?(y).y!<e1>.0");
  EXPECT_TRUE(alpha_equivalent(got, want)) << render(got);
}

TEST(encode, guarded_input_keeps_its_guards) {
  const Process got = encode(raw("[a=a]k?(x).0"), 0);
  EXPECT_TRUE(alpha_equivalent(got, raw("[a=a]k?(x, nx, mx, x1).x1?(y).0"))) << render(got);
}

TEST(encode, counter_origin_shifts_reserved_names) {
  const Process a = encode(raw("k!<l>.0"), 0);
  const Process b = encode(raw("k!<l>.0"), 40);
  EXPECT_NE(a, b);
  EXPECT_TRUE(alpha_equivalent(a, b));
  EXPECT_NE(render(b).find("#r40"), std::string::npos);
}

TEST(encode, canonical_binders_are_accepted) {
  const Process p = pi("new k, l in (k!<l>.0 | k?(x).0)");
  EXPECT_TRUE(alpha_equivalent(encode(p, 0), encode(raw("new k, l in (k!<l>.0 | k?(x).0)"), 0)));
}

TEST(encode, rejects_inputs_outside_the_source_language) {
  EXPECT_THROW(encode(raw("k!<a, b>.0")), SourceModeError);
  EXPECT_THROW(encode(raw("#n_k!<a>.0")), SourceModeError);
}

TEST(encode, output_is_cpi_on_random_terms) {
  Generator gen(13, source_options(10));
  for (int i = 0; i < 100; ++i) {
    const Process p = gen.next();
    const auto r = validate_cpi(encode(p));
    EXPECT_TRUE(r.accepted()) << render(p) << ": " << r.violations.front().message;
  }
}

TEST(encode, homomorphic_on_par_and_replication) {
  Generator gen(17, source_options(6));
  for (int i = 0; i < 50; ++i) {
    const Process p = gen.next();
    const Process q = gen.next();
    EXPECT_TRUE(alpha_equivalent(encode(par(p, q)), par(encode(p), encode(q))));
    EXPECT_TRUE(alpha_equivalent(encode(repl(p)), repl(encode(p))));
  }
}

TEST(encode, name_invariance_on_random_terms) {
  Generator gen(19, source_options(8));
  const Name x = var("x");
  const NameTriple tx = renaming_policy(x);
  std::size_t nontrivial = 0;
  for (int i = 0; i < 80; ++i) {
    const Process base = gen.next();
    const NameSet fn = free_names(base);
    if (fn.empty()) continue;
    // Open the term in x, then instantiate x with one of its channels.
    const Name c = *std::next(fn.begin(), gen.below(fn.size()));
    const Process p = to_variable(base, c, x);
    for (const Name& k : {c, ch("fresh")}) {
      const NameTriple tk = renaming_policy(k);
      const Process lhs = substitute_free(encode(p), {{x, k}, {tx.n_name, tk.n_name}, {tx.m_name, tk.m_name}});
      const Process rhs = encode(substitute_free(p, {{x, k}}));
      EXPECT_TRUE(alpha_equivalent(lhs, rhs)) << render(p) << " with " << k.ident;
    }
    ++nontrivial;
  }
  EXPECT_GT(nontrivial, 40u);
}

TEST(encode, preserves_structural_congruence_instances) {
  Generator gen(23, source_options(5));
  for (int i = 0; i < 20; ++i) {
    const Process p = gen.next();
    const Process q = gen.next();
    EXPECT_TRUE(check(encode(par(p, q)), encode(par(q, p)), 3).bisimilar()) << render(p);
    EXPECT_TRUE(check(encode(par(p, nil())), encode(p), 3).bisimilar()) << render(p);
    EXPECT_TRUE(check(encode(repl(p)), encode(par(p, repl(p))), 3).bisimilar()) << render(p);
  }
}

TEST(encode_with_handlers, closed_term_gets_nil) {
  const Process p = raw("new k, l in (k!<l>.0 | k?(x).0)");
  EXPECT_EQ(encode_with_handlers(p), par(encode(p), nil()));
  EXPECT_TRUE(check(encode_with_handlers(p), encode(p), 4).bisimilar());
}

TEST(encode_with_handlers, one_handler_per_free_name_in_order) {
  const Process p = raw("k!<l>.0 | k?(x).0");
  const Process want = par(par(encode(p), handler(ch("k"))), handler(ch("l")));
  EXPECT_EQ(encode_with_handlers(p), want);
  const Process swapped = par(par(encode(p), handler(ch("l"))), handler(ch("k")));
  EXPECT_TRUE(check(want, swapped, 1).bisimilar());
}

TEST(encode_with_handlers, reflexive_match_needs_no_handler) {
  const Process got = encode_with_handlers(raw("[a=a]k!<k>.0"));
  EXPECT_EQ(got, par(encode(raw("[a=a]k!<k>.0")), handler(ch("k"))));
}

TEST(fnn, invariant_on_congruence_instances) {
  Generator gen(29, source_options(8));
  for (int i = 0; i < 50; ++i) {
    const Process p = gen.next();
    const Process q = gen.next();
    EXPECT_EQ(fnn(par(p, nil())), fnn(p));
    EXPECT_EQ(fnn(par(p, q)), fnn(par(q, p)));
    EXPECT_EQ(fnn(repl(p)), fnn(par(p, repl(p))));
    EXPECT_EQ(fnn(restrict({ch("unused")}, p)), fnn(p));
  }
}

TEST(fnn, reductions_add_no_names) {
  Generator gen(31, source_options(9));
  std::size_t steps = 0;
  for (int i = 0; i < 300; ++i) {
    const Process p = gen.next();
    const NameSet before = fnn(p);
    for (const auto& t : tau_successors(p)) {
      ++steps;
      EXPECT_TRUE(is_subset(fnn(t.target), before)) << render(p);
    }
  }
  EXPECT_GT(steps, 30u);
}

TEST(source_reductions, single_comm) {
  const auto rs = source_reductions(raw("new k, l in (k!<l>.0 | k?(x).0)"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(alpha_equivalent(rs[0], raw("new k, l in (0 | 0)")));
}

TEST(source_reductions, replicated_comm_has_one_shape) {
  EXPECT_EQ(source_reductions(raw("new k in ((!k!<k>.0) | !k?(x).0)")).size(), 1u);
}

TEST(source_reductions, nil_has_none) { EXPECT_TRUE(source_reductions(nil()).empty()); }

TEST(source_reductions, open_term_rejected) {
  EXPECT_THROW(source_reductions(raw("k!<l>.0 | k?(x).0")), SourceModeError);
}

TEST(check_completeness, plain_comm_needs_six_tau_steps) {
  const auto reports = check_completeness(raw("new k, l in (k!<l>.0 | k?(x).0)"), 12, 4);
  ASSERT_EQ(reports.size(), 1u);
  ASSERT_TRUE(reports[0].success());
  EXPECT_EQ(*reports[0].tau_steps, 6u);
  EXPECT_TRUE(reports[0].verdict->bisimilar());
  EXPECT_TRUE(check(*reports[0].witness, encode_with_handlers(reports[0].target), 4).bisimilar());
}

TEST(check_completeness, witness_is_tau_reachable) {
  const Process p = raw("new k, l in (k!<l>.0 | k?(x).0)");
  const auto report = check_completeness(p, 12, 4).at(0);
  const TauReachable reach = tau_reachable(encode_with_handlers(p), *report.tau_steps);
  bool found = false;
  for (std::size_t i = 0; i < reach.states.size(); ++i) {
    found = found || (reach.states[i] == canonicalize(*report.witness) && reach.distance[i] == 6);
  }
  EXPECT_TRUE(found);
}

TEST(check_completeness, forward_succeeds_for_both_source_steps) {
  const Process p = raw("new k, g, l in (k!<l>.0 | k?(x).g!<x>.0 | g?(y).0)");
  const auto first = check_completeness(p, 12, 4);
  ASSERT_EQ(first.size(), 1u);
  ASSERT_TRUE(first[0].success());
  const auto second = check_completeness(first[0].target, 12, 4);
  ASSERT_EQ(second.size(), 1u);
  EXPECT_TRUE(second[0].success());
}

TEST(check_completeness, nil_has_no_reports) { EXPECT_TRUE(check_completeness(nil(), 12, 4).empty()); }

TEST(check_completeness, budget_too_small_reports_failure) {
  const auto reports = check_completeness(raw("new k, l in (k!<l>.0 | k?(x).0)"), 3, 8);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].success());
  EXPECT_FALSE(reports[0].tau_steps.has_value());
  EXPECT_FALSE(reports[0].verdict.has_value());
}

} // namespace
} // namespace cpi
