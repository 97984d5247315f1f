#include <gtest/gtest.h>

#include "cpi/commands.hpp"

namespace cpi {
namespace {

CommonOptions pi_mode() {
  CommonOptions o;
  o.mode = ParseMode::PiFull;
  return o;
}

TEST(cmd_parse, reports_term_and_cpi) {
  const auto r = cmd_parse("new k in k!<k>.0", {});
  EXPECT_EQ(r.exit_code, exit_status::ok);
  EXPECT_TRUE(r.json["cpi"]["accepted"].get<bool>());
  EXPECT_EQ(r.json["size"].get<std::size_t>(), 4u);
}

TEST(cmd_parse, syntax_error_is_input_error) {
  const auto r = cmd_parse("a!<b>.", {});
  EXPECT_EQ(r.exit_code, exit_status::input_error);
  EXPECT_FALSE(r.text.empty());
}

TEST(cmd_parse, variable_object_is_violation_in_strict_mode) {
  const auto r = cmd_parse("a?(x).b!<x>.0", {});
  EXPECT_EQ(r.exit_code, exit_status::violation);
  EXPECT_EQ(cmd_parse("a?(x).b!<x>.0", pi_mode()).exit_code, exit_status::ok);
}

TEST(cmd_parse, arity_clash_is_violation) {
  EXPECT_EQ(cmd_parse("a!<b>.0 | a?(x, y).0", {}).exit_code, exit_status::violation);
}

TEST(cmd_step, lists_transitions) {
  const auto r = cmd_step("a!<b>.0 | a?(x).0", {}, std::nullopt);
  EXPECT_EQ(r.exit_code, exit_status::ok);
  EXPECT_EQ(r.json["count"].get<std::size_t>(), r.json["transitions"].size());
  bool tau = false;
  for (const auto& t : r.json["transitions"]) tau = tau || t["action"]["kind"] == "tau";
  EXPECT_TRUE(tau);
}

TEST(cmd_step, depth_gives_tau_reachable_states) {
  const auto r = cmd_step("new k in (k!<k>.0 | k?(x).0)", {}, 3);
  EXPECT_EQ(r.exit_code, exit_status::ok);
  EXPECT_EQ(r.json["states"].size(), 2u);
  EXPECT_FALSE(r.json["budget_exceeded"].get<bool>());
}

TEST(cmd_bisim, positive_and_negative) {
  EXPECT_EQ(cmd_bisim("new k in k!<k>.0", "0", {}, 4).exit_code, exit_status::ok);
  const auto r = cmd_bisim("a!<a>.0", "0", {}, 4);
  EXPECT_EQ(r.exit_code, exit_status::negative);
  EXPECT_EQ(r.json["result"], "NotBisimilar");
  EXPECT_FALSE(r.json["counterexample"].is_null());
}

TEST(cmd_laws, small_suite_passes_and_refutes_mutant) {
  const auto r = cmd_laws({}, 10, 3);
  EXPECT_EQ(r.exit_code, exit_status::ok) << r.text;
  EXPECT_TRUE(r.json["all_passed"].get<bool>());
  EXPECT_GT(r.json["mutant"]["failures"].get<std::size_t>(), 0u);
}

TEST(cmd_nonforward, forwarding_is_negative) {
  const auto r = cmd_nonforward("a?(x).b!<x>.0", pi_mode(), 5, std::nullopt);
  EXPECT_EQ(r.exit_code, exit_status::negative);
  EXPECT_EQ(r.json["result"], "Violated");
}

TEST(cmd_nonforward, cpi_term_is_satisfied) {
  const auto r = cmd_nonforward("a?(x).b!<a>.0", {}, 5, std::nullopt);
  EXPECT_EQ(r.exit_code, exit_status::ok);
  EXPECT_EQ(r.json["result"], "SatisfiedUpToDepth");
}

TEST(cmd_nonforward, witness_must_be_cpi) {
  const auto r = cmd_nonforward("a?(x).0", pi_mode(), 3, std::string("a?(x).b!<x>.0"));
  EXPECT_EQ(r.exit_code, exit_status::violation);
}

TEST(cmd_encode, keeps_source_names_and_is_cpi) {
  const auto r = cmd_encode("a?(x).b!<x>.0", pi_mode(), {});
  EXPECT_EQ(r.exit_code, exit_status::ok);
  EXPECT_TRUE(r.json["cpi"]["accepted"].get<bool>());
  EXPECT_EQ(r.json["source"], "a?(x).b!<x>.0");
}

TEST(cmd_encode, reserved_free_name_is_input_error) {
  CommonOptions o = pi_mode();
  o.allow_reserved = true;
  EXPECT_EQ(cmd_encode("#r1!<a>.0", o, {}).exit_code, exit_status::input_error);
}

TEST(cmd_encode, verify_closed_comm) {
  EncodeOptions enc;
  enc.verify = true;
  const auto r = cmd_encode("new k, l in (k!<l>.0 | k?(x).0)", pi_mode(), enc);
  EXPECT_EQ(r.exit_code, exit_status::ok) << r.text;
}

} // namespace
} // namespace cpi
