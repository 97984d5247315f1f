#include <gtest/gtest.h>

#include "cpi/corpus.hpp"

namespace cpi {
namespace {

const std::filesystem::path kRoot = CPI_CORPUS_DIR;

TEST(json_contains, subset_semantics) {
  const Json actual = Json::parse(R"({"a": 1, "b": [{"x": 1, "y": 2}, {"x": 3}], "c": "s"})");
  EXPECT_TRUE(json_contains(actual, Json::parse(R"({"a": 1})")));
  EXPECT_TRUE(json_contains(actual, Json::parse(R"({"b": [{"x": 3}, {"y": 2}]})")));
  EXPECT_FALSE(json_contains(actual, Json::parse(R"({"a": 2})")));
  EXPECT_FALSE(json_contains(actual, Json::parse(R"({"d": 1})")));
  EXPECT_FALSE(json_contains(actual, Json::parse(R"({"b": [{"x": 4}]})")));
}

TEST(corpus, has_cases_in_every_topic) {
  const auto cases = load_corpus(kRoot);
  EXPECT_GE(cases.size(), 30u);
  for (const char* topic :
       {"calculus/", "encoding/", "equivalence/", "intro/", "nonforwarding/", "scenarios/"}) {
    bool found = false;
    for (const auto& c : cases) found = found || c.name.rfind(topic, 0) == 0;
    EXPECT_TRUE(found) << topic;
  }
}

TEST(corpus, every_case_replays) {
  for (const auto& c : load_corpus(kRoot)) {
    const auto outcome = replay(c);
    EXPECT_TRUE(outcome.ok) << c.name << ": " << outcome.detail;
  }
}

TEST(corpus, wrong_expectation_is_detected) {
  auto c = load_case(kRoot / "calculus" / "nil.cpi", kRoot);
  c.expectation["exit_code"] = 3;
  EXPECT_FALSE(replay(c).ok);
}

} // namespace
} // namespace cpi
