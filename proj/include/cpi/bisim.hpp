#pragma once

// Bounded strong bisimilarity. check(p, q, d) plays d rounds of the
// bisimulation game: the attacker picks a transition on either side and the
// defender must answer with an equal label on the other side. Inputs on both
// sides are instantiated over fn(p) u fn(q) plus the same fresh names, so
// the players see identical labels, bound outputs included.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpi/lts.hpp"
#include "cpi/syntax.hpp"

namespace cpi {

enum class BisimResult : std::uint8_t { BisimilarUpToDepth, NotBisimilar };

enum class Side : std::uint8_t { Left, Right };

struct CounterStep {
  Action action;
  /// The side that moved and could not be matched from here on.
  Side side;
  friend bool operator==(const CounterStep&, const CounterStep&) = default;
};

struct Verdict {
  BisimResult result = BisimResult::BisimilarUpToDepth;
  std::size_t depth = 0;
  /// Attacker moves, each followed by the defender's first equally labelled
  /// answer; the last move has no answer that survives the remaining rounds.
  std::vector<CounterStep> counterexample;

  bool bisimilar() const { return result == BisimResult::BisimilarUpToDepth; }
};

Verdict check(const Process& p, const Process& q, std::size_t depth);

/// Both sides of the closed-domain equation:
///   new k in ((new l in k!<l>.m?(y).[y=l]pi.0) | k?(x).body)
///   new k in ((new l in k!<l>.m?(y).0) | k?(x).body)
/// A free channel named x in `body` is read as the received variable.
/// Throws ConstructionError when body, m or pi mention k, l or y.
std::pair<Process, Process> private_guard_sides(const Process& body, const Name& m,
                                                const Prefix& pi);

Verdict check_private_guard_instance(const Process& body, const Name& m, const Prefix& pi,
                                     std::size_t depth);

struct LawFailure {
  std::string law;
  Process lhs;
  Process rhs;
  Verdict verdict;
};

struct LawOutcome {
  std::string law;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

struct LawReport {
  std::vector<LawOutcome> laws;
  std::vector<LawFailure> failures;
  /// Outcome of the false law P | Q ~ P, when requested.
  std::optional<LawOutcome> mutant;
  std::optional<LawFailure> mutant_failure;

  bool all_passed() const { return failures.empty(); }
};

/// Names of the standard laws, in checking order.
std::vector<std::string> law_names();

/// Checks every standard law on `instances` random C_pi terms each. With
/// `include_mutant`, also checks the false law P | Q ~ P, which the suite
/// is expected to refute; its first refutation is kept as evidence.
LawReport law_suite(std::uint64_t seed, std::size_t instances, std::size_t depth,
                    bool include_mutant = false);

} // namespace cpi
