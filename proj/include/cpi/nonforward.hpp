#pragma once

// Non-forwarding: a process must never output, as a free object, a channel
// it received while that channel was not among its free names.

#include <cstdint>
#include <optional>
#include <vector>

#include "cpi/bisim.hpp"
#include "cpi/lts.hpp"
#include "cpi/validate.hpp"

namespace cpi {

enum class NFResult : std::uint8_t { SatisfiedUpToDepth, Violated };

/// When a received channel counts as new to the receiver.
enum class NewnessTest : std::uint8_t {
  /// Not free in the receiving state (the property as defined).
  FreeNames,
  /// Not a free output object of the receiving state (the stronger form
  /// C_pi terms are known to satisfy).
  FreeOutputObjects,
};

struct NFViolation {
  std::vector<Action> trace;
  /// 0-based positions in `trace`.
  std::size_t receive_index = 0;
  std::size_t send_index = 0;
  Name channel;
};

struct NFVerdict {
  NFResult result = NFResult::SatisfiedUpToDepth;
  std::size_t depth = 0;
  std::optional<NFViolation> violation;

  bool satisfied() const { return result == NFResult::SatisfiedUpToDepth; }
};

/// Explores every trace of length at most `depth` breadth-first. Bound
/// outputs and fresh inputs use names new to the whole trace, and the
/// violation reported has the smallest send index.
NFVerdict check_nonforwarding(const Process& p, std::size_t depth,
                              NewnessTest test = NewnessTest::FreeNames);

enum class Guarantee : std::uint8_t { Guaranteed, NotApplicable };

struct StaticGuarantee {
  Guarantee result = Guarantee::NotApplicable;
  ValidationReport report;

  bool guaranteed() const { return result == Guarantee::Guaranteed; }
};

/// Guaranteed exactly for C_pi terms.
StaticGuarantee static_guarantee(const Process& p);

enum class EvidenceResult : std::uint8_t { Positive, Negative };

struct Evidence {
  EvidenceResult result = EvidenceResult::Negative;
  ValidationReport witness_report;
  Verdict verdict;

  bool positive() const { return result == EvidenceResult::Positive; }
};

/// Bounded evidence that p does not forward: q is a C_pi term and p, q
/// survive `depth` rounds of the bisimulation game. Throws WitnessNotCpi
/// when q is not a C_pi term.
Evidence witness_check(const Process& p, const Process& q, std::size_t depth);

} // namespace cpi
