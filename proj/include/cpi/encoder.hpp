#pragma once

// Translation of sum-free monadic pi terms into polyadic C_pi terms.
//
// Every source name a is paired with two handler addresses n_a and m_a. A
// restricted channel k brings its handler H_k into scope; a send a!<b>
// becomes a handshake with the handlers of a and b, which deliver b to the
// receiver together with b's handler addresses, so the sender never sends b
// itself. Names introduced per occurrence are '#r<n>', numbered from a
// counter whose origin is the CPI_FRESH_START environment variable (0 when
// unset).

#include <cstddef>
#include <optional>
#include <vector>

#include "cpi/bisim.hpp"
#include "cpi/syntax.hpp"

namespace cpi {

struct NameTriple {
  Name base;
  /// '#n_<ident>', of the same kind as base.
  Name n_name;
  /// '#m_<ident>', of the same kind as base.
  Name m_name;
};

/// Throws ReservedNameError for reserved names.
NameTriple renaming_policy(const Name& a);

/// H_k = !n_k?(x).x!<k>.0 | !m_k?(x1, x2).x1?(y).new t in y!<k, n_k, m_k, t>.x2!<t>.0
Process handler(const Name& k);

/// Counter origin from CPI_FRESH_START.
std::size_t fresh_start_from_environment();

/// Throws SourceModeError on polyadic prefixes or reserved free names.
/// Reserved binders, as produced by canonicalize, are first renamed to
/// unused source identifiers 's<n>'.
Process encode(const Process& p);
Process encode(const Process& p, std::size_t fresh_start);

/// encode(p) | H_k1 | ... | H_kn over fnn(p) in sorted order, or
/// encode(p) | 0 when fnn(p) is empty.
Process encode_with_handlers(const Process& p);

/// Distinct tau reducts of a closed source term. Throws SourceModeError
/// when p has free names. Reduct binders get unused source identifiers
/// 's<n>' so the reducts can be encoded in turn.
std::vector<Process> source_reductions(const Process& p);

struct EncodingReport {
  Process source;
  /// The source reduct.
  Process target;
  /// Unset when no witness was found within the budget.
  std::optional<std::size_t> tau_steps;
  std::optional<Process> witness;
  std::optional<Verdict> verdict;

  bool success() const { return witness.has_value(); }
};

/// For every reduct q of p, searches the tau-reachable states of
/// encode_with_handlers(p) breadth-first for one bisimilar up to
/// `bisim_depth` with encode_with_handlers(q).
std::vector<EncodingReport> check_completeness(const Process& p, std::size_t tau_budget,
                                               std::size_t bisim_depth);

} // namespace cpi
