#pragma once

// The command-line operations as library calls: each takes source text and
// returns an exit status, a JSON document and a human-readable report.

#include <cstdint>
#include <optional>
#include <string>

#include "cpi/parser.hpp"
#include "cpi/serialize.hpp"

namespace cpi {

namespace exit_status {
constexpr int ok = 0;
/// Syntax errors, unreadable files and inputs outside an operation's domain.
constexpr int input_error = 1;
/// C_pi violations and sort errors.
constexpr int violation = 2;
/// NotBisimilar, Violated, Negative, or a failed encoding check.
constexpr int negative = 3;
constexpr int usage = 64;
} // namespace exit_status

struct CommandResult {
  int exit_code = exit_status::ok;
  Json json;
  std::string text;
};

struct CommonOptions {
  ParseMode mode = ParseMode::CpiStrict;
  bool allow_reserved = false;
  std::uint64_t seed = 0;
};

struct Defaults {
  static constexpr std::size_t bisim_depth = 4;
  static constexpr std::size_t nonforward_depth = 5;
  static constexpr std::size_t tau_budget = 12;
  static constexpr std::size_t law_instances = 200;
};

CommandResult cmd_parse(const std::string& text, const CommonOptions& opts);

/// Transitions of the term, or with `depth` its tau-reachable states.
CommandResult cmd_step(const std::string& text, const CommonOptions& opts,
                       std::optional<std::size_t> depth);

CommandResult cmd_bisim(const std::string& left, const std::string& right,
                        const CommonOptions& opts, std::size_t depth);

/// The standard law suite seeded with opts.seed, plus the false law.
CommandResult cmd_laws(const CommonOptions& opts, std::size_t instances, std::size_t depth);

/// Non-forwarding exploration, or with `witness` the bisimulation evidence
/// against that C_pi term (always parsed in pi mode so that a non-C_pi
/// witness is reported as such).
CommandResult cmd_nonforward(const std::string& text, const CommonOptions& opts,
                             std::size_t depth, const std::optional<std::string>& witness);

struct EncodeOptions {
  bool with_handlers = false;
  bool verify = false;
  std::size_t tau_budget = Defaults::tau_budget;
  std::size_t depth = Defaults::bisim_depth;
};

CommandResult cmd_encode(const std::string& text, const CommonOptions& opts,
                         const EncodeOptions& enc);

} // namespace cpi
