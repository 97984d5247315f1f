#pragma once

// Concrete syntax:
//
//   P      ::= "0" | prefix "." P | P "|" P | "new" ident ("," ident)* "in" P
//            | "!" P | "(" P ")"
//   prefix ::= ident "!" "<" ident ("," ident)* ">"
//            | ident "?" "(" ident ("," ident)* ")"
//            | "[" ident "=" ident "]" prefix
//
// "|" is the loosest operator and associates to the left, "." binds tighter
// than "|", and "!" and "new ... in" extend as far right as possible.
// Identifiers are [a-zA-Z][a-zA-Z0-9_]*; "--" starts a comment.

#include <string>
#include <string_view>

#include "cpi/syntax.hpp"

namespace cpi {

enum class ParseMode { CpiStrict, PiFull };

struct ParseOptions {
  /// Accept '#'-prefixed identifiers, as printed for encoded terms and
  /// canonical binders.
  bool allow_reserved = false;
};

/// Parses, sort-checks and canonicalizes. Throws SyntaxError, SortError, and
/// in CpiStrict mode CpiViolation.
Process parse(std::string_view text, ParseMode mode, ParseOptions options = {});

/// Parses without sort checking, validation or canonicalization. Names are
/// kept as written.
Process parse_raw(std::string_view text, ParseOptions options = {});

/// Text accepted by parse() for an alpha-equivalent term, with the minimum
/// parentheses the precedence rules need.
std::string render(const Process& p);
std::string render(const Prefix& prefix);

} // namespace cpi
