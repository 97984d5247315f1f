#pragma once

#include <string>
#include <vector>

#include "cpi/syntax.hpp"

namespace cpi {

enum class ViolationKind {
  VariableObject,  // a send carries a variable
  ChannelBinder,   // a receive binds a channel
  SortMismatch,    // a name is used at two communication arities
};

struct Violation {
  ViolationKind kind;
  /// Location of the offending prefix, e.g. "/cont/left". Root is "/".
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool accepted() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Well-sortedness only: Milner-style sort inference where every name gets a
/// sort ch(s1, ..., sn), unified across all prefixes using it as subject.
/// Recursive sorts (k!<k>) are accepted.
std::vector<Violation> check_sorts(const Process& p);

/// Accepts iff every send object is a channel, every receive binder is a
/// variable and the term is well sorted.
ValidationReport validate_cpi(const Process& p);

} // namespace cpi
