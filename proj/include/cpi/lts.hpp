#pragma once

// Labelled transition system (early semantics, polyadic).
//
// Inputs are instantiated over the environment plus fresh channels: a tuple
// position may take any environment channel, any fresh channel already
// used at an earlier position, or the next unused fresh channel. Fresh
// channels are the smallest '#<n>' outside the environment and fn(p), and
// bound outputs are named from the same supply, so two processes asked with
// the same environment label their bound outputs identically. For a
// well-sorted p, tuples that would make the target ill sorted are skipped:
// the environment is assumed to respect sorts too.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cpi/syntax.hpp"

namespace cpi {

enum class ActionKind : std::uint8_t { Out, In, BoundOut, Tau };

struct Action {
  ActionKind kind = ActionKind::Tau;
  Name subject;
  std::vector<Name> objects;
  /// Names of `objects` bound by a BoundOut, in order of first occurrence.
  std::vector<Name> bound;

  static Action tau() { return {}; }
  static Action out(Name subject, std::vector<Name> objects) {
    return {ActionKind::Out, std::move(subject), std::move(objects), {}};
  }
  static Action in(Name subject, std::vector<Name> objects) {
    return {ActionKind::In, std::move(subject), std::move(objects), {}};
  }
  static Action bound_out(Name subject, std::vector<Name> objects, std::vector<Name> bound) {
    return {ActionKind::BoundOut, std::move(subject), std::move(objects), std::move(bound)};
  }

  bool is_tau() const { return kind == ActionKind::Tau; }
  bool is_output() const { return kind == ActionKind::Out || kind == ActionKind::BoundOut; }

  NameSet names() const;
  NameSet free_names() const;
  NameSet bound_names() const { return {bound.begin(), bound.end()}; }

  friend bool operator==(const Action&, const Action&) = default;
  friend std::strong_ordering operator<=>(const Action& a, const Action& b);
};

std::string render(const Action& a);

/// Equal labels up to a consistent renaming of bound-output names.
bool same_label_up_to_bound(const Action& a, const Action& b);

struct Transition {
  Process source;
  Action action;
  Process target;
  /// Rule instances of the derivation, leaves first.
  std::vector<std::string> rules;
};

/// Every transition of p, targets canonicalized, one per (action, target)
/// and sorted by action then target. `environment` is widened with fn(p).
/// Fresh names additionally avoid `avoid` without being offered to inputs.
/// Throws SortError when a synchronisation pairs different arities.
std::vector<Transition> successors(const Process& p, const NameSet& environment,
                                   const NameSet& avoid = {});

/// Only the tau transitions; no input instantiation is needed for these.
std::vector<Transition> tau_successors(const Process& p);

/// Follows the actions from p, backtracking over nondeterministic choices,
/// and returns the state reached by the first path that performs them all.
/// Bound-output names match up to renaming. Throws NoSuchTransition with the
/// deepest step that could not be matched.
Process run_trace(const Process& p, const std::vector<Action>& actions);

struct TauReachable {
  /// Deduplicated up to alpha-equivalence, in breadth-first order.
  std::vector<Process> states;
  /// Tau distance from the start, parallel to `states`.
  std::vector<std::size_t> distance;
  /// Some state at the budget still has an unexplored tau successor.
  bool budget_exceeded = false;
};

TauReachable tau_reachable(const Process& p, std::size_t budget);

/// Stable key for a canonical process.
std::string state_key(const Process& canonical);

} // namespace cpi
