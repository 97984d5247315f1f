#include "cpi/nonforward.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "cpi/errors.hpp"
#include "cpi/names.hpp"
#include "cpi/subst.hpp"

namespace cpi {

namespace {

struct Node {
  Process state;
  std::vector<Action> trace;
  /// Names seen so far; fresh names avoid them.
  NameSet history;
  /// Channels received while new, with the receive position.
  std::map<Name, std::size_t> flagged;
};

std::string node_key(const Node& n) {
  std::string key = state_key(n.state);
  const NameSet fn = free_names(n.state);
  key += '\x1f';
  for (const auto& [name, index] : n.flagged) {
    if (fn.count(name)) key += name.ident + ',';
  }
  return key;
}

} // namespace

NFVerdict check_nonforwarding(const Process& p, std::size_t depth, NewnessTest test) {
  NFVerdict verdict;
  verdict.depth = depth;
  const Process start = canonicalize(p);
  std::vector<Node> frontier{{start, {}, free_names(start), {}}};
  std::unordered_set<std::string> seen{node_key(frontier[0])};

  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const NameSet fn = free_names(node.state);
      const NameSet fresh_basis = test == NewnessTest::FreeNames
                                      ? fn
                                      : free_output_objects(node.state);
      for (const auto& t : successors(node.state, fn, node.history)) {
        const Action& a = t.action;
        if (a.is_output()) {
          for (const auto& o : a.objects) {
            if (std::find(a.bound.begin(), a.bound.end(), o) != a.bound.end()) continue;
            auto it = node.flagged.find(o);
            if (it == node.flagged.end()) continue;
            NFViolation v;
            v.trace = node.trace;
            v.trace.push_back(a);
            v.receive_index = it->second;
            v.send_index = level;
            v.channel = o;
            verdict.result = NFResult::Violated;
            verdict.violation = std::move(v);
            return verdict;
          }
        }
        Node child{t.target, node.trace, set_union(node.history, a.names()), node.flagged};
        child.trace.push_back(a);
        if (a.kind == ActionKind::In) {
          for (const auto& o : a.objects) {
            if (!fresh_basis.count(o)) child.flagged.emplace(o, level);
          }
        }
        if (seen.insert(node_key(child)).second) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return verdict;
}

StaticGuarantee static_guarantee(const Process& p) {
  StaticGuarantee g;
  g.report = validate_cpi(p);
  g.result = g.report.accepted() ? Guarantee::Guaranteed : Guarantee::NotApplicable;
  return g;
}

Evidence witness_check(const Process& p, const Process& q, std::size_t depth) {
  Evidence e;
  e.witness_report = validate_cpi(q);
  if (!e.witness_report.accepted()) {
    throw WitnessNotCpi("the witness is not a C_pi term: " + e.witness_report.violations.front().message);
  }
  e.verdict = check(p, q, depth);
  e.result = e.verdict.bisimilar() ? EvidenceResult::Positive : EvidenceResult::Negative;
  return e;
}

} // namespace cpi
