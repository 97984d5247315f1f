#include "cpi/serialize.hpp"

#include "cpi/errors.hpp"
#include "cpi/parser.hpp"

namespace cpi {

namespace {

Json names_json(const std::vector<Name>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n.ident);
  return out;
}

std::vector<Name> names_from_json(const Json& j) {
  std::vector<Name> out;
  for (const auto& n : j) out.push_back(Name::channel(n.get<std::string>()));
  return out;
}

const char* kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::Out: return "out";
    case ActionKind::In: return "in";
    case ActionKind::BoundOut: return "bound_out";
    case ActionKind::Tau: return "tau";
  }
  return "tau";
}

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::VariableObject: return "variable_object";
    case ViolationKind::ChannelBinder: return "channel_binder";
    case ViolationKind::SortMismatch: return "sort_mismatch";
  }
  return "sort_mismatch";
}

Json failure_json(const LawFailure& f) {
  return {{"law", f.law}, {"lhs", render(f.lhs)}, {"rhs", render(f.rhs)},
          {"verdict", to_json(f.verdict)}};
}

Json outcome_json(const LawOutcome& o) {
  return {{"law", o.law}, {"instances", o.instances}, {"failures", o.failures}};
}

} // namespace

Json to_json(const Action& a) {
  Json j;
  j["kind"] = kind_name(a.kind);
  j["subject"] = a.is_tau() ? Json(nullptr) : Json(a.subject.ident);
  j["objects"] = names_json(a.objects);
  j["bound"] = names_json(a.bound);
  return j;
}

Action action_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "tau") return Action::tau();
  const Name subject = Name::channel(j.at("subject").get<std::string>());
  std::vector<Name> objects = names_from_json(j.at("objects"));
  if (kind == "out") return Action::out(subject, std::move(objects));
  if (kind == "in") return Action::in(subject, std::move(objects));
  if (kind == "bound_out") {
    return Action::bound_out(subject, std::move(objects), names_from_json(j.at("bound")));
  }
  throw Error("unknown action kind " + kind);
}

Json to_json(const Transition& t) {
  return {{"action", to_json(t.action)}, {"label", render(t.action)},
          {"target", render(t.target)}, {"rules", t.rules}};
}

Json to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        {{"kind", violation_kind_name(v.kind)}, {"path", v.path}, {"message", v.message}});
  }
  return {{"accepted", r.accepted()}, {"violations", std::move(violations)}};
}

Json to_json(const Verdict& v) {
  Json j;
  j["result"] = v.bisimilar() ? "BisimilarUpToDepth" : "NotBisimilar";
  j["depth"] = v.depth;
  if (v.bisimilar()) {
    j["counterexample"] = nullptr;
  } else {
    Json steps = Json::array();
    for (const auto& s : v.counterexample) {
      steps.push_back({{"action", to_json(s.action)}, {"side", s.side == Side::Left ? "left" : "right"}});
    }
    j["counterexample"] = std::move(steps);
  }
  return j;
}

Json to_json(const LawReport& r) {
  Json laws = Json::array();
  for (const auto& o : r.laws) laws.push_back(outcome_json(o));
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(failure_json(f));
  Json j{{"all_passed", r.all_passed()}, {"laws", std::move(laws)}, {"failures", std::move(failures)}};
  j["mutant"] = r.mutant ? outcome_json(*r.mutant) : Json(nullptr);
  j["mutant_failure"] = r.mutant_failure ? failure_json(*r.mutant_failure) : Json(nullptr);
  return j;
}

Json to_json(const NFVerdict& v) {
  Json j;
  j["result"] = v.satisfied() ? "SatisfiedUpToDepth" : "Violated";
  j["depth"] = v.depth;
  if (v.violation) {
    Json trace = Json::array();
    for (const auto& a : v.violation->trace) trace.push_back(to_json(a));
    j["violation"] = {{"trace", std::move(trace)},
                      {"receive_index", v.violation->receive_index},
                      {"send_index", v.violation->send_index},
                      {"channel", v.violation->channel.ident}};
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

Json to_json(const Evidence& e) {
  return {{"result", e.positive() ? "Positive" : "Negative"},
          {"witness", to_json(e.witness_report)},
          {"verdict", to_json(e.verdict)}};
}

Json to_json(const EncodingReport& r) {
  Json j{{"source", render(r.source)}, {"target", render(r.target)}};
  j["tau_steps"] = r.tau_steps ? Json(*r.tau_steps) : Json(nullptr);
  j["witness"] = r.witness ? Json(render(*r.witness)) : Json(nullptr);
  j["verdict"] = r.verdict ? to_json(*r.verdict) : Json(nullptr);
  return j;
}

Json to_json(const TauReachable& r) {
  Json states = Json::array();
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    states.push_back({{"term", render(r.states[i])}, {"distance", r.distance[i]}});
  }
  return {{"states", std::move(states)}, {"budget_exceeded", r.budget_exceeded}};
}

} // namespace cpi
