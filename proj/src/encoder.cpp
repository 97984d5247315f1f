#include "cpi/encoder.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "cpi/errors.hpp"
#include "cpi/lts.hpp"
#include "cpi/names.hpp"
#include "cpi/subst.hpp"

namespace cpi {

namespace {

class Encoder {
public:
  explicit Encoder(std::size_t start) : counter_(start) {}

  Process run(const Process& p) {
    return std::visit(
        [&](const auto& x) -> Process {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Nil>) {
            return p;
          } else if constexpr (std::is_same_v<T, Prefixed>) {
            return prefixed_case(x);
          } else if constexpr (std::is_same_v<T, Par>) {
            Process left = run(x.left);
            return par(std::move(left), run(x.right));
          } else if constexpr (std::is_same_v<T, Restrict>) {
            return restrict_case(x.channels, 0, x.body);
          } else {
            return repl(run(x.body));
          }
        },
        p.node().v);
  }

private:
  Name channel() { return Name::channel("#r" + std::to_string(counter_++)); }
  Name variable() { return Name::variable("#r" + std::to_string(counter_++)); }

  // (new k, n_k, m_k)(enc(P) | H_k), one channel of the list at a time.
  Process restrict_case(const std::vector<Name>& chans, std::size_t i, const Process& body) {
    if (i == chans.size()) return run(body);
    const NameTriple t = renaming_policy(chans[i]);
    Process inner = restrict_case(chans, i + 1, body);
    return restrict({t.base, t.n_name, t.m_name}, par(std::move(inner), handler(t.base)));
  }

  Process prefixed_case(const Prefixed& x) {
    const Prefix& pi = x.prefix;
    if (pi.arity() != 1) throw SourceModeError("the encoding takes monadic terms only");
    if (pi.is_receive()) {
      // [guards] a?(x, n_x, m_x, x').x'?(y).enc(P)
      const NameTriple b = renaming_policy(pi.names.front());
      const Name x_prime = variable();
      const Name y = variable();
      Prefix head = Prefix::receive(pi.subject, {b.base, b.n_name, b.m_name, x_prime});
      head.guards = pi.guards;
      Process cont = run(x.cont);
      return prefixed(std::move(head), prefixed(Prefix::receive(x_prime, {y}), std::move(cont)));
    }
    // new e1, e2 in [guards] n_a!<e1>.m_b!<e1, e2>.e2?(y).y!<e1>.enc(P)
    const NameTriple a = renaming_policy(pi.subject);
    const NameTriple b = renaming_policy(pi.names.front());
    const Name e1 = channel();
    const Name e2 = channel();
    const Name y = variable();
    Process cont = run(x.cont);
    Process tail = prefixed(Prefix::send(y, {e1}), std::move(cont));
    tail = prefixed(Prefix::receive(e2, {y}), std::move(tail));
    tail = prefixed(Prefix::send(b.m_name, {e1, e2}), std::move(tail));
    Prefix head = Prefix::send(a.n_name, {e1});
    head.guards = pi.guards;
    return restrict({e1, e2}, prefixed(std::move(head), std::move(tail)));
  }

  std::size_t counter_;
};

Name rename(const std::map<Name, Name>& m, const Name& n) {
  auto it = m.find(n);
  return it == m.end() ? n : it->second;
}

// Total renaming; the caller guarantees it is injective and capture free.
Process rename_all(const Process& p, const std::map<Name, Name>& m) {
  if (p.is_prefixed()) {
    Prefix pi = p.as_prefixed().prefix;
    for (auto& g : pi.guards) g = {rename(m, g.lhs), rename(m, g.rhs)};
    pi.subject = rename(m, pi.subject);
    for (auto& n : pi.names) n = rename(m, n);
    return prefixed(std::move(pi), rename_all(p.as_prefixed().cont, m));
  }
  if (p.is_par()) return par(rename_all(p.as_par().left, m), rename_all(p.as_par().right, m));
  if (p.is_restrict()) {
    std::vector<Name> chans = p.as_restrict().channels;
    for (auto& c : chans) c = rename(m, c);
    return restrict(std::move(chans), rename_all(p.as_restrict().body, m));
  }
  if (p.is_repl()) return repl(rename_all(p.as_repl().body, m));
  return p;
}

// Reserved binders renamed to unused source identifiers 's<n>'. The
// targets are new to p, so no binder captures anything.
Process with_source_binders(const Process& p) {
  const NameSet names = all_names(p);
  std::set<std::string> taken;
  for (const auto& n : names) taken.insert(n.ident);
  std::map<Name, Name> m;
  std::size_t next = 0;
  for (const auto& n : names) {
    if (!n.is_reserved()) continue;
    std::string id;
    do {
      id = "s" + std::to_string(next++);
    } while (taken.count(id));
    m.emplace(n, Name{n.kind, id});
  }
  return rename_all(p, m);
}

// Reserved free names are rejected; reserved binders, as left by
// canonicalize, are renamed to source identifiers.
Process require_source(const Process& p) {
  for (const auto& n : free_names(p)) {
    if (n.is_reserved()) {
      throw SourceModeError("source terms may not use the reserved name " + n.ident);
    }
  }
  return with_source_binders(p);
}

} // namespace

NameTriple renaming_policy(const Name& a) {
  if (a.is_reserved()) throw ReservedNameError("no renaming for the reserved name " + a.ident);
  return {a, Name{a.kind, "#n_" + a.ident}, Name{a.kind, "#m_" + a.ident}};
}

Process handler(const Name& k) {
  const NameTriple t = renaming_policy(k);
  const Name x = Name::variable("#hx");
  const Name x1 = Name::variable("#hx1");
  const Name x2 = Name::variable("#hx2");
  const Name y = Name::variable("#hy");
  const Name fresh = Name::channel("#ht");
  const Process left = repl(prefixed(Prefix::receive(t.n_name, {x}),
                                     prefixed(Prefix::send(x, {k}), nil())));
  const Process deliver =
      restrict({fresh}, prefixed(Prefix::send(y, {k, t.n_name, t.m_name, fresh}),
                                 prefixed(Prefix::send(x2, {fresh}), nil())));
  const Process right = repl(prefixed(Prefix::receive(t.m_name, {x1, x2}),
                                      prefixed(Prefix::receive(x1, {y}), deliver)));
  return par(left, right);
}

std::size_t fresh_start_from_environment() {
  const char* v = std::getenv("CPI_FRESH_START");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  return *end == '\0' ? static_cast<std::size_t>(n) : 0;
}

Process encode(const Process& p) { return encode(p, fresh_start_from_environment()); }

Process encode(const Process& p, std::size_t fresh_start) {
  const Process source = require_source(p);
  Encoder e(fresh_start);
  return e.run(source);
}

Process encode_with_handlers(const Process& p) {
  Process out = encode(p);
  const NameSet names = fnn(p);
  if (names.empty()) return par(out, nil());
  for (const auto& k : names) out = par(out, handler(k));
  return out;
}

std::vector<Process> source_reductions(const Process& p) {
  if (!free_names(p).empty()) throw SourceModeError("source reductions need a closed term");
  std::vector<Process> out;
  for (auto& t : tau_successors(p)) out.push_back(with_source_binders(t.target));
  return out;
}

std::vector<EncodingReport> check_completeness(const Process& p, std::size_t tau_budget,
                                               std::size_t bisim_depth) {
  const auto reducts = source_reductions(p);
  std::vector<EncodingReport> reports;
  if (reducts.empty()) return reports;

  // Breadth-first tau layers of the encoded source, grown on demand.
  std::vector<std::vector<Process>> layers{{canonicalize(encode_with_handlers(p))}};
  std::unordered_set<std::string> seen{state_key(layers[0][0])};
  auto layer = [&](std::size_t d) -> const std::vector<Process>* {
    while (layers.size() <= d) {
      std::vector<Process> next;
      for (const auto& s : layers.back()) {
        for (auto& t : tau_successors(s)) {
          if (seen.insert(state_key(t.target)).second) next.push_back(std::move(t.target));
        }
      }
      if (next.empty()) return nullptr;
      layers.push_back(std::move(next));
    }
    return &layers[d];
  };

  for (const auto& q : reducts) {
    EncodingReport report{p, q, std::nullopt, std::nullopt, std::nullopt};
    const Process goal = encode_with_handlers(q);
    for (std::size_t d = 0; d <= tau_budget && !report.success(); ++d) {
      const auto* states = layer(d);
      if (states == nullptr) break;
      for (const auto& s : *states) {
        Verdict v = check(s, goal, bisim_depth);
        if (v.bisimilar()) {
          report.tau_steps = d;
          report.witness = s;
          report.verdict = std::move(v);
          break;
        }
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

} // namespace cpi
