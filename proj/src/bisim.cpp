#include "cpi/bisim.hpp"

#include <limits>
#include <unordered_map>

#include "cpi/encoder.hpp"
#include "cpi/errors.hpp"
#include "cpi/generator.hpp"
#include "cpi/names.hpp"
#include "cpi/parser.hpp"
#include "cpi/subst.hpp"

namespace cpi {

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

struct State {
  Process term;
  std::string key;
};

State state_of(const Process& p) {
  Process c = canonicalize(p);
  std::string key = state_key(c);
  return {std::move(c), std::move(key)};
}

class Game {
public:
  bool play(const State& p, const State& q, std::size_t depth, std::vector<CounterStep>* cex) {
    if (depth == 0 || p.key == q.key) return true;
    const std::string pair_key = p.key + '\x1f' + q.key;
    if (auto it = memo_.find(pair_key); it != memo_.end()) {
      const Entry& e = it->second;
      if (e.ok >= depth) return true;
      if (e.fail <= depth) {
        if (cex) *cex = e.cex;
        return false;
      }
    }
    const NameSet env = set_union(free_names(p.term), free_names(q.term));
    const auto& ps = moves(p, env);
    const auto& qs = moves(q, env);
    std::vector<CounterStep> trace;
    const bool ok = attack(ps, qs, Side::Left, depth, trace) &&
                    attack(qs, ps, Side::Right, depth, trace);
    Entry& e = memo_[pair_key];
    if (ok) {
      e.ok = std::max(e.ok, depth);
    } else if (depth < e.fail) {
      e.fail = depth;
      e.cex = trace;
    }
    if (!ok && cex) *cex = std::move(trace);
    return ok;
  }

private:
  struct Entry {
    std::size_t ok = 0;
    std::size_t fail = kNever;
    std::vector<CounterStep> cex;
  };

  struct Move {
    Action action;
    State target;
  };

  const std::vector<Move>& moves(const State& s, const NameSet& env) {
    std::string key = s.key + '\x1e';
    for (const auto& n : env) key += n.ident + ',';
    auto it = moves_.find(key);
    if (it != moves_.end()) return it->second;
    std::vector<Move> out;
    for (auto& t : successors(s.term, env)) {
      std::string k = state_key(t.target);
      out.push_back({std::move(t.action), {std::move(t.target), std::move(k)}});
    }
    return moves_.emplace(std::move(key), std::move(out)).first->second;
  }

  // Every move of `attacker` needs an equally labelled answer in `defender`
  // whose targets survive depth - 1 rounds.
  bool attack(const std::vector<Move>& attacker, const std::vector<Move>& defender, Side side,
              std::size_t depth, std::vector<CounterStep>& trace) {
    for (const auto& a : attacker) {
      bool answered = false;
      bool first = true;
      std::vector<CounterStep> first_failure;
      for (const auto& d : defender) {
        if (d.action != a.action) continue;
        const State& left = side == Side::Left ? a.target : d.target;
        const State& right = side == Side::Left ? d.target : a.target;
        std::vector<CounterStep> sub;
        if (play(left, right, depth - 1, first ? &sub : nullptr)) {
          answered = true;
          break;
        }
        if (first) first_failure = std::move(sub);
        first = false;
      }
      if (!answered) {
        trace.clear();
        trace.push_back({a.action, side});
        trace.insert(trace.end(), first_failure.begin(), first_failure.end());
        return false;
      }
    }
    return true;
  }

  std::unordered_map<std::string, Entry> memo_;
  std::unordered_map<std::string, std::vector<Move>> moves_;
};

bool mentions_ident(const NameSet& names, const std::string& id) {
  for (const auto& n : names) {
    if (n.ident == id) return true;
  }
  return false;
}

// A free channel named x becomes the received variable x.
Process bind_x(const Process& body) {
  for (const auto& n : free_names(body)) {
    if (n.ident == "x" && n.is_channel()) {
      // Renaming a free channel to a variable is not a channel
      // substitution, so walk the term directly.
      struct Rewriter {
        Name from, to;
        Name look(const Name& n) const { return n == from ? to : n; }
        Process run(const Process& p) const {
          if (p.is_prefixed()) {
            Prefix pi = p.as_prefixed().prefix;
            for (auto& g : pi.guards) g = {look(g.lhs), look(g.rhs)};
            pi.subject = look(pi.subject);
            bool shadow = false;
            if (pi.is_send()) {
              for (auto& o : pi.names) o = look(o);
            } else {
              for (const auto& b : pi.names) shadow = shadow || b == from;
            }
            return prefixed(pi, shadow ? p.as_prefixed().cont : run(p.as_prefixed().cont));
          }
          if (p.is_par()) return par(run(p.as_par().left), run(p.as_par().right));
          if (p.is_restrict()) {
            const auto& r = p.as_restrict();
            for (const auto& c : r.channels) {
              if (c == from) return p;
            }
            return restrict(r.channels, run(r.body));
          }
          if (p.is_repl()) return repl(run(p.as_repl().body));
          return p;
        }
      };
      return Rewriter{n, Name::variable("x")}.run(body);
    }
  }
  return body;
}

struct LawInstance {
  Process lhs;
  Process rhs;
};

} // namespace

Verdict check(const Process& p, const Process& q, std::size_t depth) {
  Game game;
  Verdict v;
  v.depth = depth;
  std::vector<CounterStep> cex;
  if (!game.play(state_of(p), state_of(q), depth, &cex)) {
    v.result = BisimResult::NotBisimilar;
    v.counterexample = std::move(cex);
  }
  return v;
}

std::pair<Process, Process> private_guard_sides(const Process& body0, const Name& m,
                                                const Prefix& pi) {
  const Process body = bind_x(body0);
  for (const char* reserved : {"k", "l", "y"}) {
    if (mentions_ident(all_names(body), reserved) || m.ident == reserved ||
        mentions_ident(prefix_names(pi), reserved)) {
      throw ConstructionError(std::string("the construction reserves the name ") + reserved);
    }
  }
  const Name k = Name::channel("k");
  const Name l = Name::channel("l");
  const Name y = Name::variable("y");
  const Name x = Name::variable("x");
  const Process right_thread = prefixed(Prefix::receive(k, {x}), body);
  auto side = [&](Process after_m) {
    const Process left = restrict(
        {l}, prefixed(Prefix::send(k, {l}), prefixed(Prefix::receive(m, {y}), std::move(after_m))));
    return canonicalize(restrict({k}, par(left, right_thread)));
  };
  const Process guarded = prefixed(pi.guarded(y, l), nil());
  return {side(guarded), side(nil())};
}

Verdict check_private_guard_instance(const Process& body, const Name& m, const Prefix& pi,
                                     std::size_t depth) {
  const auto [lhs, rhs] = private_guard_sides(body, m, pi);
  return check(lhs, rhs, depth);
}

std::vector<std::string> law_names() {
  return {"[a=a]pi.P ~ pi.P",
          "P1|(P2|P3) ~ (P1|P2)|P3",
          "P1|P2 ~ P2|P1",
          "P|0 ~ P",
          "new k in new l in P ~ new l in new k in P",
          "new k in 0 ~ 0",
          "P1|new k in P2 ~ new k in (P1|P2)",
          "!P ~ P|!P",
          "new k in !k?(x).P ~ 0",
          "new k, n_k, m_k in H_k ~ 0"};
}

LawReport law_suite(std::uint64_t seed, std::size_t instances, std::size_t depth,
                    bool include_mutant) {
  GeneratorOptions opts;
  opts.max_size = 6;
  Generator gen(seed, opts);
  LawReport report;

  auto fresh_restricted = [](const std::vector<Process>& ps, std::size_t count) {
    NameSet avoid;
    for (const auto& p : ps) avoid = set_union(avoid, all_names(p));
    return fresh_channels(avoid, count);
  };

  auto instance = [&](std::size_t law) -> LawInstance {
    switch (law) {
      case 0: {
        // A prefix with a reflexive guard in front of a random continuation.
        Process cont = gen.next();
        const NameSet names = set_union(free_names(cont), {Name::channel("a")});
        std::vector<Name> pool(names.begin(), names.end());
        const Name a = pool[gen.below(pool.size())];
        const Name s = pool[gen.below(pool.size())];
        const Name o = pool[gen.below(pool.size())];
        const Prefix pi = gen.below(2) ? Prefix::send(s, {o}) : Prefix::receive(s, {Name::variable("z")});
        return {prefixed(pi.guarded(a, a), cont), prefixed(pi, cont)};
      }
      case 1: {
        Process a = gen.next(), b = gen.next(), c = gen.next();
        return {par(a, par(b, c)), par(par(a, b), c)};
      }
      case 2: {
        Process a = gen.next(), b = gen.next();
        return {par(a, b), par(b, a)};
      }
      case 3: {
        Process a = gen.next();
        return {par(a, nil()), a};
      }
      case 4: {
        // Binds two free channels of the body so both restrictions matter.
        Process body = gen.next();
        const Name k = Name::channel("a"), l = Name::channel("b");
        return {restrict({k}, restrict({l}, body)), restrict({l}, restrict({k}, body))};
      }
      case 5:
        return {restrict(fresh_restricted({}, 1), nil()), nil()};
      case 6: {
        Process a = gen.next(), b = gen.next();
        const Name k = fresh_restricted({a, b}, 1).front();
        // Use k inside P2 by renaming one of its free channels.
        const NameSet fb = free_names(b);
        Process b2 = b;
        if (!fb.empty()) {
          std::vector<Name> pool(fb.begin(), fb.end());
          const Name victim = pool[gen.below(pool.size())];
          if (victim.is_channel()) b2 = substitute_free(b, {{victim, k}});
        }
        return {par(a, restrict({k}, b2)), restrict({k}, par(a, b2))};
      }
      case 7: {
        Process a = gen.next();
        return {repl(a), par(a, repl(a))};
      }
      case 8: {
        Process body = gen.next();
        const Name k = Name::channel("a");
        return {restrict({k}, repl(prefixed(Prefix::receive(k, {Name::variable("z")}), body))),
                nil()};
      }
      default: {
        static const char* kChannels[] = {"a", "b", "c"};
        const Name k = Name::channel(kChannels[gen.below(3)]);
        const NameTriple t = renaming_policy(k);
        return {restrict({k, t.n_name, t.m_name}, handler(k)), nil()};
      }
    }
  };

  const auto names = law_names();
  for (std::size_t law = 0; law < names.size(); ++law) {
    LawOutcome outcome{names[law], instances, 0};
    for (std::size_t i = 0; i < instances; ++i) {
      const LawInstance inst = instance(law);
      Verdict v = check(inst.lhs, inst.rhs, depth);
      if (!v.bisimilar()) {
        ++outcome.failures;
        report.failures.push_back({names[law], inst.lhs, inst.rhs, std::move(v)});
      }
    }
    report.laws.push_back(outcome);
  }
  if (include_mutant) {
    LawOutcome outcome{"P|Q ~ P", instances, 0};
    for (std::size_t i = 0; i < instances; ++i) {
      Process a = gen.next(), b = gen.next();
      Verdict v = check(par(a, b), a, depth);
      if (!v.bisimilar()) {
        ++outcome.failures;
        if (!report.mutant_failure) report.mutant_failure = LawFailure{outcome.law, par(a, b), a, v};
      }
    }
    report.mutant = outcome;
  }
  return report;
}

} // namespace cpi
