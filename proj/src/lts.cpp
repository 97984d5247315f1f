#include "cpi/lts.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

#include "cpi/errors.hpp"
#include "cpi/names.hpp"
#include "cpi/parser.hpp"
#include "cpi/subst.hpp"
#include "cpi/validate.hpp"

namespace cpi {

namespace {

// Internal late-style derivation result. An In commitment keeps its binders
// free in `target`; the label is fixed only at top level or in a
// synchronisation, which keeps the derivation finite.
struct Commit {
  enum Kind { Out, In, Tau } kind;
  Name subject;
  /// Out: objects. In: binders (variables free in target).
  std::vector<Name> names;
  /// Out: objects opened so far.
  std::vector<Name> bound;
  Process target;
  std::vector<std::string> rules;
};

std::vector<std::string> joined(const std::vector<std::string>& a,
                                const std::vector<std::string>& b, const char* rule) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.emplace_back(rule);
  return out;
}

bool contains(const std::vector<Name>& v, const Name& n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

Process instantiate(const Commit& in, const std::vector<Name>& objects) {
  Substitution sigma;
  for (std::size_t i = 0; i < in.names.size(); ++i) sigma[in.names[i]] = objects[i];
  return substitute_free(in.target, sigma);
}

void check_arity(const Commit& out, const Commit& in) {
  if (out.names.size() != in.names.size()) {
    throw SortError("sort violation on " + out.subject.ident + " (arities " +
                    std::to_string(std::min(out.names.size(), in.names.size())) + " and " +
                    std::to_string(std::max(out.names.size(), in.names.size())) + ")");
  }
}

// Renames the opened names of `c` away from `avoid`.
Commit freshen_bound(Commit c, const NameSet& avoid) {
  bool clash = false;
  for (const auto& b : c.bound) clash = clash || avoid.count(b) > 0;
  if (!clash) return c;
  NameSet taken = set_union(avoid, all_names(c.target));
  for (const auto& n : c.names) taken.insert(n);
  taken.insert(c.subject);
  const auto fresh = fresh_channels(taken, c.bound.size());
  Substitution sigma;
  for (std::size_t i = 0; i < c.bound.size(); ++i) sigma[c.bound[i]] = fresh[i];
  c.target = substitute_free(c.target, sigma);
  for (auto& n : c.names) {
    if (auto it = sigma.find(n); it != sigma.end()) n = it->second;
  }
  for (auto& b : c.bound) b = sigma.at(b);
  return c;
}

// Synchronises `out` with `in`. `out_left` places the sender's residue on
// the left of the resulting composition.
Commit synchronise(const Commit& out, const Commit& in, bool out_left, const char* comm_rule,
                   const char* close_rule) {
  check_arity(out, in);
  Process received = instantiate(in, out.names);
  Process body = out_left ? par(out.target, received) : par(received, out.target);
  const auto& first = out_left ? out.rules : in.rules;
  const auto& second = out_left ? in.rules : out.rules;
  if (out.bound.empty()) {
    return {Commit::Tau, {}, {}, {}, body, joined(first, second, comm_rule)};
  }
  return {Commit::Tau, {}, {}, {}, restrict(out.bound, body), joined(first, second, close_rule)};
}

std::vector<Commit> commitments(const Process& p);

std::vector<Commit> prefixed_commitments(const Prefixed& x) {
  const Prefix& pi = x.prefix;
  for (const auto& g : pi.guards) {
    if (g.lhs != g.rhs) return {};
  }
  if (!pi.subject.is_channel()) return {};
  std::vector<std::string> rules;
  Commit c;
  if (pi.is_send()) {
    for (const auto& o : pi.names) {
      if (!o.is_channel()) return {};
    }
    rules.emplace_back("out");
    c = {Commit::Out, pi.subject, pi.names, {}, x.cont, {}};
  } else {
    rules.emplace_back("in");
    c = {Commit::In, pi.subject, pi.names, {}, x.cont, {}};
  }
  for (std::size_t i = 0; i < pi.guards.size(); ++i) rules.emplace_back("match");
  c.rules = std::move(rules);
  return {std::move(c)};
}

std::vector<Commit> par_commitments(const Par& x) {
  const auto left = commitments(x.left);
  const auto right = commitments(x.right);
  std::vector<Commit> out;
  const NameSet fn_left = free_names(x.left);
  const NameSet fn_right = free_names(x.right);
  for (const auto& c : left) {
    Commit d = c.kind == Commit::Out ? freshen_bound(c, fn_right) : c;
    d.target = par(d.target, x.right);
    d.rules.emplace_back("par-l");
    out.push_back(std::move(d));
  }
  for (const auto& c : right) {
    Commit d = c.kind == Commit::Out ? freshen_bound(c, fn_left) : c;
    d.target = par(x.left, d.target);
    d.rules.emplace_back("par-r");
    out.push_back(std::move(d));
  }
  for (const auto& o : left) {
    if (o.kind != Commit::Out) continue;
    for (const auto& i : right) {
      if (i.kind != Commit::In || i.subject != o.subject) continue;
      out.push_back(synchronise(freshen_bound(o, fn_right), i, true, "comm-l", "close-l"));
    }
  }
  for (const auto& o : right) {
    if (o.kind != Commit::Out) continue;
    for (const auto& i : left) {
      if (i.kind != Commit::In || i.subject != o.subject) continue;
      out.push_back(synchronise(freshen_bound(o, fn_left), i, false, "comm-r", "close-r"));
    }
  }
  return out;
}

std::vector<Commit> restrict_commitments(const Restrict& x) {
  std::vector<Commit> cs = commitments(x.body);
  for (auto k = x.channels.rbegin(); k != x.channels.rend(); ++k) {
    std::vector<Commit> next;
    for (auto& c : cs) {
      if (c.kind != Commit::Tau && c.subject == *k) continue;
      if (c.kind == Commit::Out && contains(c.names, *k)) {
        c.bound.push_back(*k);
        c.rules.emplace_back("open");
      } else {
        c.target = restrict({*k}, c.target);
        c.rules.emplace_back("res");
      }
      next.push_back(std::move(c));
    }
    cs = std::move(next);
  }
  return cs;
}

std::vector<Commit> repl_commitments(const Process& self, const Repl& x) {
  const auto cs = commitments(x.body);
  std::vector<Commit> out;
  for (const auto& c : cs) {
    Commit d = c;
    d.target = par(d.target, self);
    d.rules.emplace_back("rep-act");
    out.push_back(std::move(d));
  }
  const NameSet fn_body = free_names(x.body);
  for (const auto& o : cs) {
    if (o.kind != Commit::Out) continue;
    for (const auto& i : cs) {
      if (i.kind != Commit::In || i.subject != o.subject) continue;
      Commit t = synchronise(freshen_bound(o, fn_body), i, true, "rep-comm", "rep-close");
      t.target = par(t.target, self);
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Commit> commitments(const Process& p) {
  return std::visit(
      [&](const auto& x) -> std::vector<Commit> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          return {};
        } else if constexpr (std::is_same_v<T, Prefixed>) {
          return prefixed_commitments(x);
        } else if constexpr (std::is_same_v<T, Par>) {
          return par_commitments(x);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          return restrict_commitments(x);
        } else {
          return repl_commitments(p, x);
        }
      },
      p.node().v);
}

// Every arity-long tuple over `base` plus fresh names, where a tuple uses
// fresh names in increasing order without gaps.
void input_tuples(const std::vector<Name>& base, const std::vector<Name>& fresh,
                  std::size_t arity, std::vector<Name>& cur, std::size_t used,
                  std::vector<std::vector<Name>>& out) {
  if (cur.size() == arity) {
    out.push_back(cur);
    return;
  }
  for (const auto& n : base) {
    cur.push_back(n);
    input_tuples(base, fresh, arity, cur, used, out);
    cur.pop_back();
  }
  for (std::size_t f = 0; f <= used && f < fresh.size(); ++f) {
    cur.push_back(fresh[f]);
    input_tuples(base, fresh, arity, cur, std::max(used, f + 1), out);
    cur.pop_back();
  }
}

std::vector<Name> bound_in_order(const std::vector<Name>& objects, const std::vector<Name>& bound) {
  std::vector<Name> out;
  for (const auto& o : objects) {
    if (contains(bound, o) && !contains(out, o)) out.push_back(o);
  }
  return out;
}

struct Keyed {
  Transition t;
  std::string key;
};

std::vector<Transition> finish(std::vector<Keyed> ts) {
  std::stable_sort(ts.begin(), ts.end(), [](const Keyed& a, const Keyed& b) {
    if (auto c = a.t.action <=> b.t.action; c != 0) return c < 0;
    return a.key < b.key;
  });
  std::vector<Transition> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0 && ts[i].t.action == ts[i - 1].t.action && ts[i].key == ts[i - 1].key) continue;
    out.push_back(std::move(ts[i].t));
  }
  return out;
}

Keyed make(const Process& source, Action a, const Process& target, std::vector<std::string> rules) {
  Process c = canonicalize(target);
  std::string key = state_key(c);
  return {{source, std::move(a), std::move(c), std::move(rules)}, std::move(key)};
}

} // namespace

NameSet Action::names() const {
  if (is_tau()) return {};
  NameSet out(objects.begin(), objects.end());
  out.insert(subject);
  return out;
}

NameSet Action::free_names() const {
  NameSet out = names();
  for (const auto& b : bound) out.erase(b);
  return out;
}

std::strong_ordering operator<=>(const Action& a, const Action& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.objects <=> b.objects; c != 0) return c;
  return a.bound <=> b.bound;
}

std::string render(const Action& a) {
  auto list = [](const std::vector<Name>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? ", " : "") + ns[i].ident;
    return s;
  };
  switch (a.kind) {
    case ActionKind::Tau:
      return "tau";
    case ActionKind::Out:
      return a.subject.ident + "!<" + list(a.objects) + ">";
    case ActionKind::In:
      return a.subject.ident + "?<" + list(a.objects) + ">";
    case ActionKind::BoundOut:
      return "new " + list(a.bound) + " in " + a.subject.ident + "!<" + list(a.objects) + ">";
  }
  return {};
}

bool same_label_up_to_bound(const Action& a, const Action& b) {
  if (a.kind != b.kind || a.subject != b.subject || a.objects.size() != b.objects.size() ||
      a.bound.size() != b.bound.size()) {
    return false;
  }
  std::map<Name, Name> fwd, bwd;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    const Name& x = a.objects[i];
    const Name& y = b.objects[i];
    const bool xb = contains(a.bound, x);
    const bool yb = contains(b.bound, y);
    if (xb != yb) return false;
    if (!xb) {
      if (x != y) return false;
      continue;
    }
    auto [f, fnew] = fwd.emplace(x, y);
    auto [g, gnew] = bwd.emplace(y, x);
    if (f->second != y || g->second != x) return false;
  }
  return true;
}

std::string state_key(const Process& canonical) { return render(canonical); }

std::vector<Transition> successors(const Process& p0, const NameSet& environment,
                                   const NameSet& extra_avoid) {
  const Process p = canonicalize(p0);
  const NameSet fn_p = free_names(p);
  NameSet env;
  for (const auto& n : set_union(environment, fn_p)) {
    if (n.is_channel()) env.insert(n);
  }
  const std::vector<Name> base(env.begin(), env.end());
  const NameSet avoid = set_union(set_union(env, fn_p), extra_avoid);

  std::vector<Keyed> ts;
  std::optional<bool> well_sorted;
  for (auto& c : commitments(p)) {
    switch (c.kind) {
      case Commit::Tau:
        ts.push_back(make(p, Action::tau(), c.target, std::move(c.rules)));
        break;
      case Commit::Out: {
        if (c.bound.empty()) {
          ts.push_back(make(p, Action::out(c.subject, c.names), c.target, std::move(c.rules)));
          break;
        }
        const auto order = bound_in_order(c.names, c.bound);
        const auto fresh = fresh_channels(avoid, order.size());
        Substitution sigma;
        for (std::size_t i = 0; i < order.size(); ++i) sigma[order[i]] = fresh[i];
        std::vector<Name> objs = c.names;
        for (auto& o : objs) {
          if (auto it = sigma.find(o); it != sigma.end()) o = it->second;
        }
        ts.push_back(make(p, Action::bound_out(c.subject, std::move(objs), fresh),
                          substitute_free(c.target, sigma), std::move(c.rules)));
        break;
      }
      case Commit::In: {
        const auto fresh = fresh_channels(avoid, c.names.size());
        std::vector<std::vector<Name>> tuples;
        std::vector<Name> cur;
        input_tuples(base, fresh, c.names.size(), cur, 0, tuples);
        if (!well_sorted) well_sorted = check_sorts(p).empty();
        for (auto& tuple : tuples) {
          Process target = instantiate(c, tuple);
          // A well-sorted environment never sends an ill-sorted tuple.
          if (*well_sorted && !check_sorts(target).empty()) continue;
          ts.push_back(make(p, Action::in(c.subject, std::move(tuple)), target, c.rules));
        }
        break;
      }
    }
  }
  return finish(std::move(ts));
}

std::vector<Transition> tau_successors(const Process& p0) {
  const Process p = canonicalize(p0);
  std::vector<Keyed> ts;
  for (auto& c : commitments(p)) {
    if (c.kind == Commit::Tau) ts.push_back(make(p, Action::tau(), c.target, std::move(c.rules)));
  }
  return finish(std::move(ts));
}

namespace {

struct TraceRunner {
  const std::vector<Action>& actions;
  std::size_t deepest = 0;

  std::optional<Process> run(const Process& cur, std::size_t step) {
    if (step == actions.size()) return cur;
    deepest = std::max(deepest, step);
    const Action& want = actions[step];
    const NameSet fn_cur = free_names(cur);
    for (const auto& b : want.bound) {
      if (fn_cur.count(b)) return std::nullopt;
    }
    NameSet env = set_union(fn_cur, want.free_names());
    for (const auto& t : successors(cur, env)) {
      std::optional<Process> next;
      if (want.kind == ActionKind::BoundOut) {
        if (!same_label_up_to_bound(t.action, want)) continue;
        Substitution sigma;
        for (std::size_t i = 0; i < want.objects.size(); ++i) {
          if (contains(t.action.bound, t.action.objects[i])) {
            sigma[t.action.objects[i]] = want.objects[i];
          }
        }
        next = run(canonicalize(substitute_free(t.target, sigma)), step + 1);
      } else {
        if (t.action != want) continue;
        next = run(t.target, step + 1);
      }
      if (next) return next;
    }
    return std::nullopt;
  }
};

} // namespace

Process run_trace(const Process& p, const std::vector<Action>& actions) {
  TraceRunner runner{actions};
  if (auto out = runner.run(canonicalize(p), 0)) return *out;
  throw NoSuchTransition(runner.deepest);
}

TauReachable tau_reachable(const Process& p, std::size_t budget) {
  TauReachable out;
  std::unordered_set<std::string> seen;
  const Process start = canonicalize(p);
  seen.insert(state_key(start));
  out.states.push_back(start);
  out.distance.push_back(0);
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    const Process cur = out.states[i];
    const std::size_t d = out.distance[i];
    if (d == budget && out.budget_exceeded) break;
    for (const auto& t : tau_successors(cur)) {
      if (seen.count(state_key(t.target))) continue;
      if (d == budget) {
        out.budget_exceeded = true;
        break;
      }
      seen.insert(state_key(t.target));
      out.states.push_back(t.target);
      out.distance.push_back(d + 1);
    }
  }
  return out;
}

} // namespace cpi
