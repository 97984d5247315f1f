#include "cpi/subst.hpp"

#include <unordered_set>

#include "cpi/errors.hpp"
#include "cpi/names.hpp"

namespace cpi {

namespace {

class FreshSupply {
public:
  explicit FreshSupply(const NameSet& avoid) {
    for (const auto& n : avoid) taken_.insert(n.ident);
  }

  void avoid(const Name& n) { taken_.insert(n.ident); }

  std::string next() {
    for (;;) {
      std::string id = "#" + std::to_string(counter_++);
      if (taken_.insert(id).second) return id;
    }
  }

private:
  std::unordered_set<std::string> taken_;
  std::size_t counter_ = 0;
};

class Substituter {
public:
  Substituter(const Process& p, const Substitution& sigma) : fresh_(all_names(p)) {
    for (const auto& [from, to] : sigma) {
      fresh_.avoid(from);
      fresh_.avoid(to);
    }
  }

  Process run(const Process& p, const Substitution& sigma) {
    if (sigma.empty()) return p;
    return std::visit(
        [&](const auto& x) -> Process {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Nil>) {
            return p;
          } else if constexpr (std::is_same_v<T, Prefixed>) {
            return prefixed_case(x, sigma);
          } else if constexpr (std::is_same_v<T, Par>) {
            return par(run(x.left, sigma), run(x.right, sigma));
          } else if constexpr (std::is_same_v<T, Restrict>) {
            Substitution inner = sigma;
            auto chans = rebind(x.channels, inner);
            return restrict(std::move(chans), run(x.body, inner));
          } else {
            return repl(run(x.body, sigma));
          }
        },
        p.node().v);
  }

private:
  static Name apply(const Name& n, const Substitution& sigma) {
    auto it = sigma.find(n);
    return it == sigma.end() ? n : it->second;
  }

  // Updates `sigma` for the scope of `binders` and returns the binders to
  // use there, renamed where they would capture a name of the range.
  std::vector<Name> rebind(const std::vector<Name>& binders, Substitution& sigma) {
    for (const auto& b : binders) sigma.erase(b);
    std::vector<Name> out;
    out.reserve(binders.size());
    for (const auto& b : binders) {
      bool captures = false;
      for (const auto& [from, to] : sigma) {
        if (to == b && from != b) {
          captures = true;
          break;
        }
      }
      if (captures) {
        Name renamed{b.kind, fresh_.next()};
        sigma[b] = renamed;
        out.push_back(std::move(renamed));
      } else {
        out.push_back(b);
      }
    }
    return out;
  }

  Process prefixed_case(const Prefixed& pre, const Substitution& sigma) {
    Prefix pi = pre.prefix;
    for (auto& g : pi.guards) {
      g.lhs = apply(g.lhs, sigma);
      g.rhs = apply(g.rhs, sigma);
    }
    pi.subject = apply(pi.subject, sigma);
    if (pi.is_send()) {
      for (auto& o : pi.names) o = apply(o, sigma);
      return prefixed(std::move(pi), run(pre.cont, sigma));
    }
    Substitution inner = sigma;
    pi.names = rebind(pi.names, inner);
    return prefixed(std::move(pi), run(pre.cont, inner));
  }

  FreshSupply fresh_;
};

class Canonicalizer {
public:
  explicit Canonicalizer(const Process& p) {
    for (const auto& n : free_names(p)) {
      if (n.is_reserved()) skip_.insert(n.ident);
    }
  }

  Process run(const Process& p, const Substitution& env) {
    return std::visit(
        [&](const auto& x) -> Process {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Nil>) {
            return p;
          } else if constexpr (std::is_same_v<T, Prefixed>) {
            Prefix pi = x.prefix;
            for (auto& g : pi.guards) {
              g.lhs = lookup(g.lhs, env);
              g.rhs = lookup(g.rhs, env);
            }
            pi.subject = lookup(pi.subject, env);
            if (pi.is_send()) {
              for (auto& o : pi.names) o = lookup(o, env);
              return prefixed(std::move(pi), run(x.cont, env));
            }
            Substitution inner = env;
            for (auto& b : pi.names) b = bind(b, inner);
            return prefixed(std::move(pi), run(x.cont, inner));
          } else if constexpr (std::is_same_v<T, Par>) {
            Process left = run(x.left, env);
            return par(std::move(left), run(x.right, env));
          } else if constexpr (std::is_same_v<T, Restrict>) {
            std::vector<Name> chans;
            Substitution inner = env;
            const Process* body = &p;
            while (body->is_restrict()) {
              const auto& r = body->as_restrict();
              for (const auto& c : r.channels) chans.push_back(bind(c, inner));
              body = &r.body;
            }
            return restrict(std::move(chans), run(*body, inner));
          } else {
            return repl(run(x.body, env));
          }
        },
        p.node().v);
  }

private:
  static Name lookup(const Name& n, const Substitution& env) {
    auto it = env.find(n);
    return it == env.end() ? n : it->second;
  }

  Name bind(const Name& b, Substitution& env) {
    std::string id;
    do {
      id = "#" + std::to_string(counter_++);
    } while (skip_.contains(id));
    Name renamed{b.kind, std::move(id)};
    env[b] = renamed;
    return renamed;
  }

  std::unordered_set<std::string> skip_;
  std::size_t counter_ = 0;
};

} // namespace

Process substitute(const Process& p, const Substitution& sigma) {
  const NameSet fn = free_names(p);
  const NameSet bn = bound_names(p);
  for (const auto& [from, to] : sigma) {
    if (!to.is_channel()) {
      throw SubstitutionDomainError("substitution range must be channels, got variable " +
                                    to.ident);
    }
    if (bn.contains(from) && !fn.contains(from)) {
      throw SubstitutionDomainError("substitution maps the binder " + from.ident);
    }
  }
  return substitute_free(p, sigma);
}

Process substitute_free(const Process& p, const Substitution& sigma) {
  Substitution effective;
  for (const auto& [from, to] : sigma) {
    if (from != to) effective.emplace(from, to);
  }
  if (effective.empty()) return p;
  Substituter s(p, effective);
  return s.run(p, effective);
}

Process canonicalize(const Process& p) {
  Canonicalizer c(p);
  return c.run(p, {});
}

bool alpha_equivalent(const Process& a, const Process& b) {
  return canonicalize(a) == canonicalize(b);
}

} // namespace cpi
