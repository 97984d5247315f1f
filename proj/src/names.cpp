#include "cpi/names.hpp"

#include <algorithm>
#include <unordered_set>

namespace cpi {

namespace {

enum class FreeMode { All, Fnn, OutputObjects };

void collect_free(const Process& p, FreeMode mode, NameSet& bound, NameSet& out);

void add_if_free(const Name& n, const NameSet& bound, NameSet& out) {
  if (!bound.contains(n)) out.insert(n);
}

// Binders are pushed into `bound` for the scope and popped afterwards; a
// name already bound by an enclosing binder stays bound when popped.
template <class F>
void with_bound(NameSet& bound, const std::vector<Name>& binders, F&& body) {
  std::vector<Name> added;
  for (const auto& b : binders) {
    if (bound.insert(b).second) added.push_back(b);
  }
  body();
  for (const auto& b : added) bound.erase(b);
}

void collect_prefixed(const Prefixed& pre, FreeMode mode, NameSet& bound, NameSet& out) {
  const Prefix& pi = pre.prefix;
  if (mode != FreeMode::OutputObjects) {
    for (const auto& g : pi.guards) {
      if (mode == FreeMode::Fnn && g.lhs == g.rhs) continue;
      add_if_free(g.lhs, bound, out);
      add_if_free(g.rhs, bound, out);
    }
    add_if_free(pi.subject, bound, out);
  }
  if (pi.is_send()) {
    for (const auto& o : pi.names) {
      if (mode == FreeMode::OutputObjects && !o.is_channel()) continue;
      add_if_free(o, bound, out);
    }
    collect_free(pre.cont, mode, bound, out);
  } else {
    with_bound(bound, pi.names, [&] { collect_free(pre.cont, mode, bound, out); });
  }
}

void collect_free(const Process& p, FreeMode mode, NameSet& bound, NameSet& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Prefixed>) {
          collect_prefixed(x, mode, bound, out);
        } else if constexpr (std::is_same_v<T, Par>) {
          collect_free(x.left, mode, bound, out);
          collect_free(x.right, mode, bound, out);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          with_bound(bound, x.channels, [&] { collect_free(x.body, mode, bound, out); });
        } else if constexpr (std::is_same_v<T, Repl>) {
          collect_free(x.body, mode, bound, out);
        }
      },
      p.node().v);
}

NameSet free_with(const Process& p, FreeMode mode) {
  NameSet bound;
  NameSet out;
  collect_free(p, mode, bound, out);
  return out;
}

void collect_bound(const Process& p, NameSet& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Prefixed>) {
          if (x.prefix.is_receive()) out.insert(x.prefix.names.begin(), x.prefix.names.end());
          collect_bound(x.cont, out);
        } else if constexpr (std::is_same_v<T, Par>) {
          collect_bound(x.left, out);
          collect_bound(x.right, out);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          out.insert(x.channels.begin(), x.channels.end());
          collect_bound(x.body, out);
        } else if constexpr (std::is_same_v<T, Repl>) {
          collect_bound(x.body, out);
        }
      },
      p.node().v);
}

} // namespace

NameSet free_names(const Process& p) { return free_with(p, FreeMode::All); }
NameSet fnn(const Process& p) { return free_with(p, FreeMode::Fnn); }
NameSet free_output_objects(const Process& p) { return free_with(p, FreeMode::OutputObjects); }

NameSet bound_names(const Process& p) {
  NameSet out;
  collect_bound(p, out);
  return out;
}

NameSet all_names(const Process& p) { return set_union(free_names(p), bound_names(p)); }

NameSet prefix_names(const Prefix& prefix) {
  NameSet out;
  for (const auto& g : prefix.guards) {
    out.insert(g.lhs);
    out.insert(g.rhs);
  }
  out.insert(prefix.subject);
  out.insert(prefix.names.begin(), prefix.names.end());
  return out;
}

bool is_numbered_reserved(const std::string& ident) {
  return ident.size() > 1 && ident.front() == '#' &&
         std::all_of(ident.begin() + 1, ident.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<Name> fresh_channels(const NameSet& avoid, std::size_t count) {
  std::unordered_set<std::string> taken;
  for (const auto& n : avoid) taken.insert(n.ident);
  std::vector<Name> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    std::string id = "#" + std::to_string(i);
    if (!taken.contains(id)) out.push_back(Name::channel(std::move(id)));
  }
  return out;
}

NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

bool is_subset(const NameSet& a, const NameSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace cpi
