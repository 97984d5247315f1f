#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpi/names.hpp"
#include "cpi/parser.hpp"
#include "cpi/subst.hpp"
#include "cpi/syntax.hpp"

namespace cpi::testing {

inline Name ch(const std::string& id) { return Name::channel(id); }
inline Name var(const std::string& id) { return Name::variable(id); }

inline NameSet chans(std::initializer_list<const char*> ids) {
  NameSet out;
  for (const char* id : ids) out.insert(ch(id));
  return out;
}

/// Canonical pi-mode parse; '#' names allowed.
inline Process pi(std::string_view text) {
  return parse(text, ParseMode::PiFull, ParseOptions{true});
}

/// Canonical C_pi parse.
inline Process cp(std::string_view text) { return parse(text, ParseMode::CpiStrict); }

/// Names kept as written.
inline Process raw(std::string_view text) { return parse_raw(text, ParseOptions{true}); }

inline std::string canon(const Process& p) { return render(canonicalize(p)); }

/// Turns the free channel `from` into the variable `to`, stopping at
/// restrictions of `from`.
inline Process to_variable(const Process& p, const Name& from, const Name& to) {
  auto look = [&](const Name& n) { return n == from ? to : n; };
  if (p.is_prefixed()) {
    Prefix pre = p.as_prefixed().prefix;
    for (auto& g : pre.guards) g = {look(g.lhs), look(g.rhs)};
    pre.subject = look(pre.subject);
    if (pre.is_send()) {
      for (auto& o : pre.names) o = look(o);
    }
    return prefixed(pre, to_variable(p.as_prefixed().cont, from, to));
  }
  if (p.is_par()) return par(to_variable(p.as_par().left, from, to), to_variable(p.as_par().right, from, to));
  if (p.is_restrict()) {
    for (const auto& c : p.as_restrict().channels) {
      if (c == from) return p;
    }
    return restrict(p.as_restrict().channels, to_variable(p.as_restrict().body, from, to));
  }
  if (p.is_repl()) return repl(to_variable(p.as_repl().body, from, to));
  return p;
}

} // namespace cpi::testing
