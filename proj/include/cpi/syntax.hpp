#pragma once

// Terms of the confidential pi-calculus and of its unrestricted (pi) superset.
//
// Processes are immutable trees with shared structure; copying a Process is
// a reference-count bump.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cpi {

enum class NameKind : std::uint8_t { Channel, Variable };

/// A channel or a variable. Channels and variables live in disjoint sets, so
/// two names are equal only when both kind and identifier agree.
struct Name {
  NameKind kind = NameKind::Channel;
  std::string ident;

  static Name channel(std::string id) { return {NameKind::Channel, std::move(id)}; }
  static Name variable(std::string id) { return {NameKind::Variable, std::move(id)}; }

  bool is_channel() const { return kind == NameKind::Channel; }
  bool is_variable() const { return kind == NameKind::Variable; }
  /// Identifiers starting with '#' never come from surface syntax.
  bool is_reserved() const { return !ident.empty() && ident.front() == '#'; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    if (auto c = a.ident <=> b.ident; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

using NameSet = std::set<Name>;

/// `[lhs=rhs]` guard in front of an action prefix.
struct Guard {
  Name lhs;
  Name rhs;
  friend bool operator==(const Guard&, const Guard&) = default;
};

enum class PrefixKind : std::uint8_t { Send, Receive };

/// A (possibly match-guarded) send or receive. A chain [a=b][c=d]k!<l> is
/// stored as its guards followed by the terminating action, so a match
/// chain always ends in a send or a receive.
struct Prefix {
  std::vector<Guard> guards;
  PrefixKind kind = PrefixKind::Send;
  Name subject;
  /// Objects of a send, binders of a receive. Never empty.
  std::vector<Name> names;

  static Prefix send(Name subject, std::vector<Name> objects) {
    return {{}, PrefixKind::Send, std::move(subject), std::move(objects)};
  }
  static Prefix receive(Name subject, std::vector<Name> binders) {
    return {{}, PrefixKind::Receive, std::move(subject), std::move(binders)};
  }
  Prefix guarded(Name lhs, Name rhs) const {
    Prefix p = *this;
    p.guards.insert(p.guards.begin(), Guard{std::move(lhs), std::move(rhs)});
    return p;
  }

  bool is_send() const { return kind == PrefixKind::Send; }
  bool is_receive() const { return kind == PrefixKind::Receive; }
  std::size_t arity() const { return names.size(); }

  friend bool operator==(const Prefix&, const Prefix&) = default;
};

class Process;

struct Nil {};
struct Prefixed;
struct Par;
struct Restrict;
struct Repl;

class Process {
public:
  struct Node;

  /// The inactive process.
  Process();

  bool is_nil() const;
  bool is_prefixed() const;
  bool is_par() const;
  bool is_restrict() const;
  bool is_repl() const;

  const Prefixed& as_prefixed() const;
  const Par& as_par() const;
  const Restrict& as_restrict() const;
  const Repl& as_repl() const;

  const Node& node() const { return *node_; }
  bool same_node(const Process& other) const { return node_ == other.node_; }

  friend bool operator==(const Process& a, const Process& b);

  explicit Process(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

private:
  std::shared_ptr<const Node> node_;
};

struct Prefixed {
  Prefix prefix;
  Process cont;
};

struct Par {
  Process left;
  Process right;
};

/// (new k1, ..., kn) body; definitionally (new k1)...(new kn) body.
struct Restrict {
  std::vector<Name> channels;
  Process body;
};

struct Repl {
  Process body;
};

struct Process::Node {
  std::variant<Nil, Prefixed, Par, Restrict, Repl> v;
};

Process nil();
Process prefixed(Prefix prefix, Process cont);
Process par(Process left, Process right);
Process restrict(std::vector<Name> channels, Process body);
Process repl(Process body);

/// Left-nested parallel composition of all components; nil() if empty.
Process par_all(const std::vector<Process>& components);

/// Number of AST nodes (processes and prefixes, guards included).
std::size_t term_size(const Process& p);

} // namespace cpi
