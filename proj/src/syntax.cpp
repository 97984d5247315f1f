#include "cpi/syntax.hpp"

#include <cassert>

namespace cpi {

namespace {

const std::shared_ptr<const Process::Node>& nil_node() {
  static const auto node = std::make_shared<const Process::Node>(Process::Node{Nil{}});
  return node;
}

bool equal_nodes(const Process::Node& a, const Process::Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Nil>) {
          return true;
        } else if constexpr (std::is_same_v<T, Prefixed>) {
          return x.prefix == y.prefix && x.cont == y.cont;
        } else if constexpr (std::is_same_v<T, Par>) {
          return x.left == y.left && x.right == y.right;
        } else if constexpr (std::is_same_v<T, Restrict>) {
          return x.channels == y.channels && x.body == y.body;
        } else {
          return x.body == y.body;
        }
      },
      a.v);
}

} // namespace

Process::Process() : node_(nil_node()) {}

bool Process::is_nil() const { return std::holds_alternative<Nil>(node_->v); }
bool Process::is_prefixed() const { return std::holds_alternative<Prefixed>(node_->v); }
bool Process::is_par() const { return std::holds_alternative<Par>(node_->v); }
bool Process::is_restrict() const { return std::holds_alternative<Restrict>(node_->v); }
bool Process::is_repl() const { return std::holds_alternative<Repl>(node_->v); }

const Prefixed& Process::as_prefixed() const { return std::get<Prefixed>(node_->v); }
const Par& Process::as_par() const { return std::get<Par>(node_->v); }
const Restrict& Process::as_restrict() const { return std::get<Restrict>(node_->v); }
const Repl& Process::as_repl() const { return std::get<Repl>(node_->v); }

bool operator==(const Process& a, const Process& b) {
  return a.node_ == b.node_ || equal_nodes(*a.node_, *b.node_);
}

Process nil() { return Process(); }

Process prefixed(Prefix prefix, Process cont) {
  assert(!prefix.names.empty());
  return Process(std::make_shared<const Process::Node>(
      Process::Node{Prefixed{std::move(prefix), std::move(cont)}}));
}

Process par(Process left, Process right) {
  return Process(std::make_shared<const Process::Node>(
      Process::Node{Par{std::move(left), std::move(right)}}));
}

Process restrict(std::vector<Name> channels, Process body) {
  assert(!channels.empty());
  return Process(std::make_shared<const Process::Node>(
      Process::Node{Restrict{std::move(channels), std::move(body)}}));
}

Process repl(Process body) {
  return Process(std::make_shared<const Process::Node>(Process::Node{Repl{std::move(body)}}));
}

Process par_all(const std::vector<Process>& components) {
  if (components.empty()) return nil();
  Process acc = components.front();
  for (std::size_t i = 1; i < components.size(); ++i) acc = par(acc, components[i]);
  return acc;
}

std::size_t term_size(const Process& p) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          return 1;
        } else if constexpr (std::is_same_v<T, Prefixed>) {
          return 2 + x.prefix.guards.size() + term_size(x.cont);
        } else if constexpr (std::is_same_v<T, Par>) {
          return 1 + term_size(x.left) + term_size(x.right);
        } else {
          return 1 + term_size(x.body);
        }
      },
      p.node().v);
}

} // namespace cpi
