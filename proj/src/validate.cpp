#include "cpi/validate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace cpi {

namespace {

std::string child_path(const std::string& path, const char* step) {
  return (path == "/" ? std::string("/") : path + "/") + step;
}

// Union-find over sort nodes. A node is either an unknown sort or a channel
// sort ch(children...). Nodes are linked before their children are unified,
// which keeps unification of cyclic sorts terminating.
class SortGraph {
public:
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    chan_.push_back(std::nullopt);
    return parent_.back();
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the conflicting arities when unification fails.
  std::optional<std::pair<std::size_t, std::size_t>> unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return std::nullopt;
    if (!chan_[a]) {
      parent_[a] = b;
      return std::nullopt;
    }
    if (!chan_[b]) {
      parent_[b] = a;
      return std::nullopt;
    }
    const auto ca = *chan_[a];
    const auto cb = *chan_[b];
    if (ca.size() != cb.size()) return std::make_pair(ca.size(), cb.size());
    parent_[a] = b;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (auto err = unify(ca[i], cb[i])) return err;
    }
    return std::nullopt;
  }

  int channel_of(std::vector<int> children) {
    int n = fresh();
    chan_[n] = std::move(children);
    return n;
  }

private:
  std::vector<int> parent_;
  std::vector<std::optional<std::vector<int>>> chan_;
};

class Validator {
public:
  explicit Validator(bool cpi_rules) : cpi_rules_(cpi_rules) {}

  void walk(const Process& p, const std::string& path, std::map<Name, int>& scope) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Prefixed>) {
            prefixed_case(x, path, scope);
          } else if constexpr (std::is_same_v<T, Par>) {
            walk(x.left, child_path(path, "left"), scope);
            walk(x.right, child_path(path, "right"), scope);
          } else if constexpr (std::is_same_v<T, Restrict>) {
            auto inner = scope;
            for (const auto& c : x.channels) inner[c] = sorts_.fresh();
            walk(x.body, child_path(path, "body"), inner);
          } else if constexpr (std::is_same_v<T, Repl>) {
            walk(x.body, child_path(path, "body"), scope);
          }
        },
        p.node().v);
  }

  std::vector<Violation> take() { return std::move(violations_); }

private:
  int sort_of(const Name& n, std::map<Name, int>& scope) {
    auto it = scope.find(n);
    if (it != scope.end()) return it->second;
    auto f = free_.find(n);
    if (f != free_.end()) return f->second;
    int s = sorts_.fresh();
    free_.emplace(n, s);
    return s;
  }

  void prefixed_case(const Prefixed& pre, const std::string& path, std::map<Name, int>& scope) {
    const Prefix& pi = pre.prefix;
    if (cpi_rules_) {
      for (const auto& n : pi.names) {
        if (pi.is_send() && !n.is_channel()) {
          violations_.push_back({ViolationKind::VariableObject, path,
                                 "send on " + pi.subject.ident + " carries the variable " +
                                     n.ident});
        }
        if (pi.is_receive() && !n.is_variable()) {
          violations_.push_back({ViolationKind::ChannelBinder, path,
                                 "receive on " + pi.subject.ident + " binds the channel " +
                                     n.ident});
        }
      }
    }
    const int subject_sort = sort_of(pi.subject, scope);
    if (pi.is_send()) {
      std::vector<int> objs;
      for (const auto& o : pi.names) objs.push_back(sort_of(o, scope));
      unify_subject(pi, subject_sort, std::move(objs), path);
      walk(pre.cont, child_path(path, "cont"), scope);
      return;
    }
    auto inner = scope;
    std::vector<int> binders;
    for (const auto& b : pi.names) {
      int s = sorts_.fresh();
      inner[b] = s;
      binders.push_back(s);
    }
    unify_subject(pi, subject_sort, std::move(binders), path);
    walk(pre.cont, child_path(path, "cont"), inner);
  }

  void unify_subject(const Prefix& pi, int subject_sort, std::vector<int> objs,
                     const std::string& path) {
    const int used = sorts_.channel_of(std::move(objs));
    if (auto clash = sorts_.unify(subject_sort, used)) {
      violations_.push_back({ViolationKind::SortMismatch, path,
                             "sort violation on " + pi.subject.ident + " (arities " +
                                 std::to_string(std::min(clash->first, clash->second)) + " and " +
                                 std::to_string(std::max(clash->first, clash->second)) + ")"});
    }
  }

  bool cpi_rules_;
  SortGraph sorts_;
  std::map<Name, int> free_;
  std::vector<Violation> violations_;
};

} // namespace

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

std::vector<Violation> check_sorts(const Process& p) {
  Validator v(false);
  std::map<Name, int> scope;
  v.walk(p, "/", scope);
  return v.take();
}

ValidationReport validate_cpi(const Process& p) {
  Validator v(true);
  std::map<Name, int> scope;
  v.walk(p, "/", scope);
  return {v.take()};
}

} // namespace cpi
