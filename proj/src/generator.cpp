#include "cpi/generator.hpp"

#include "cpi/validate.hpp"

namespace cpi {

Generator::Generator(std::uint64_t seed, GeneratorOptions options)
    : rng_(seed), options_(std::move(options)) {}

std::size_t Generator::below(std::size_t n) { return n == 0 ? 0 : rng_() % n; }

Process Generator::next() {
  counter_ = 0;
  Scope scope;
  for (const auto& c : options_.channels) scope.channels.push_back(Name::channel(c));
  // Sizes from the upper half of the range; small terms are mostly inert.
  const std::size_t low = options_.max_size / 2;
  const std::size_t budget = low + 1 + below(options_.max_size - low);
  return term(budget, scope, false);
}

Process Generator::next_well_sorted() {
  for (;;) {
    Process p = next();
    if (check_sorts(p).empty()) return p;
  }
}

Name Generator::channel(const Scope& scope) { return scope.channels[below(scope.channels.size())]; }

Name Generator::any_name(const Scope& scope) {
  const std::size_t n = scope.channels.size() + scope.variables.size();
  const std::size_t i = below(n);
  return i < scope.channels.size() ? scope.channels[i] : scope.variables[i - scope.channels.size()];
}

Process Generator::term(std::size_t budget, Scope& scope, bool under_repl) {
  if (budget <= 1) return nil();
  // Weights: prefix 9, par 5, comm 4, restriction 3, replication 2.
  enum Choice { Prefix, ParC, CommC, Res, Rep, NilC };
  // Nil is only drawn when nothing larger fits.
  std::vector<std::pair<Choice, std::size_t>> options;
  if (budget < 3) options.push_back({NilC, 1});
  if (budget >= 3) {
    options.push_back({Prefix, 9});
  }
  if (budget >= 5) options.push_back({ParC, 5});
  if (budget >= 7) options.push_back({CommC, 4});
  if (options_.restriction && budget >= 4) options.push_back({Res, 3});
  if (options_.replication && budget >= 4 && (options_.nested_replication || !under_repl)) {
    options.push_back({Rep, 2});
  }
  std::size_t total = 0;
  for (const auto& [c, w] : options) total += w;
  std::size_t pick = below(total);
  Choice choice = NilC;
  for (const auto& [c, w] : options) {
    if (pick < w) {
      choice = c;
      break;
    }
    pick -= w;
  }
  switch (choice) {
    case Prefix:
      return prefixed_term(budget, scope, under_repl);
    case ParC: {
      // Both sides can hold a prefix when the budget allows it.
      const std::size_t left = budget >= 7 ? 3 + below(budget - 6) : 1 + below(budget - 2);
      Process l = term(left, scope, under_repl);
      return par(std::move(l), term(budget - 1 - left, scope, under_repl));
    }
    case CommC: {
      // A send and a receive on one subject, side by side.
      const Name subject = shared_subject(scope);
      const std::size_t left = 3 + below(budget - 6);
      const int first = static_cast<int>(below(2));
      Process l = prefixed_term(left, scope, under_repl, &subject, first);
      return par(std::move(l),
                 prefixed_term(budget - 1 - left, scope, under_repl, &subject, 1 - first));
    }
    case Res: {
      Name k = Name::channel("r" + std::to_string(counter_++));
      Scope inner = scope;
      inner.channels.push_back(k);
      return restrict({k}, term(budget - 1, inner, under_repl));
    }
    case Rep:
      return repl(term(budget - 1, scope, true));
    case NilC:
      break;
  }
  return nil();
}

Name Generator::shared_subject(const Scope& scope) {
  return scope.channels.size() > options_.channels.size() ? scope.channels.back()
                                                          : scope.channels.front();
}

Process Generator::prefixed_term(std::size_t budget, Scope& scope, bool under_repl,
                                 const Name* forced, int polarity) {
  std::vector<Guard> guards;
  if (!forced && options_.matches && budget >= 4 && below(5) == 0) {
    Name lhs = any_name(scope);
    Name rhs = below(2) == 0 ? lhs : any_name(scope);
    guards.push_back({std::move(lhs), std::move(rhs)});
  }
  const std::size_t arity = 1 + below(options_.max_arity);
  // Half of the subjects come from a small shared set so that sends and
  // receives meet: the innermost restricted channel, else the first channel.
  Name subject = forced ? *forced : below(2) == 0 ? shared_subject(scope) : any_name(scope);
  const std::size_t rest = budget - 2 - guards.size();
  const bool send = polarity == 0 || (polarity != 1 && below(2) == 0);
  if (send) {
    std::vector<Name> objects;
    for (std::size_t i = 0; i < arity; ++i) {
      objects.push_back(options_.variable_objects ? any_name(scope) : channel(scope));
    }
    Prefix pi = Prefix::send(std::move(subject), std::move(objects));
    pi.guards = std::move(guards);
    return prefixed(std::move(pi), term(rest, scope, under_repl));
  }
  std::vector<Name> binders;
  Scope inner = scope;
  for (std::size_t i = 0; i < arity; ++i) {
    binders.push_back(Name::variable("x" + std::to_string(counter_++)));
    inner.variables.push_back(binders.back());
  }
  Prefix pi = Prefix::receive(std::move(subject), std::move(binders));
  pi.guards = std::move(guards);
  return prefixed(std::move(pi), term(rest, inner, under_repl));
}

} // namespace cpi
