#pragma once

// Seeded random terms. Draws use mt19937_64 with modulo reduction so a seed
// gives the same terms on every platform.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cpi/syntax.hpp"

namespace cpi {

struct GeneratorOptions {
  /// Upper bound on term_size of generated terms.
  std::size_t max_size = 8;
  std::vector<std::string> channels = {"a", "b", "c"};
  std::size_t max_arity = 1;
  /// Allows received variables as send objects (pi terms).
  bool variable_objects = false;
  bool matches = true;
  bool restriction = true;
  bool replication = true;
  /// Replications below another replication.
  bool nested_replication = false;
};

class Generator {
public:
  Generator(std::uint64_t seed, GeneratorOptions options);

  /// A term with term_size at most max_size. Monadic terms are always well
  /// sorted; polyadic ones may not be.
  Process next();

  /// Like next(), redrawing until check_sorts accepts.
  Process next_well_sorted();

  /// Uniform-ish draw in [0, n).
  std::size_t below(std::size_t n);

private:
  struct Scope {
    std::vector<Name> channels;
    std::vector<Name> variables;
  };

  Process term(std::size_t budget, Scope& scope, bool under_repl);
  /// `polarity` 0 forces a send, 1 a receive, anything else draws one.
  Process prefixed_term(std::size_t budget, Scope& scope, bool under_repl,
                        const Name* subject = nullptr, int polarity = -1);
  Name shared_subject(const Scope& scope);
  Name any_name(const Scope& scope);
  Name channel(const Scope& scope);

  std::mt19937_64 rng_;
  GeneratorOptions options_;
  std::size_t counter_ = 0;
};

} // namespace cpi
