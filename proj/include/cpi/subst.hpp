#pragma once

#include <map>

#include "cpi/syntax.hpp"

namespace cpi {

using Substitution = std::map<Name, Name>;

/// Simultaneous capture-avoiding substitution. Every name in the range must
/// be a channel, and no name in the domain may occur only as a binder of p
/// (SubstitutionDomainError otherwise).
Process substitute(const Process& p, const Substitution& sigma);

/// Substitution without the domain checks: binders that shadow a name in
/// the domain stop the substitution inside their scope, and binders that
/// would capture a name of the range are renamed to fresh reserved names.
Process substitute_free(const Process& p, const Substitution& sigma);

/// Alpha-normal form. Nested restrictions are merged into one list and every
/// binder is renamed, in pre-order, to the next '#<n>' not free in p. Two
/// terms are alpha-equivalent iff their canonical forms are equal.
Process canonicalize(const Process& p);

bool alpha_equivalent(const Process& a, const Process& b);

} // namespace cpi
