#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpi/syntax.hpp"

namespace cpi {

/// Names with a free occurrence. Restriction binds channels, input binds
/// variables, both with scope the body or continuation.
NameSet free_names(const Process& p);

/// Every binder occurring in p (restricted channels and input variables).
NameSet bound_names(const Process& p);

/// Free and bound names together.
NameSet all_names(const Process& p);

/// fo(p): free channels occurring as objects of send prefixes.
NameSet free_output_objects(const Process& p);

/// Free names where a reflexive match [a=a] contributes nothing.
NameSet fnn(const Process& p);

NameSet prefix_names(const Prefix& prefix);

/// True for identifiers of the form '#' followed by decimal digits.
bool is_numbered_reserved(const std::string& ident);

/// The `count` smallest channels '#<n>' whose identifiers do not occur in
/// `avoid`, in increasing order of n.
std::vector<Name> fresh_channels(const NameSet& avoid, std::size_t count);

NameSet set_union(const NameSet& a, const NameSet& b);
bool is_subset(const NameSet& a, const NameSet& b);

} // namespace cpi
