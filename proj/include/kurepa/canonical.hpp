#pragma once

#include <string>

#include "kurepa/core.hpp"

namespace kurepa {

/// Canonical isomorph of s over renamed carriers: levels become l0..lk by
/// position, urelements p0..pc and nodes n<level>_<k> in a
/// refinement-then-minimize order, branch labels renumbered densely in order.
/// Two structures get the same canonical form exactly when a carrier
/// bijection preserving levels, the tree order, the witness families and the
/// label order exists between them.
TauStructure canonical_form(const TauStructure& s);

/// Stable encoding of canonical_form(s); equal keys == isomorphic.
std::string canonical_key(const TauStructure& s);

}  // namespace kurepa
