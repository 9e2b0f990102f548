#pragma once

#include <optional>
#include <vector>

#include "linvol/genperm.hpp"

namespace linvol {

// Combinatorial Rauzy-Veech maps. Outputs keep the input letter names; use
// .canonical() when enumerating classes. std::nullopt when the map's guard
// fails (that is a value, not an error).
std::optional<GenPerm> r0(const GenPerm& gp);
std::optional<GenPerm> r1(const GenPerm& gp);

inline std::optional<GenPerm> r_eps(const GenPerm& gp, int eps) {
  return eps == 0 ? r0(gp) : r1(gp);
}

// All generalized permutations mapping onto `gp` under r_eps, one candidate
// per insertion branch, each forward-verified. Canonical forms.
std::vector<GenPerm> predecessors(const GenPerm& gp, int eps);

}  // namespace linvol
