#pragma once

#include <string>
#include <vector>

#include "linvol/genperm.hpp"

namespace linvol {

struct StratumSignature {
  enum class Kind { Abelian, Quadratic };
  Kind kind = Kind::Quadratic;
  std::vector<int> orders;  // ascending; 1-form orders in the Abelian case
  int genus = 0;
  int num_singularities = 0;
  int dimension = 0;

  std::string str() const;   // "Q(-1,9)" or "H(2)"
  std::string json() const;  // {kind, orders, genus, n, dim}

  friend bool operator==(const StratumSignature&, const StratumSignature&) = default;
};

// Zero/pole orders of the suspension surface: glue the suitable polygon's
// paired sides, sum corner angles along each vertex cycle exactly.
// Throws ReducibleError when no suspension exists.
StratumSignature signature(const GenPerm& gp);

// True iff the vertical foliation is orientable, i.e. the word is a true
// permutation; the signature is then reported in 1-form normalization.
bool is_abelian(const GenPerm& gp);

}  // namespace linvol
