#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linvol/genperm.hpp"
#include "linvol/rational.hpp"

namespace linvol {

// A corner decomposition of the word. Cut indices are counts: the top-left
// corner is word(1..i1), top-right word(i2+1..l), bottom-left word(l+1..i3),
// bottom-right word(i4+1..2d). Letter sets are stored as sorted letter ids.
struct DecompositionWitness {
  enum class Case { I, II, III, Dyn1, Dyn2 };
  Case tag = Case::I;
  int i1 = 0, i2 = 0, i3 = 0, i4 = 0;
  std::vector<LetterId> A, B, C, D;
  std::optional<LetterId> alpha0;  // Dyn2 only
  bool switched = false;           // Dyn2 checked on the top/bottom switched word

  std::string case_name() const;
};

// Definition-style reducibility: a decomposition with the corner equations
// and one of the emptiness patterns (none empty / exactly one empty on the
// left / two empty on the same side). nullopt iff irreducible.
std::optional<DecompositionWitness> find_reduction(const GenPerm& gp);

inline bool is_irreducible(const GenPerm& gp) { return !find_reduction(gp).has_value(); }

// True iff every decomposition satisfying the corner equations has all four
// corners empty.
bool is_strongly_irreducible(const GenPerm& gp);

// Replays a witness against the word; every returned witness must pass.
bool witness_replays(const GenPerm& gp, const DecompositionWitness& w);

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<DecompositionWitness> blocking;
};

// Decides whether the balanced positive length vector `lambda` (indexed by
// letter id) is admissible: no parameter-free blocking decomposition and no
// bracket decomposition whose length band contains lambda.
AdmissibilityResult is_admissible(const GenPerm& gp, const std::vector<Rat>& lambda);

struct DynIrreducibilityResult {
  bool dynamically_irreducible = false;
  std::optional<std::vector<Rat>> witness_lambda;       // when true
  std::optional<DecompositionWitness> blocking;         // when false and parameter-free
};

DynIrreducibilityResult is_dynamically_irreducible(const GenPerm& gp);

// Every bracket decomposition (case 2), both orientations, deduplicated by
// its (B, C, alpha0) band. The length inequality attached to a witness w is
// sum_C lambda <= sum_B lambda <= lambda_alpha0 + sum_C lambda.
std::vector<DecompositionWitness> bracket_decompositions(const GenPerm& gp);

// A positive balanced length vector; deterministic, mildly generic.
std::vector<Rat> generic_lambda(const GenPerm& gp);

// Random positive balanced lengths with 64-bit numerators over a fixed
// denominator; rng is any callable returning uint64.
std::vector<Rat> random_lambda(const GenPerm& gp, const std::function<std::uint64_t()>& rng);

void check_balance(const GenPerm& gp, const std::vector<Rat>& lambda);  // throws BalanceError

}  // namespace linvol
