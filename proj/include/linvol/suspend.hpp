#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linvol/genperm.hpp"
#include "linvol/rational.hpp"

namespace linvol {

// Imaginary parts only: top partial sums >= 0, bottom <= 0, both row sums 0.
struct PseudoSuspension {
  std::vector<Rat> tau;  // by letter id
};

bool is_pseudo_suspension(const GenPerm& gp, const PseudoSuspension& ps);
// strict except at the extremal indices
bool is_strict_pseudo_suspension(const GenPerm& gp, const PseudoSuspension& ps);

// The Masur-Veech construction extended by the mirror trick on same-row
// letters; always a pseudo-suspension.
PseudoSuspension masur_veech_pseudo(const GenPerm& gp);

// Strict pseudo-suspension via slack-maximizing exact LP; engaged iff the
// permutation is strongly irreducible.
std::optional<PseudoSuspension> strict_pseudo(const GenPerm& gp);

// Internal helper exposed for its brute-force validation: solves the
// mirror-closed case on a raw sequence of 2k symbols, each letter twice.
std::vector<Rat> mirror_pseudo_solution(const std::vector<LetterId>& seq);

struct SuspensionData {
  std::vector<Rat> re;  // by letter id; equals the interval lengths
  std::vector<Rat> im;
};

// All four suspension conditions: Re positive, strict sign conditions on the
// proper prefix imaginary sums, equal row sums.
bool is_suspension(const GenPerm& gp, const SuspensionData& zeta);

// Exact LP over the imaginary parts. lambda defaults to a deterministic
// balanced vector; engaged iff the permutation is irreducible.
std::optional<SuspensionData> find_suspension(const GenPerm& gp,
                                              std::optional<std::vector<Rat>> lambda = {});

struct Polygon {
  std::vector<std::pair<Rat, Rat>> top;     // vertices of L0, origin first
  std::vector<std::pair<Rat, Rat>> bottom;  // vertices of L1
  bool suitable = false;
  Rat area;
};

Polygon polygon(const GenPerm& gp, const SuspensionData& zeta);

// Adjusts real parts only (same imaginary parts) so the two broken lines
// meet at their endpoints alone. Throws NoSuspensionError on invalid input.
SuspensionData make_suitable(const GenPerm& gp, const SuspensionData& zeta);

// Rectangle heights of the zippered construction; requires a suitable
// polygon. Sum of lambda_a * h_a equals the polygon area.
std::vector<Rat> heights(const GenPerm& gp, const SuspensionData& zeta);

// One Rauzy-Veech step on the suspension level. Throws ConnectionError when
// the two rightmost lengths agree.
std::pair<GenPerm, SuspensionData> suspension_step(const GenPerm& gp, const SuspensionData& zeta);

// diag(s, 1/s) on every zeta_alpha.
SuspensionData geodesic_flow(const SuspensionData& zeta, const Rat& s);

std::string suspension_json(const GenPerm& gp, const SuspensionData& zeta);
std::string polygon_json(const Polygon& poly);

}  // namespace linvol
