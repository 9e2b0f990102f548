#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "linvol/genperm.hpp"
#include "linvol/rational.hpp"

namespace linvol {

// A generalized permutation together with exact positive interval lengths
// satisfying the balance relation between the two rows.
class LinearInvolution {
 public:
  LinearInvolution(GenPerm perm, std::vector<Rat> lambda);

  const GenPerm& perm() const { return perm_; }
  const std::vector<Rat>& lambda() const { return lambda_; }
  const Rat& total_length() const { return total_; }
  Rat length_of_position(int pos) const { return lambda_[perm_.word_at(pos)]; }

  // Left endpoints of the subintervals, per row, plus the row offsets table.
  Rat left_of_position(int pos) const;

 private:
  GenPerm perm_;
  std::vector<Rat> lambda_;
  Rat total_;
};

inline LinearInvolution make(GenPerm perm, std::vector<Rat> lambda) {
  return LinearInvolution(std::move(perm), std::move(lambda));
}

// eval outcome: either the image point with its row, or the subdivision point
// the input coincides with.
struct EvalPoint {
  Rat x;
  int row = 0;
};
struct EvalSingular {
  int position_after = 0;  // x equals the left endpoint of this position
  int row = 0;
};
using EvalResult = std::variant<EvalPoint, EvalSingular>;

// One application of T = f o T~ at (x, row). Throws OutOfRangeError unless
// 0 < x < L.
EvalResult eval(const LinearInvolution& t, const Rat& x, int row);

// One application of the underlying involution T~ (no row flip by f).
EvalResult eval_tilde(const LinearInvolution& t, const Rat& x, int row);

struct StepOutcome {
  enum class Blocked { ConnectionLength0, CombinatorialUndefined };
  std::optional<LinearInvolution> next;  // engaged on success
  int type = -1;                         // 0 or 1 on success
  LetterId winner = 0, loser = 0;
  std::optional<Blocked> reason;         // engaged when next is empty
};

// One Rauzy-Veech induction step; lengths renormalized to total 1 on request.
StepOutcome step(const LinearInvolution& t, bool renormalize = false);

struct TraceStep {
  GenPerm pi;  // canonical permutation after the step
  int type = 0;
  std::string winner, loser;
  Rat length_after;
};

enum class Termination { StepsExhausted, ConnectionLength0, BothUndefined };

struct InductionTrace {
  std::vector<TraceStep> steps;
  Termination termination = Termination::StepsExhausted;
  std::optional<int> first_irreducible_index;  // 0 = the seed itself
};

// Iterates `step` until it blocks, the interval drops below min_length, or
// max_steps is hit. Records when the permutation first becomes irreducible
// and asserts irreducibility persists from then on.
InductionTrace iterate(const LinearInvolution& t, int max_steps, const Rat& min_length = Rat(0));

// JSON lines, one record per step.
std::string trace_jsonl(const InductionTrace& trace);

// The classical interval exchange induced on one row by first return.
struct ReturnMap {
  GenPerm perm;              // a true permutation
  std::vector<Rat> lengths;  // by letter id of `perm`
};

ReturnMap first_return_iem(const LinearInvolution& t, int row, long long max_iter);

}  // namespace linvol
