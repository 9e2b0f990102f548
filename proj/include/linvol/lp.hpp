#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "linvol/rational.hpp"

namespace linvol {

// Small dense exact-rational linear programs (maximization). Bland's rule,
// two phases, no floating point anywhere. Sizes here are tiny (tens of rows),
// so the plain tableau is the right tool.
class ExactLp {
 public:
  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Infeasible;
    Rat objective;
    std::vector<Rat> x;   // values of the user variables
    bool early_stop = false;  // objective passed the requested threshold; not optimal
  };

  // Variables have a finite lower bound and an optional upper bound.
  int add_var(const Rat& lo, std::optional<Rat> hi = std::nullopt);

  // rel: '<' for <=, '=' for ==, '>' for >=.
  void add_constraint(std::vector<std::pair<int, Rat>> terms, char rel, const Rat& rhs);

  void set_objective(std::vector<std::pair<int, Rat>> terms);

  // If stop_above is set, phase 2 returns as soon as the objective exceeds it.
  Result solve(std::optional<Rat> stop_above = std::nullopt) const;

 private:
  struct Row {
    std::vector<std::pair<int, Rat>> terms;
    char rel;
    Rat rhs;
  };
  std::vector<Rat> lo_;
  std::vector<std::optional<Rat>> hi_;
  std::vector<Row> rows_;
  std::vector<std::pair<int, Rat>> objective_;
};

}  // namespace linvol
