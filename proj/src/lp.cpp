#include "linvol/lp.hpp"

#include <algorithm>

#include "linvol/errors.hpp"

namespace linvol {

int ExactLp::add_var(const Rat& lo, std::optional<Rat> hi) {
  lo_.push_back(lo);
  hi_.push_back(std::move(hi));
  return static_cast<int>(lo_.size()) - 1;
}

void ExactLp::add_constraint(std::vector<std::pair<int, Rat>> terms, char rel, const Rat& rhs) {
  rows_.push_back(Row{std::move(terms), rel, rhs});
}

void ExactLp::set_objective(std::vector<std::pair<int, Rat>> terms) {
  objective_ = std::move(terms);
}

// Standard-form tableau simplex. User variable i is shifted to y_i = x_i-lo_i
// >= 0; finite upper bounds become extra rows. Phase 1 minimizes the sum of
// artificials; Bland's rule everywhere, so cycling is impossible.
ExactLp::Result ExactLp::solve(std::optional<Rat> stop_above) const {
  const int nvars = static_cast<int>(lo_.size());
  struct NRow {
    std::vector<Rat> a;
    Rat b;
    char rel;
  };
  std::vector<NRow> rows;
  auto shift_row = [&](const std::vector<std::pair<int, Rat>>& terms, char rel, Rat rhs) {
    NRow r;
    r.a.assign(nvars, Rat(0));
    for (const auto& [v, c] : terms) {
      r.a[v] += c;
      rhs -= c * lo_[v];
    }
    r.b = rhs;
    r.rel = rel;
    rows.push_back(std::move(r));
  };
  for (const auto& row : rows_) shift_row(row.terms, row.rel, row.rhs);
  for (int v = 0; v < nvars; ++v)
    if (hi_[v]) shift_row({{v, Rat(1)}}, '<', *hi_[v]);

  const int m = static_cast<int>(rows.size());
  // columns: nvars user vars, then one slack/surplus per row, then artificials
  int nslack = 0;
  for (const auto& r : rows)
    if (r.rel != '=') ++nslack;

  std::vector<std::vector<Rat>> T(m, std::vector<Rat>());
  std::vector<int> basis(m, -1);
  int ncols = nvars + nslack;  // artificials appended later as needed
  int slack_idx = nvars;
  std::vector<int> art_of_row;
  // First normalize b >= 0, then add slack, then artificial where required.
  std::vector<int> slack_col(m, -1);
  {
    int si = slack_idx;
    for (int i = 0; i < m; ++i) {
      if (rows[i].rel != '=') slack_col[i] = si++;
    }
  }
  int nart = 0;
  std::vector<int> art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    NRow r = rows[i];
    Rat sgn(1);
    if (r.b < 0) {
      sgn = -1;
      for (auto& c : r.a) c = -c;
      r.b = -r.b;
      if (r.rel == '<')
        r.rel = '>';
      else if (r.rel == '>')
        r.rel = '<';
    }
    std::vector<Rat> row(ncols, Rat(0));
    for (int v = 0; v < nvars; ++v) row[v] = r.a[v];
    if (slack_col[i] >= 0) row[slack_col[i]] = (r.rel == '<') ? Rat(1) : Rat(-1);
    bool needs_art = (r.rel == '=') || (r.rel == '>');
    if (needs_art) {
      art_col[i] = ncols + nart;
      ++nart;
    } else {
      basis[i] = slack_col[i];
    }
    T[i] = std::move(row);
    rows[i] = std::move(r);
  }
  ncols += nart;
  for (int i = 0; i < m; ++i) {
    T[i].resize(ncols, Rat(0));
    if (art_col[i] >= 0) {
      T[i][art_col[i]] = 1;
      basis[i] = art_col[i];
    }
  }
  std::vector<Rat> b(m);
  for (int i = 0; i < m; ++i) b[i] = rows[i].b;
  art_of_row = art_col;

  auto pivot = [&](int prow, int pcol) {
    Rat p = T[prow][pcol];
    for (auto& c : T[prow]) c /= p;
    b[prow] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == prow) continue;
      Rat f = T[i][pcol];
      if (f == 0) continue;
      for (int j = 0; j < ncols; ++j) T[i][j] -= f * T[prow][j];
      b[i] -= f * b[prow];
    }
    basis[prow] = pcol;
  };

  // reduced costs for maximizing sum(c[j] x_j): z_j - c_j form
  auto run_simplex = [&](const std::vector<Rat>& c, bool maximize,
                         std::optional<Rat> threshold) -> Status {
    for (;;) {
      // objective value (only needed for early stop)
      if (threshold) {
        Rat obj(0);
        for (int i = 0; i < m; ++i)
          if (basis[i] < static_cast<int>(c.size())) obj += c[basis[i]] * b[i];
        if (obj > *threshold) return Status::Optimal;
      }
      int pcol = -1;
      for (int j = 0; j < ncols; ++j) {
        Rat rc(0);
        for (int i = 0; i < m; ++i)
          if (basis[i] < static_cast<int>(c.size())) rc += c[basis[i]] * T[i][j];
        Rat cj = j < static_cast<int>(c.size()) ? c[j] : Rat(0);
        rc -= cj;
        bool improving = maximize ? (rc < 0) : (rc > 0);
        if (improving) {
          pcol = j;  // Bland: first improving column
          break;
        }
      }
      if (pcol < 0) return Status::Optimal;
      int prow = -1;
      for (int i = 0; i < m; ++i) {
        if (T[i][pcol] > 0) {
          if (prow < 0) {
            prow = i;
          } else {
            Rat lhs = b[i] * T[prow][pcol];
            Rat rhs = b[prow] * T[i][pcol];
            if (lhs < rhs || (lhs == rhs && basis[i] < basis[prow])) prow = i;  // Bland tie-break
          }
        }
      }
      if (prow < 0) return Status::Unbounded;
      pivot(prow, pcol);
    }
  };

  Result res;
  // Phase 1
  if (nart > 0) {
    std::vector<Rat> c1(ncols, Rat(0));
    for (int i = 0; i < m; ++i)
      if (art_of_row[i] >= 0) c1[art_of_row[i]] = -1;  // maximize -(sum of artificials)
    run_simplex(c1, true, std::nullopt);
    Rat art_sum(0);
    for (int i = 0; i < m; ++i)
      if (art_of_row[i] >= 0 && basis[i] == art_of_row[i]) art_sum += b[i];
    if (art_sum != 0) {
      res.status = Status::Infeasible;
      return res;
    }
    // drive leftover artificials out of the basis when possible
    for (int i = 0; i < m; ++i) {
      if (art_of_row[i] >= 0 && basis[i] == art_of_row[i]) {
        int repl = -1;
        for (int j = 0; j < nvars + nslack; ++j)
          if (T[i][j] != 0) {
            repl = j;
            break;
          }
        if (repl >= 0) pivot(i, repl);
      }
    }
  }

  // Phase 2: forbid artificial columns by truncating the cost vector length
  std::vector<Rat> c2(nvars + nslack, Rat(0));
  for (const auto& [v, coef] : objective_) c2[v] += coef;
  // zero out any artificial columns still around so they never enter
  int saved_ncols = ncols;
  ncols = nvars + nslack;
  std::optional<Rat> threshold;
  if (stop_above) {
    // threshold on the shifted objective
    Rat shift(0);
    for (const auto& [v, coef] : objective_) shift += coef * lo_[v];
    threshold = *stop_above - shift;
  }
  Status st = run_simplex(c2, true, threshold);
  ncols = saved_ncols;
  if (st == Status::Unbounded) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.x.assign(nvars, Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] >= 0 && basis[i] < nvars) res.x[basis[i]] = b[i];
  for (int v = 0; v < nvars; ++v) res.x[v] += lo_[v];
  Rat obj(0);
  for (const auto& [v, coef] : objective_) obj += coef * res.x[v];
  res.objective = obj;
  if (stop_above && obj > *stop_above) res.early_stop = true;
  return res;
}

}  // namespace linvol
