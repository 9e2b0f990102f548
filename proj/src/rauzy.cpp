#include "linvol/rauzy.hpp"

#include <algorithm>

namespace linvol {

namespace {

// names survive the move so that outputs can be compared against hand tables
GenPerm rebuild(const GenPerm& gp, std::vector<LetterId> word, int top_len) {
  std::vector<std::string> names;
  names.reserve(gp.d());
  for (int i = 0; i < gp.d(); ++i) names.push_back(gp.letter_name(static_cast<LetterId>(i)));
  return GenPerm(std::move(names), std::move(word), top_len);
}

bool has_pair_inside(const GenPerm& gp, int lo, int hi) {  // pair {x, twin(x)} in [lo, hi)
  for (int x = lo; x < hi; ++x)
    if (gp.twin(x) >= lo && gp.twin(x) < hi) return true;
  return false;
}

}  // namespace

std::optional<GenPerm> r0(const GenPerm& gp) {
  const int l = gp.top_len(), n = gp.size();
  const int t = gp.twin(l - 1);
  const auto& w = gp.word();
  if (t >= l) {
    if (t == n - 1) return std::nullopt;  // pi(l) == pi(l+m)
    std::vector<LetterId> out(n);
    for (int j = 0; j <= t; ++j) out[j] = w[j];
    out[t + 1] = w[n - 1];
    for (int j = t + 2; j < n; ++j) out[j] = w[j - 1];
    return rebuild(gp, std::move(out), l);
  }
  if (!has_pair_inside(gp, l, n - 1)) return std::nullopt;
  std::vector<LetterId> out(n);
  for (int j = 0; j < t; ++j) out[j] = w[j];
  out[t] = w[n - 1];
  for (int j = t + 1; j < n; ++j) out[j] = w[j - 1];
  return rebuild(gp, std::move(out), l + 1);
}

std::optional<GenPerm> r1(const GenPerm& gp) {
  const int l = gp.top_len(), n = gp.size();
  const int u = gp.twin(n - 1);
  const auto& w = gp.word();
  if (u < l) {
    if (u == l - 1) return std::nullopt;  // pi(l) == pi(l+m)
    std::vector<LetterId> out(n);
    for (int j = 0; j <= u; ++j) out[j] = w[j];
    out[u + 1] = w[l - 1];
    for (int j = u + 2; j < l; ++j) out[j] = w[j - 1];
    for (int j = l; j < n; ++j) out[j] = w[j];
    return rebuild(gp, std::move(out), l);
  }
  if (!has_pair_inside(gp, 0, l - 1)) return std::nullopt;
  std::vector<LetterId> out(n);
  for (int j = 0; j < l - 1; ++j) out[j] = w[j];
  for (int j = l - 1; j < u - 1; ++j) out[j] = w[j + 1];
  out[u - 1] = w[l - 1];
  for (int j = u; j < n; ++j) out[j] = w[j];
  return rebuild(gp, std::move(out), l - 1);
}

namespace {

std::vector<LetterId> remove_then_insert(const std::vector<LetterId>& w, int remove_at,
                                         int insert_at) {
  std::vector<LetterId> out;
  out.reserve(w.size());
  LetterId moved = w[remove_at];
  for (int j = 0; j < static_cast<int>(w.size()); ++j)
    if (j != remove_at) out.push_back(w[j]);
  out.insert(out.begin() + insert_at, moved);
  return out;
}

void push_if_verifies(std::vector<GenPerm>& out, const GenPerm& target, int eps,
                      std::vector<LetterId> word, int top_len) {
  GenPerm cand({}, std::move(word), top_len);
  auto image = r_eps(cand, eps);
  if (!image) return;
  GenPerm got = image->canonical();
  GenPerm want = target.canonical();
  if (!(got == want)) return;
  GenPerm c = cand.canonical();
  for (const GenPerm& seen : out)
    if (seen == c) return;
  out.push_back(std::move(c));
}

}  // namespace

std::vector<GenPerm> predecessors(const GenPerm& gp, int eps) {
  const int l = gp.top_len(), n = gp.size();
  const auto& w = gp.word();
  std::vector<GenPerm> out;
  if (eps == 0) {
    const int t = gp.twin(l - 1);
    if (t >= l && t + 1 <= n - 1) {
      // type-preserving branch: the loser sits just after the winner's twin
      push_if_verifies(out, gp, 0, remove_then_insert(w, t + 1, n - 1), l);
    }
    if (t < l && t >= 1 && l >= 2) {
      // row-moving branch: the loser was taken from the bottom's right end
      push_if_verifies(out, gp, 0, remove_then_insert(w, t - 1, n - 1), l - 1);
    }
  } else {
    const int u = gp.twin(n - 1);
    if (u < l && u + 1 <= l - 1) {
      push_if_verifies(out, gp, 1, remove_then_insert(w, u + 1, l - 1), l);
    }
    if (u >= l + 1 && gp.bottom_len() >= 2) {
      push_if_verifies(out, gp, 1, remove_then_insert(w, u - 1, l), l + 1);
    }
  }
  return out;
}

}  // namespace linvol
