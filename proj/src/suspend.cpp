#include "linvol/suspend.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "linvol/lp.hpp"
#include "linvol/rauzy.hpp"
#include "linvol/reduce.hpp"

namespace linvol {

namespace {

// prefix sums of the imaginary parts along one row; out[k] = sum of the
// first k entries
std::vector<Rat> prefix_sums(const GenPerm& gp, const std::vector<Rat>& per_letter, int row) {
  int begin = row == 0 ? 0 : gp.top_len();
  int end = row == 0 ? gp.top_len() : gp.size();
  std::vector<Rat> out(end - begin + 1, Rat(0));
  for (int p = begin; p < end; ++p) out[p - begin + 1] = out[p - begin] + per_letter[gp.word_at(p)];
  return out;
}

}  // namespace

bool is_pseudo_suspension(const GenPerm& gp, const PseudoSuspension& ps) {
  if (static_cast<int>(ps.tau.size()) != gp.d()) return false;
  auto top = prefix_sums(gp, ps.tau, 0);
  auto bot = prefix_sums(gp, ps.tau, 1);
  for (std::size_t k = 1; k < top.size(); ++k)
    if (top[k] < 0) return false;
  for (std::size_t k = 1; k < bot.size(); ++k)
    if (bot[k] > 0) return false;
  return top.back() == 0 && bot.back() == 0;
}

bool is_strict_pseudo_suspension(const GenPerm& gp, const PseudoSuspension& ps) {
  if (!is_pseudo_suspension(gp, ps)) return false;
  auto top = prefix_sums(gp, ps.tau, 0);
  auto bot = prefix_sums(gp, ps.tau, 1);
  for (std::size_t k = 1; k + 1 < top.size(); ++k)
    if (top[k] == 0) return false;
  for (std::size_t k = 1; k + 1 < bot.size(); ++k)
    if (bot[k] == 0) return false;
  return true;
}

std::vector<Rat> mirror_pseudo_solution(const std::vector<LetterId>& seq) {
  // derive a true permutation: first occurrences left to right against first
  // occurrences of the reversed sequence
  std::array<int, kMaxLetters> rank0, rank1;
  rank0.fill(0);
  rank1.fill(0);
  int next = 1;
  for (LetterId id : seq)
    if (!rank0[id]) rank0[id] = next++;
  next = 1;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it)
    if (!rank1[*it]) rank1[*it] = next++;
  std::vector<Rat> tau(kMaxLetters, Rat(0));
  for (LetterId id : seq) tau[id] = Rat(rank1[id] - rank0[id]);
  return tau;
}

PseudoSuspension masur_veech_pseudo(const GenPerm& gp) {
  if (!gp.convention_ok())
    throw ConventionError("the Masur-Veech pseudo-suspension needs the convention");
  AlphabetSplit sp = gp.split();
  PseudoSuspension ps;
  ps.tau.assign(gp.d(), Rat(0));

  // once-per-row letters: ranks within their own subsequence of each row
  {
    int r0 = 1, r1 = 1;
    std::array<int, kMaxLetters> top_rank{}, bot_rank{};
    for (int p = 0; p < gp.top_len(); ++p) {
      LetterId id = gp.word_at(p);
      if (sp.mask01 & (LetterMask{1} << id)) top_rank[id] = r0++;
    }
    for (int p = gp.top_len(); p < gp.size(); ++p) {
      LetterId id = gp.word_at(p);
      if (sp.mask01 & (LetterMask{1} << id)) bot_rank[id] = r1++;
    }
    for (LetterId id : sp.a01) ps.tau[id] = Rat(bot_rank[id] - top_rank[id]);
  }
  // doubled letters: mirror construction per row, negated on the bottom
  {
    std::vector<LetterId> seq;
    for (int p = 0; p < gp.top_len(); ++p) {
      LetterId id = gp.word_at(p);
      if (sp.mask0 & (LetterMask{1} << id)) seq.push_back(id);
    }
    if (!seq.empty()) {
      auto tau = mirror_pseudo_solution(seq);
      for (LetterId id : sp.a0) ps.tau[id] = tau[id];
    }
    seq.clear();
    for (int p = gp.top_len(); p < gp.size(); ++p) {
      LetterId id = gp.word_at(p);
      if (sp.mask1 & (LetterMask{1} << id)) seq.push_back(id);
    }
    if (!seq.empty()) {
      auto tau = mirror_pseudo_solution(seq);
      for (LetterId id : sp.a1) ps.tau[id] = -tau[id];
    }
  }
  if (!is_pseudo_suspension(gp, ps))
    throw InternalError("Masur-Veech construction failed its contract");
  return ps;
}

namespace {

// Shared LP: maximize the margin t of the sign conditions on the proper
// prefix sums. `row_sums_zero` distinguishes the pseudo-suspension system
// (both row sums vanish) from the suspension system (row sums merely agree).
std::optional<std::vector<Rat>> imag_part_lp(const GenPerm& gp, bool row_sums_zero) {
  const int l = gp.top_len(), n = gp.size();
  ExactLp lp;
  std::vector<int> var(gp.d());
  for (int i = 0; i < gp.d(); ++i) var[i] = lp.add_var(Rat(-1), Rat(1));
  int t = lp.add_var(Rat(-1), Rat(1));
  std::vector<std::pair<int, Rat>> acc;
  auto add_prefix_rows = [&](int begin, int end, bool top) {
    acc.clear();
    for (int p = begin; p < end - 1; ++p) {
      bool merged = false;
      for (auto& [v, c] : acc)
        if (v == var[gp.word_at(p)]) {
          c += 1;
          merged = true;
        }
      if (!merged) acc.push_back({var[gp.word_at(p)], Rat(1)});
      auto row = acc;
      row.push_back({t, top ? Rat(-1) : Rat(1)});
      lp.add_constraint(row, top ? '>' : '<', Rat(0));
    }
  };
  add_prefix_rows(0, l, true);
  add_prefix_rows(l, n, false);
  auto row_sum = [&](int begin, int end) {
    std::vector<std::pair<int, Rat>> sum;
    for (int p = begin; p < end; ++p) {
      bool merged = false;
      for (auto& [v, c] : sum)
        if (v == var[gp.word_at(p)]) {
          c += 1;
          merged = true;
        }
      if (!merged) sum.push_back({var[gp.word_at(p)], Rat(1)});
    }
    return sum;
  };
  if (row_sums_zero) {
    lp.add_constraint(row_sum(0, l), '=', Rat(0));
    lp.add_constraint(row_sum(l, n), '=', Rat(0));
  } else {
    auto top = row_sum(0, l);
    for (auto& [v, c] : row_sum(l, n)) {
      bool merged = false;
      for (auto& [tv, tc] : top)
        if (tv == v) {
          tc -= c;
          merged = true;
        }
      if (!merged) top.push_back({v, -c});
    }
    lp.add_constraint(top, '=', Rat(0));
  }
  lp.set_objective({{t, Rat(1)}});
  auto res = lp.solve(Rat(0));
  if (res.status != ExactLp::Status::Optimal || res.objective <= 0) return std::nullopt;
  return std::vector<Rat>(res.x.begin(), res.x.begin() + gp.d());
}

}  // namespace

std::optional<PseudoSuspension> strict_pseudo(const GenPerm& gp) {
  auto tau = imag_part_lp(gp, true);
  if (!tau) return std::nullopt;
  PseudoSuspension ps{std::move(*tau)};
  if (!is_strict_pseudo_suspension(gp, ps))
    throw InternalError("strict pseudo-suspension failed validation");
  return ps;
}

bool is_suspension(const GenPerm& gp, const SuspensionData& zeta) {
  if (static_cast<int>(zeta.re.size()) != gp.d() || static_cast<int>(zeta.im.size()) != gp.d())
    return false;
  for (const Rat& r : zeta.re)
    if (r <= 0) return false;
  auto top = prefix_sums(gp, zeta.im, 0);
  auto bot = prefix_sums(gp, zeta.im, 1);
  for (std::size_t k = 1; k + 1 < top.size(); ++k)
    if (top[k] <= 0) return false;
  for (std::size_t k = 1; k + 1 < bot.size(); ++k)
    if (bot[k] >= 0) return false;
  if (top.back() != bot.back()) return false;
  auto rtop = prefix_sums(gp, zeta.re, 0);
  auto rbot = prefix_sums(gp, zeta.re, 1);
  return rtop.back() == rbot.back();
}

std::optional<SuspensionData> find_suspension(const GenPerm& gp,
                                              std::optional<std::vector<Rat>> lambda) {
  std::vector<Rat> re = lambda ? std::move(*lambda) : generic_lambda(gp);
  check_balance(gp, re);
  auto tau = imag_part_lp(gp, false);
  if (!tau) return std::nullopt;
  SuspensionData zeta{std::move(re), std::move(*tau)};
  if (!is_suspension(gp, zeta)) throw InternalError("suspension failed validation");
  return zeta;
}

namespace {

using Pt = std::pair<Rat, Rat>;

Rat cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

// Any common point of the two closed segments that is not in `allowed`?
bool touch_beyond(const Pt& a1, const Pt& a2, const Pt& b1, const Pt& b2,
                  const std::vector<Pt>& allowed) {
  auto allowed_pt = [&](const Pt& p) {
    for (const Pt& q : allowed)
      if (p == q) return true;
    return false;
  };
  Rat o1 = cross(a1, a2, b1), o2 = cross(a1, a2, b2);
  Rat o3 = cross(b1, b2, a1), o4 = cross(b1, b2, a2);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return true;  // proper crossing
  for (const Pt& e : {b1, b2})
    if (on_segment(a1, a2, e) && !allowed_pt(e)) return true;
  for (const Pt& e : {a1, a2})
    if (on_segment(b1, b2, e) && !allowed_pt(e)) return true;
  return false;
}

}  // namespace

Polygon polygon(const GenPerm& gp, const SuspensionData& zeta) {
  Polygon poly;
  const int l = gp.top_len(), n = gp.size();
  Pt cur{Rat(0), Rat(0)};
  poly.top.push_back(cur);
  for (int p = 0; p < l; ++p) {
    cur.first += zeta.re[gp.word_at(p)];
    cur.second += zeta.im[gp.word_at(p)];
    poly.top.push_back(cur);
  }
  cur = {Rat(0), Rat(0)};
  poly.bottom.push_back(cur);
  for (int p = l; p < n; ++p) {
    cur.first += zeta.re[gp.word_at(p)];
    cur.second += zeta.im[gp.word_at(p)];
    poly.bottom.push_back(cur);
  }
  // area between the two broken lines (they share both endpoints)
  Rat area(0);
  for (std::size_t i = 0; i + 1 < poly.top.size(); ++i)
    area += (poly.top[i + 1].first - poly.top[i].first) *
            (poly.top[i].second + poly.top[i + 1].second);
  for (std::size_t i = 0; i + 1 < poly.bottom.size(); ++i)
    area -= (poly.bottom[i + 1].first - poly.bottom[i].first) *
            (poly.bottom[i].second + poly.bottom[i + 1].second);
  poly.area = area / 2;

  std::vector<Pt> allowed = {poly.top.front(), poly.top.back()};
  poly.suitable = true;
  for (std::size_t i = 0; i + 1 < poly.top.size() && poly.suitable; ++i)
    for (std::size_t j = 0; j + 1 < poly.bottom.size() && poly.suitable; ++j)
      if (touch_beyond(poly.top[i], poly.top[i + 1], poly.bottom[j], poly.bottom[j + 1], allowed))
        poly.suitable = false;
  return poly;
}

namespace {

GenPerm flip_rows_named(const GenPerm& gp) {
  std::vector<LetterId> word(gp.word().begin() + gp.top_len(), gp.word().end());
  word.insert(word.end(), gp.word().begin(), gp.word().begin() + gp.top_len());
  std::vector<std::string> names;
  names.reserve(gp.d());
  for (int i = 0; i < gp.d(); ++i) names.push_back(gp.letter_name(static_cast<LetterId>(i)));
  return GenPerm(std::move(names), std::move(word), gp.bottom_len());
}

SuspensionData adjust_for_positive_t(const GenPerm& gp, const SuspensionData& zeta) {
  const int l = gp.top_len(), n = gp.size();
  LetterId w = gp.word_at(l - 1);   // last letter on top
  LetterId u = gp.word_at(n - 1);   // last letter on bottom
  int twin_last = gp.twin(n - 1);
  if (twin_last == l - 1)
    throw InternalError("sigma(l+m) = l admits no suspension, yet one validated");
  SuspensionData out = zeta;
  if (twin_last < l - 1) {
    // the last bottom letter also sits on top: shrinking its length keeps
    // the balance and every sign condition
    if (u == w) throw InternalError("twin bookkeeping is inconsistent");
    out.re[u] = zeta.re[w] / 2;
    // dodge the one length that would make the two final sides collinear
    if (out.re[u] * zeta.im[w] == zeta.im[u] * zeta.re[w]) out.re[u] = zeta.re[w] / 3;
    return out;
  }
  // both occurrences of u are on the bottom; re-solve the lengths so that
  // lambda_u stays below lambda_w * (t - q) / t with q the height of the
  // next-to-last bottom vertex
  Rat t(0);
  for (int p = 0; p < l; ++p) t += zeta.im[gp.word_at(p)];
  Rat q = t - zeta.im[u];
  if (q >= 0) throw InternalError("next-to-last bottom vertex must sit below the axis");
  Rat rmax = (t - q) / t;  // > 1
  // two passes that differ only in the sign forced on the cross product of
  // the two final sides, so they can never come out collinear
  for (int sign : {1, -1}) {
    ExactLp lp;
    std::vector<int> var(gp.d());
    for (int i = 0; i < gp.d(); ++i) var[i] = lp.add_var(Rat(0), Rat(1));
    int s = lp.add_var(Rat(-1), Rat(1));
    {
      std::vector<std::pair<int, Rat>> sum;
      for (int i = 0; i < gp.d(); ++i) sum.push_back({var[i], Rat(1)});
      lp.add_constraint(sum, '=', Rat(1));
    }
    {
      std::vector<std::pair<int, Rat>> bal;
      for (int p = 0; p < n; ++p) bal.push_back({var[gp.word_at(p)], Rat(p < l ? 1 : -1)});
      lp.add_constraint(bal, '=', Rat(0));
    }
    for (int i = 0; i < gp.d(); ++i)
      lp.add_constraint({{var[i], Rat(1)}, {s, Rat(-1)}}, '>', Rat(0));
    lp.add_constraint({{var[w], rmax}, {var[u], Rat(-1)}, {s, Rat(-1)}}, '>', Rat(0));
    lp.add_constraint({{var[u], Rat(sign) * zeta.im[w]}, {var[w], Rat(-sign) * zeta.im[u]},
                       {s, Rat(-1)}},
                      '>', Rat(0));
    lp.set_objective({{s, Rat(1)}});
    auto res = lp.solve(Rat(0));
    if (res.status == ExactLp::Status::Optimal && res.objective > 0) {
      for (int i = 0; i < gp.d(); ++i) out.re[i] = res.x[i];
      return out;
    }
  }
  throw InternalError("suitable-polygon length adjustment is infeasible");
}

}  // namespace

SuspensionData make_suitable(const GenPerm& gp, const SuspensionData& zeta) {
  if (!is_suspension(gp, zeta)) throw NoSuspensionError("input is not a suspension");
  if (polygon(gp, zeta).suitable) return zeta;
  Rat t(0);
  for (int p = 0; p < gp.top_len(); ++p) t += zeta.im[gp.word_at(p)];
  SuspensionData out;
  if (t > 0) {
    out = adjust_for_positive_t(gp, zeta);
  } else if (t < 0) {
    GenPerm flipped = flip_rows_named(gp);
    SuspensionData mirror = zeta;
    for (Rat& v : mirror.im) v = -v;
    SuspensionData adj = adjust_for_positive_t(flipped, mirror);
    out = adj;
    for (Rat& v : out.im) v = -v;
  } else {
    throw InternalError("zero-sum suspensions always define suitable polygons");
  }
  if (!is_suspension(gp, out) || !polygon(gp, out).suitable)
    throw InternalError("suitable-polygon adjustment failed");
  return out;
}

std::vector<Rat> heights(const GenPerm& gp, const SuspensionData& zeta) {
  if (!polygon(gp, zeta).suitable) throw NotSuitableError("heights need a suitable polygon");
  const int l = gp.top_len();
  auto s0 = prefix_sums(gp, zeta.im, 0);
  auto s1 = prefix_sums(gp, zeta.im, 1);
  std::vector<Rat> h(gp.d(), Rat(0));
  for (int p = 0; p < gp.size(); ++p) {
    int q = gp.twin(p);
    if (q < p) continue;
    LetterId id = gp.word_at(p);
    if (q < l) {
      h[id] = s0[p] + s0[q + 1];  // both on top
    } else if (p >= l) {
      h[id] = -(s1[p - l] + s1[q - l + 1]);  // both on bottom
    } else {
      h[id] = s0[p] - s1[q - l];  // translation pair
    }
    if (h[id] <= 0) throw InternalError("return times must be positive");
  }
  return h;
}

std::pair<GenPerm, SuspensionData> suspension_step(const GenPerm& gp, const SuspensionData& zeta) {
  if (!is_suspension(gp, zeta)) throw NoSuspensionError("input is not a suspension");
  LetterId top_last = gp.word_at(gp.top_len() - 1);
  LetterId bot_last = gp.word_at(gp.size() - 1);
  if (zeta.re[top_last] == zeta.re[bot_last])
    throw ConnectionError("the two rightmost lengths agree");
  int type = zeta.re[top_last] > zeta.re[bot_last] ? 0 : 1;
  auto next = r_eps(gp, type);
  if (!next) throw ConnectionError("the required combinatorial move is undefined");
  LetterId winner = type == 0 ? top_last : bot_last;
  LetterId loser = type == 0 ? bot_last : top_last;
  SuspensionData out = zeta;
  out.re[winner] -= zeta.re[loser];
  out.im[winner] -= zeta.im[loser];
  if (!is_suspension(*next, out))
    throw InternalError("suspension step left the suspension conditions");
  return {std::move(*next), std::move(out)};
}

SuspensionData geodesic_flow(const SuspensionData& zeta, const Rat& s) {
  if (s <= 0) throw OutOfRangeError("the flow parameter must be positive");
  SuspensionData out = zeta;
  for (Rat& v : out.re) v *= s;
  for (Rat& v : out.im) v /= s;
  return out;
}

namespace {

std::string rat_pair_json(const Rat& r) {
  return "\"" + boost::multiprecision::numerator(r).str() + "\",\"" +
         boost::multiprecision::denominator(r).str() + "\"";
}

}  // namespace

std::string suspension_json(const GenPerm& gp, const SuspensionData& zeta) {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < gp.d(); ++i) {
    if (i) os << ",";
    os << "\"" << gp.letter_name(static_cast<LetterId>(i)) << "\":[" << rat_pair_json(zeta.re[i])
       << "," << rat_pair_json(zeta.im[i]) << "]";
  }
  os << "}";
  return os.str();
}

std::string polygon_json(const Polygon& poly) {
  auto line = [](const std::vector<std::pair<Rat, Rat>>& pts) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) os << ",";
      os << "[\"" << rat_str(pts[i].first) << "\",\"" << rat_str(pts[i].second) << "\"]";
    }
    os << "]";
    return os.str();
  };
  std::ostringstream os;
  os << "{\"top\":" << line(poly.top) << ",\"bottom\":" << line(poly.bottom)
     << ",\"suitable\":" << (poly.suitable ? "true" : "false") << ",\"area\":\""
     << rat_str(poly.area) << "\"}";
  return os.str();
}

}  // namespace linvol
