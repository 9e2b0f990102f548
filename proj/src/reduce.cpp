#include "linvol/reduce.hpp"

#include <algorithm>
#include <functional>

#include "linvol/lp.hpp"

namespace linvol {

namespace {

constexpr LetterMask bit(LetterId id) { return LetterMask{1} << id; }

std::vector<LetterId> mask_letters(LetterMask m) {
  std::vector<LetterId> out;
  for (int i = 0; i < kMaxLetters; ++i)
    if (m & (LetterMask{1} << i)) out.push_back(static_cast<LetterId>(i));
  return out;
}

// Corner growth to the least valid right corners containing the forced
// positions. i2/i4 enter as inclusive caps (largest admissible cut values)
// and only ever decrease. nullopt when some forced position has a twin that
// can never sit in the right corner. A nonempty corner must be a proper
// subset of its row: the prefix-sum inequalities behind the decomposition
// live at interior indices only.
std::optional<std::pair<int, int>> corner_closure(const GenPerm& gp, int i1, int i3, int i2,
                                                  int i4) {
  const int l = gp.top_len(), n = gp.size();
  if (i2 < i1 || i4 < i3) return std::nullopt;
  if (i2 < l && i2 < 1) return std::nullopt;
  if (i4 < n && i4 < l + 1) return std::nullopt;
  int p2 = l, p4 = n;
  while (p2 > i2 || p4 > i4) {
    while (p2 > i2) {
      --p2;
      int t = gp.twin(p2);
      if (t < i1) continue;                       // pairs with the top-left corner
      if (t < i3) return std::nullopt;            // top middle, inside F2, or F3
      if (t < i4) {
        i4 = t;
        if (i4 < i3 || i4 < l + 1) return std::nullopt;
      }
    }
    while (p4 > i4) {
      --p4;
      int t = gp.twin(p4);
      if (t >= l) {
        if (t < i3) continue;                     // pairs with the bottom-left corner
        return std::nullopt;                      // bottom middle or inside F4
      }
      if (t < i1) return std::nullopt;            // diagonal into the top-left corner
      if (t < i2) {
        i2 = t;
        if (i2 < i1 || i2 < 1) return std::nullopt;
      }
    }
  }
  return std::make_pair(i2, i4);
}

DecompositionWitness build_witness(const GenPerm& gp, int i1, int i2, int i3, int i4,
                                   DecompositionWitness::Case tag) {
  const int l = gp.top_len(), n = gp.size();
  DecompositionWitness w;
  w.tag = tag;
  w.i1 = i1;
  w.i2 = i2;
  w.i3 = i3;
  w.i4 = i4;
  for (int p = 0; p < i1; ++p)
    (gp.twin(p) < l ? w.B : w.A).push_back(gp.word_at(p));
  for (int p = i4; p < n; ++p)
    (gp.twin(p) < l ? w.D : w.C).push_back(gp.word_at(p));
  std::sort(w.A.begin(), w.A.end());
  std::sort(w.B.begin(), w.B.end());
  std::sort(w.C.begin(), w.C.end());
  std::sort(w.D.begin(), w.D.end());
  return w;
}

using Case = DecompositionWitness::Case;

// Shared prefix machinery: walks the legal (i1, i3) pairs and hands each one
// to `probe` together with the natural corner caps. probe returns true to
// stop the whole scan.
void scan_left_corners(const GenPerm& gp,
                       const std::function<bool(int i1, int i3, int i2cap, int i4cap)>& probe) {
  const int l = gp.top_len(), n = gp.size();
  LetterMask seen_top = 0;
  for (int i1 = 0; i1 <= l - 1; ++i1) {  // a nonempty corner never fills its row
    if (i1 > 0) {
      LetterId c = gp.word_at(i1 - 1);
      if (seen_top & bit(c)) break;  // repeated letter in the corner
      seen_top |= bit(c);
    }
    int min_tb = l;    // forced top-right inclusions from F1
    int need_i3 = l;   // bottom twins of F1 must land in F3
    bool bad_i1 = false;
    for (int p = 0; p < i1 && !bad_i1; ++p) {
      int t = gp.twin(p);
      if (t < l) {
        if (t < i1) bad_i1 = true;  // cannot happen with distinct prefix; kept as guard
        min_tb = std::min(min_tb, t);
      } else {
        need_i3 = std::max(need_i3, t + 1);
      }
    }
    if (bad_i1) continue;
    LetterMask seen_bot = 0;
    int min_tc = n;
    for (int i3 = l; i3 <= n - 1; ++i3) {
      if (i3 > l) {
        LetterId c = gp.word_at(i3 - 1);
        if (seen_bot & bit(c)) break;
        seen_bot |= bit(c);
        int t = gp.twin(i3 - 1);
        if (t < l) {
          if (t >= i1) break;  // F3 letter pairing into the top middle/right
        } else {
          min_tc = std::min(min_tc, t);
        }
      }
      if (i3 < need_i3) continue;
      if (probe(i1, i3, min_tb, min_tc)) return;
    }
  }
}

std::optional<DecompositionWitness> scan_reduction(const GenPerm& gp) {
  const int l = gp.top_len(), n = gp.size();
  std::optional<DecompositionWitness> found;
  scan_left_corners(gp, [&](int i1, int i3, int i2cap, int i4cap) {
    auto res = corner_closure(gp, i1, i3, i2cap, i4cap);
    if (!res) return false;
    auto [i2, i4] = *res;
    bool left_top = i1 > 0, left_bot = i3 > l;
    if (left_top && left_bot) {
      if (i2 < l && i4 < n) {
        found = build_witness(gp, i1, i2, i3, i4, Case::I);
        return true;
      }
      if (i2 == l && i4 == n) {
        found = build_witness(gp, i1, i2, i3, i4, Case::III);
        return true;
      }
      auto grown = corner_closure(gp, i1, i3, std::min(i2, l - 1), std::min(i4, n - 1));
      if (grown) {
        found = build_witness(gp, i1, grown->first, i3, grown->second, Case::I);
        return true;
      }
      return false;
    }
    if (left_top != left_bot) {
      // exactly one empty corner allowed only on the left, so both right
      // corners must be nonempty
      if (i2 == l || i4 == n) {
        auto grown = corner_closure(gp, i1, i3, std::min(i2, l - 1), std::min(i4, n - 1));
        if (!grown) return false;
        i2 = grown->first;
        i4 = grown->second;
      }
      found = build_witness(gp, i1, i2, i3, i4, Case::II);
      return true;
    }
    // both left corners empty: need both right corners nonempty
    auto grown = corner_closure(gp, i1, i3, l - 1, n - 1);
    if (!grown) return false;
    found = build_witness(gp, i1, grown->first, i3, grown->second, Case::III);
    return true;
  });
  return found;
}

}  // namespace

std::string DecompositionWitness::case_name() const {
  switch (tag) {
    case Case::I: return "i";
    case Case::II: return "ii";
    case Case::III: return "iii";
    case Case::Dyn1: return "dyn1";
    case Case::Dyn2: return "dyn2";
  }
  return "?";
}

std::optional<DecompositionWitness> find_reduction(const GenPerm& gp) {
  if (!gp.convention_ok())
    throw ConventionError("find_reduction requires the linear-involution convention");
  return scan_reduction(gp);
}

bool is_strongly_irreducible(const GenPerm& gp) {
  const int l = gp.top_len(), n = gp.size();
  bool decomposable = false;
  scan_left_corners(gp, [&](int i1, int i3, int i2cap, int i4cap) {
    if (i1 == 0 && i3 == l) {
      if (corner_closure(gp, i1, i3, l - 1, n) || corner_closure(gp, i1, i3, l, n - 1))
        decomposable = true;
      return decomposable;
    }
    if (corner_closure(gp, i1, i3, i2cap, i4cap)) decomposable = true;
    return decomposable;
  });
  return !decomposable;
}

bool witness_replays(const GenPerm& gp_in, const DecompositionWitness& w) {
  const GenPerm* g = &gp_in;
  GenPerm flipped({}, {0, 0}, 1);  // placeholder; replaced below if needed
  if (w.switched) {
    std::vector<LetterId> word(gp_in.word().begin() + gp_in.top_len(), gp_in.word().end());
    word.insert(word.end(), gp_in.word().begin(), gp_in.word().begin() + gp_in.top_len());
    std::vector<std::string> names;
    for (int i = 0; i < gp_in.d(); ++i) names.push_back(gp_in.letter_name(static_cast<LetterId>(i)));
    flipped = GenPerm(std::move(names), std::move(word), gp_in.bottom_len());
    g = &flipped;
  }
  const GenPerm& gp = *g;
  const int l = gp.top_len(), n = gp.size();
  if (w.i1 < 0 || w.i1 > w.i2 || w.i2 > l || w.i3 < l || w.i3 > w.i4 || w.i4 > n) return false;
  // a nonempty corner never fills its row
  if (w.i1 > l - 1 || w.i2 < 1 || w.i3 > n - 1 || w.i4 < l + 1) return false;

  auto corner_set = [&](int lo, int hi, std::optional<LetterMask>& out) {
    LetterMask m = 0;
    for (int p = lo; p < hi; ++p) {
      LetterMask b = bit(gp.word_at(p));
      if (m & b) {
        out = std::nullopt;
        return;
      }
      m |= b;
    }
    out = m;
  };
  std::optional<LetterMask> f1, f2, f3, f4;
  corner_set(0, w.i1, f1);
  corner_set(w.i2, l, f2);
  corner_set(l, w.i3, f3);
  corner_set(w.i4, n, f4);
  if (!f1 || !f2 || !f3 || !f4) return false;

  auto as_mask = [](const std::vector<LetterId>& v) {
    LetterMask m = 0;
    for (LetterId id : v) m |= bit(id);
    return m;
  };
  LetterMask A = as_mask(w.A), B = as_mask(w.B), C = as_mask(w.C), D = as_mask(w.D);
  if ((A & B) || (A & C) || (A & D) || (B & C) || (B & D) || (C & D)) return false;

  if (w.tag == Case::Dyn1 && w.i2 == l && w.i4 == n) {
    // prefix form: both left corners carry the same once-per-row set
    return *f1 == A && *f3 == A && A != 0 && w.i1 < l && w.i3 < n;
  }
  if (w.tag == Case::Dyn1 && w.i1 == 0 && w.i3 == l && w.i2 < l) {
    if (w.A.empty() && w.B.empty() && w.C.empty())
      return *f2 == D && *f4 == D && D != 0 && w.i2 > 0 && w.i4 > l;
  }

  if (*f1 != (A | B) || *f2 != (D | B) || *f3 != (A | C) || *f4 != (D | C)) return false;
  // per-position twin structure
  for (int p = 0; p < w.i1; ++p) {
    int t = gp.twin(p);
    bool inF2 = t >= w.i2 && t < l, inF3 = t >= l && t < w.i3;
    if (!(inF2 || inF3)) return false;
  }
  for (int p = w.i4; p < n; ++p) {
    int t = gp.twin(p);
    bool inF2 = t >= w.i2 && t < l, inF3 = t >= l && t < w.i3;
    if (!(inF2 || inF3)) return false;
  }
  if (w.tag == Case::Dyn2) {
    if (!w.alpha0) return false;
    if (w.i3 >= n || gp.word_at(w.i3) != *w.alpha0) return false;
    if (gp.twin(w.i3) != w.i4 - 1) return false;
    if (w.B.empty()) return false;
    return true;
  }
  int empty = (w.i1 == 0) + (w.i2 == l) + (w.i3 == l) + (w.i4 == n);
  switch (w.tag) {
    case Case::I: return empty == 0;
    case Case::II: return empty == 1 && (w.i1 == 0 || w.i3 == l);
    case Case::III:
      return empty == 2 && ((w.i1 == 0 && w.i3 == l) || (w.i2 == l && w.i4 == n));
    case Case::Dyn1: {
      // complete split form
      if (w.i2 != w.i1 || w.i4 != w.i3) return false;
      bool left_nonempty = w.i1 > 0 || w.i3 > l;
      bool right_nonempty = w.i1 < l || w.i3 < n;
      return left_nonempty && right_nonempty;
    }
    default: return false;
  }
}

namespace {

GenPerm flip_rows(const GenPerm& gp) {
  std::vector<LetterId> word(gp.word().begin() + gp.top_len(), gp.word().end());
  word.insert(word.end(), gp.word().begin(), gp.word().begin() + gp.top_len());
  std::vector<std::string> names;
  names.reserve(gp.d());
  for (int i = 0; i < gp.d(); ++i) names.push_back(gp.letter_name(static_cast<LetterId>(i)));
  return GenPerm(std::move(names), std::move(word), gp.bottom_len());
}

// Parameter-free blocking decompositions (case 1 of dynamical reducibility):
// matching once-per-row prefix blocks, matching suffix blocks, or a complete
// two-block split of both rows.
std::optional<DecompositionWitness> find_dyn1(const GenPerm& gp) {
  const int l = gp.top_len(), n = gp.size();

  // prefix form
  {
    std::vector<LetterMask> top(l + 1, 0), bot(n - l + 1, 0);
    bool ok = true;
    for (int i = 1; i <= l && ok; ++i) {
      LetterMask b = bit(gp.word_at(i - 1));
      if (top[i - 1] & b) ok = false;
      top[i] = top[i - 1] | b;
      top[i] = ok ? top[i] : 0;
    }
    int top_max = 0;
    for (int i = 1; i <= l; ++i)
      if (top[i]) top_max = i;
    LetterMask seen = 0;
    for (int j = 1; j <= n - l - 1; ++j) {  // proper bottom prefix
      LetterMask b = bit(gp.word_at(l + j - 1));
      if (seen & b) break;
      seen |= b;
      for (int i = 1; i <= std::min(top_max, l - 1); ++i) {
        if (top[i] == seen) {
          DecompositionWitness w;
          w.tag = Case::Dyn1;
          w.i1 = i;
          w.i2 = l;
          w.i3 = l + j;
          w.i4 = n;
          w.A = mask_letters(seen);
          return w;
        }
      }
    }
  }
  // suffix form (mirror of the prefix form)
  {
    LetterMask seen_top = 0;
    std::vector<LetterMask> suff(l + 1, 0);
    int top_min = l;
    for (int i2 = l - 1; i2 >= 1; --i2) {  // proper top suffix [i2, l)
      LetterMask b = bit(gp.word_at(i2));
      if (seen_top & b) break;
      seen_top |= b;
      suff[i2] = seen_top;
      top_min = i2;
    }
    LetterMask seen_bot = 0;
    for (int i4 = n - 1; i4 >= l + 1; --i4) {
      LetterMask b = bit(gp.word_at(i4));
      if (seen_bot & b) break;
      seen_bot |= b;
      for (int i2 = top_min; i2 <= l - 1; ++i2) {
        if (suff[i2] == seen_bot) {
          DecompositionWitness w;
          w.tag = Case::Dyn1;
          w.i1 = 0;
          w.i2 = i2;
          w.i3 = l;
          w.i4 = i4;
          w.D = mask_letters(seen_bot);
          return w;
        }
      }
    }
  }
  // complete split form
  {
    AlphabetSplit sp = gp.split();
    std::vector<char> pre_ok_top(l + 1, 0), suf_ok_top(l + 1, 0);
    std::vector<LetterMask> pre_mask_top(l + 1, 0);
    {
      LetterMask m = 0;
      bool ok = true;
      pre_ok_top[0] = 1;
      for (int i = 1; i <= l; ++i) {
        LetterMask b = bit(gp.word_at(i - 1));
        if (m & b) ok = false;
        m |= b;
        pre_ok_top[i] = ok;
        pre_mask_top[i] = m;
      }
      m = 0;
      ok = true;
      suf_ok_top[l] = 1;
      for (int i = l - 1; i >= 0; --i) {
        LetterMask b = bit(gp.word_at(i));
        if (m & b) ok = false;
        m |= b;
        suf_ok_top[i] = ok;
      }
    }
    const int m_len = n - l;
    std::vector<char> pre_ok_bot(m_len + 1, 0), suf_ok_bot(m_len + 1, 0);
    std::vector<LetterMask> pre_mask_bot(m_len + 1, 0);
    {
      LetterMask m = 0;
      bool ok = true;
      pre_ok_bot[0] = 1;
      for (int j = 1; j <= m_len; ++j) {
        LetterMask b = bit(gp.word_at(l + j - 1));
        if (m & b) ok = false;
        m |= b;
        pre_ok_bot[j] = ok;
        pre_mask_bot[j] = m;
      }
      m = 0;
      ok = true;
      suf_ok_bot[m_len] = 1;
      for (int j = m_len - 1; j >= 0; --j) {
        LetterMask b = bit(gp.word_at(l + j));
        if (m & b) ok = false;
        m |= b;
        suf_ok_bot[j] = ok;
      }
    }
    for (int i1 = 0; i1 <= l; ++i1) {
      if (!pre_ok_top[i1] || !suf_ok_top[i1]) continue;
      for (int j = 0; j <= m_len; ++j) {
        if (!pre_ok_bot[j] || !suf_ok_bot[j]) continue;
        int i3 = l + j;
        if (i1 == 0 && i3 == l) continue;        // left block empty
        if (i1 == l && i3 == n) continue;        // right block empty
        if ((pre_mask_top[i1] & sp.mask01) != (pre_mask_bot[j] & sp.mask01)) continue;
        DecompositionWitness w;
        w.tag = Case::Dyn1;
        w.i1 = i1;
        w.i2 = i1;
        w.i3 = i3;
        w.i4 = i3;
        w.A = mask_letters(pre_mask_top[i1] & sp.mask01);
        w.B = sp.a0;
        w.C = sp.a1;
        w.D = mask_letters(sp.mask01 & ~(pre_mask_top[i1] & sp.mask01));
        return w;
      }
    }
  }
  return std::nullopt;
}

struct Band {
  LetterMask bmask = 0, cmask = 0;
  LetterId alpha0 = 0;
  DecompositionWitness witness;
};

// Bracket decompositions behind the length inequality (case 2). The (B, C,
// alpha0) triple is independent of the top-right cut, so one valid cut per
// (i1, i3, bracket) suffices.
void case2_bands(const GenPerm& gp, bool switched, std::vector<Band>& out) {
  const int l = gp.top_len(), n = gp.size();
  LetterMask seen_top = 0;
  for (int i1 = 1; i1 <= l; ++i1) {
    LetterId c = gp.word_at(i1 - 1);
    if (seen_top & bit(c)) break;
    seen_top |= bit(c);
    int min_tb = l, need_i3 = l;
    LetterMask bmask = 0;
    for (int p = 0; p < i1; ++p) {
      int t = gp.twin(p);
      if (t < l) {
        min_tb = std::min(min_tb, t);
        bmask |= bit(gp.word_at(p));
      } else {
        need_i3 = std::max(need_i3, t + 1);
      }
    }
    if (bmask == 0) continue;  // the bracket form needs a nonempty B
    LetterMask seen_bot = 0;
    std::vector<int> tc;
    LetterMask cmask = 0;
    for (int i3 = l; i3 <= n - 2; ++i3) {
      if (i3 > l) {
        LetterId cb = gp.word_at(i3 - 1);
        if (seen_bot & bit(cb)) break;
        seen_bot |= bit(cb);
        int t = gp.twin(i3 - 1);
        if (t < l) {
          if (t >= i1) break;
        } else {
          tc.push_back(t);
          cmask |= bit(cb);
        }
      }
      if (i3 < need_i3) continue;
      int a0t = gp.twin(i3);
      if (a0t <= i3) continue;  // not a same-row bracket
      int i4 = a0t + 1;
      // bottom-left twins must clear the bracket middle
      bool ok = true;
      for (int t : tc)
        if (t < i4) {
          ok = false;
          break;
        }
      if (!ok) continue;
      int i2 = min_tb;
      LetterMask seen_f4 = 0;
      for (int p = i4; p < n && ok; ++p) {
        LetterMask b = bit(gp.word_at(p));
        if (seen_f4 & b) ok = false;
        seen_f4 |= b;
        int t = gp.twin(p);
        if (t >= l) {
          if (t >= i3) ok = false;
        } else {
          if (t < i1) ok = false;
          i2 = std::min(i2, t);
        }
      }
      if (!ok || i2 < i1) continue;
      for (int p = i2; p < l && ok; ++p) {
        int t = gp.twin(p);
        if (t < i1) continue;
        if (t < i4) ok = false;  // top middle, inside F2, F3, or the bracket middle
      }
      if (!ok) continue;
      Band band;
      band.bmask = bmask;
      band.cmask = cmask;
      band.alpha0 = gp.word_at(i3);
      band.witness = build_witness(gp, i1, i2, i3, i4, Case::Dyn2);
      band.witness.alpha0 = band.alpha0;
      band.witness.switched = switched;
      bool dup = false;
      for (const Band& known : out)
        dup |= known.bmask == bmask && known.cmask == cmask && known.alpha0 == band.alpha0;
      if (!dup) out.push_back(std::move(band));
    }
  }
}

std::vector<Band> all_bands(const GenPerm& gp) {
  std::vector<Band> bands;
  case2_bands(gp, false, bands);
  case2_bands(flip_rows(gp), true, bands);
  return bands;
}

bool band_blocks(const Band& band, const std::vector<Rat>& lambda) {
  Rat sb(0), sc(0);
  for (LetterId id : mask_letters(band.bmask)) sb += lambda[id];
  for (LetterId id : mask_letters(band.cmask)) sc += lambda[id];
  return sc <= sb && sb <= lambda[band.alpha0] + sc;
}

}  // namespace

std::vector<DecompositionWitness> bracket_decompositions(const GenPerm& gp) {
  std::vector<DecompositionWitness> out;
  for (const Band& band : all_bands(gp)) out.push_back(band.witness);
  return out;
}

void check_balance(const GenPerm& gp, const std::vector<Rat>& lambda) {
  if (static_cast<int>(lambda.size()) != gp.d())
    throw BalanceError("length vector has wrong size");
  for (const Rat& v : lambda)
    if (v <= 0) throw BalanceError("lengths must be positive");
  Rat top(0), bot(0);
  for (int p = 0; p < gp.size(); ++p)
    (p < gp.top_len() ? top : bot) += lambda[gp.word_at(p)];
  if (top != bot)
    throw BalanceError("row sums differ: top " + rat_str(top) + " vs bottom " + rat_str(bot));
}

AdmissibilityResult is_admissible(const GenPerm& gp, const std::vector<Rat>& lambda) {
  if (!gp.convention_ok())
    throw ConventionError("admissibility requires the linear-involution convention");
  check_balance(gp, lambda);
  AdmissibilityResult res;
  if (auto w = find_dyn1(gp)) {
    res.admissible = false;
    res.blocking = std::move(w);
    return res;
  }
  for (const Band& band : all_bands(gp)) {
    if (band_blocks(band, lambda)) {
      res.admissible = false;
      res.blocking = band.witness;
      return res;
    }
  }
  return res;
}

std::vector<Rat> generic_lambda(const GenPerm& gp) {
  AlphabetSplit sp = gp.split();
  std::vector<Rat> lambda(gp.d(), Rat(1));
  Rat a0(static_cast<int>(sp.a0.size())), a1(static_cast<int>(sp.a1.size()));
  for (LetterId id : sp.a0) lambda[id] = std::max(a1, Rat(1));
  for (LetterId id : sp.a1) lambda[id] = std::max(a0, Rat(1));
  // distinct tweaks keep the vector away from the coincidences that make
  // polygons degenerate; a01 letters do not disturb the balance
  Rat q(1, 64 * (gp.d() + 1));
  int k = 1;
  for (LetterId id : sp.a01) lambda[id] += Rat(k++) * q;
  if (!sp.a0.empty()) {
    Rat ds(0), gs(0);
    int j = 1;
    for (LetterId id : sp.a0) {
      Rat dv = Rat(j++) * q;
      lambda[id] += dv;
      ds += dv;
    }
    std::vector<Rat> raw;
    for (std::size_t i = 0; i < sp.a1.size(); ++i) raw.push_back(Rat(static_cast<int>(i) + 1) * q);
    for (const Rat& r : raw) gs += r;
    for (std::size_t i = 0; i < sp.a1.size(); ++i) lambda[sp.a1[i]] += raw[i] * ds / gs;
  }
  check_balance(gp, lambda);
  return lambda;
}

std::vector<Rat> random_lambda(const GenPerm& gp, const std::function<std::uint64_t()>& rng) {
  const Rat den = Rat(Int(1) << 62);
  std::vector<Rat> lambda(gp.d());
  for (int i = 0; i < gp.d(); ++i) {
    std::uint64_t v = rng() & ((std::uint64_t{1} << 62) - 1);
    lambda[i] = Rat(Int(v) + 1) / den;
  }
  Rat top(0), bot(0);
  for (int p = 0; p < gp.size(); ++p)
    (p < gp.top_len() ? top : bot) += lambda[gp.word_at(p)];
  if (top != bot) {
    AlphabetSplit sp = gp.split();
    if (top > bot) {
      if (sp.a1.empty()) throw ConventionError("cannot balance lengths without a bottom pair");
      lambda[sp.a1.front()] += (top - bot) / 2;
    } else {
      if (sp.a0.empty()) throw ConventionError("cannot balance lengths without a top pair");
      lambda[sp.a0.front()] += (bot - top) / 2;
    }
  }
  check_balance(gp, lambda);
  return lambda;
}

DynIrreducibilityResult is_dynamically_irreducible(const GenPerm& gp) {
  if (!gp.convention_ok())
    throw ConventionError("dynamical irreducibility requires the convention");
  DynIrreducibilityResult res;
  if (auto w = find_dyn1(gp)) {
    res.dynamically_irreducible = false;
    res.blocking = std::move(w);
    return res;
  }
  std::vector<Band> bands = all_bands(gp);
  if (bands.empty()) {
    res.dynamically_irreducible = true;
    res.witness_lambda = generic_lambda(gp);
    return res;
  }
  // randomized fast path
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(gp.size()) << 32);
  auto rng = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Rat> lambda = random_lambda(gp, rng);
    bool blocked = false;
    for (const Band& band : bands) blocked |= band_blocks(band, lambda);
    if (!blocked) {
      res.dynamically_irreducible = true;
      res.witness_lambda = std::move(lambda);
      return res;
    }
  }
  // exact decision: one strict side per band, recursively with LP pruning
  std::vector<int> choice(bands.size(), -1);
  std::function<std::optional<std::vector<Rat>>(std::size_t)> descend =
      [&](std::size_t depth) -> std::optional<std::vector<Rat>> {
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
      for (int p = 0; p < gp.size(); ++p) {
        int sign = p < gp.top_len() ? 1 : -1;
        bal.push_back({var[gp.word_at(p)], Rat(sign)});
      }
      lp.add_constraint(bal, '=', Rat(0));
    }
    for (int i = 0; i < gp.d(); ++i) lp.add_constraint({{var[i], Rat(1)}, {s, Rat(-1)}}, '>', Rat(0));
    for (std::size_t k = 0; k < depth; ++k) {
      const Band& band = bands[k];
      std::vector<std::pair<int, Rat>> row;
      for (LetterId id : mask_letters(band.cmask)) row.push_back({var[id], Rat(1)});
      for (LetterId id : mask_letters(band.bmask)) row.push_back({var[id], Rat(-1)});
      if (choice[k] == 0) {
        // strictly below the band: sum(C) - sum(B) >= s
        row.push_back({s, Rat(-1)});
        lp.add_constraint(row, '>', Rat(0));
      } else {
        // strictly above: sum(B) - sum(C) - lambda_a0 >= s
        for (auto& [v, c] : row) c = -c;
        row.push_back({var[band.alpha0], Rat(-1)});
        row.push_back({s, Rat(-1)});
        lp.add_constraint(row, '>', Rat(0));
      }
    }
    lp.set_objective({{s, Rat(1)}});
    auto sol = lp.solve(Rat(0));
    if (sol.status != ExactLp::Status::Optimal || sol.objective <= 0) return std::nullopt;
    if (depth == bands.size()) {
      std::vector<Rat> lambda(sol.x.begin(), sol.x.begin() + gp.d());
      return lambda;
    }
    for (int side : {0, 1}) {
      choice[depth] = side;
      if (auto got = descend(depth + 1)) return got;
    }
    return std::nullopt;
  };
  if (auto lambda = descend(0)) {
    AdmissibilityResult verify = is_admissible(gp, *lambda);
    if (!verify.admissible) throw InternalError("dyn-irreducibility witness failed replay");
    res.dynamically_irreducible = true;
    res.witness_lambda = std::move(*lambda);
    return res;
  }
  res.dynamically_irreducible = false;
  return res;
}

}  // namespace linvol
