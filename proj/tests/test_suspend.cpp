#include <functional>
#include <random>

#include "doctest.h"
#include "linvol/reduce.hpp"
#include "linvol/suspend.hpp"

using namespace linvol;

TEST_CASE("masur-veech values on a true permutation") {
  GenPerm gp = GenPerm::parse("A B C D / D C B A");
  auto ps = masur_veech_pseudo(gp);
  CHECK(ps.tau == std::vector<Rat>{Rat(3), Rat(1), Rat(-1), Rat(-3)});
  CHECK(is_pseudo_suspension(gp, ps));
}

TEST_CASE("mirror solution matches the worked sequence") {
  // sequence (A B C C D D A B) pairs to the true permutation (A B C D / B A D C)
  std::vector<LetterId> seq = {0, 1, 2, 2, 3, 3, 0, 1};
  auto tau = mirror_pseudo_solution(seq);
  CHECK(tau[0] == Rat(1));
  CHECK(tau[1] == Rat(-1));
  CHECK(tau[2] == Rat(1));
  CHECK(tau[3] == Rat(-1));
}

namespace {

void all_pairings(int k, std::vector<LetterId>& seq, std::vector<int>& open, int used,
                  const std::function<void(const std::vector<LetterId>&)>& yield) {
  if (static_cast<int>(seq.size()) == 2 * k) {
    yield(seq);
    return;
  }
  for (int id = 0; id < used; ++id)
    if (open[id]) {
      open[id] = 0;
      seq.push_back(static_cast<LetterId>(id));
      all_pairings(k, seq, open, used, yield);
      seq.pop_back();
      open[id] = 1;
    }
  if (used < k) {
    open.push_back(1);
    seq.push_back(static_cast<LetterId>(used));
    all_pairings(k, seq, open, used + 1, yield);
    seq.pop_back();
    open.pop_back();
  }
}

}  // namespace

TEST_CASE("mirror solution prefix characterization, brute force") {
  // over every pairing of up to 8 symbols: prefix sums are nonnegative and
  // vanish exactly where the pairing maps a prefix onto a matching suffix
  for (int k = 1; k <= 4; ++k) {
    std::vector<LetterId> seq;
    std::vector<int> open;
    all_pairings(k, seq, open, 0, [&](const std::vector<LetterId>& s) {
      auto tau = mirror_pseudo_solution(s);
      const int nn = 2 * k;
      std::vector<int> twin(nn, -1), first(k, -1);
      for (int i = 0; i < nn; ++i) {
        if (first[s[i]] < 0) {
          first[s[i]] = i;
        } else {
          twin[i] = first[s[i]];
          twin[first[s[i]]] = i;
        }
      }
      Rat sum(0);
      for (int i = 0; i < nn; ++i) {
        sum += tau[s[i]];
        CHECK(sum >= 0);
        bool mirror_closed = true;
        for (int j = 0; j <= i; ++j) mirror_closed &= twin[j] >= nn - 1 - i;
        CHECK((sum == 0) == mirror_closed);
      }
    });
  }
}

TEST_CASE("masur-veech output always validates") {
  for (int d = 2; d <= 4; ++d)
    for (const GenPerm& gp : enumerate_all(d, true))
      CHECK(is_pseudo_suspension(gp, masur_veech_pseudo(gp)));
}

TEST_CASE("strict pseudo-suspension equals strong irreducibility") {
  CHECK(strict_pseudo(GenPerm::parse("A B / B A")).has_value());
  CHECK_FALSE(strict_pseudo(GenPerm::parse("1 2 1 / 2 3 3 4 4")).has_value());
  for (int d = 2; d <= 4; ++d)
    for (const GenPerm& gp : enumerate_all(d, true))
      CHECK(strict_pseudo(gp).has_value() == is_strongly_irreducible(gp));
}

TEST_CASE("suspension existence equals irreducibility") {
  CHECK(find_suspension(GenPerm::parse("1 1 2 3 2 3 4 / 5 4 5 6 7 6 7")).has_value());
  CHECK_FALSE(find_suspension(GenPerm::parse("1 1 2 2 3 / 4 3 4")).has_value());
  for (int d = 2; d <= 4; ++d)
    for (const GenPerm& gp : enumerate_all(d, true))
      CHECK(find_suspension(gp).has_value() == !find_reduction(gp).has_value());
}

TEST_CASE("suspension existence is independent of the lengths") {
  std::mt19937_64 rng(23);
  auto draw = [&rng]() { return rng(); };
  int probed = 0;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    if (probed >= 12) break;
    bool expect = find_suspension(gp).has_value();
    for (int i = 0; i < 10; ++i)
      CHECK(find_suspension(gp, random_lambda(gp, draw)).has_value() == expect);
    ++probed;
  }
}

TEST_CASE("polygon of the two-letter suspension") {
  GenPerm gp = GenPerm::parse("A B / B A");
  SuspensionData zeta{{Rat(1), Rat(2)}, {Rat(1), Rat(-1)}};
  REQUIRE(is_suspension(gp, zeta));
  Polygon poly = polygon(gp, zeta);
  CHECK(poly.suitable);
  CHECK(poly.area == Rat(3));
  REQUIRE(poly.top.size() == 3);
  CHECK(poly.top[1] == std::pair<Rat, Rat>{Rat(1), Rat(1)});
  CHECK(poly.top[2] == std::pair<Rat, Rat>{Rat(3), Rat(0)});
  CHECK(poly.bottom[1] == std::pair<Rat, Rat>{Rat(2), Rat(-1)});
}

TEST_CASE("a crossing instance is detected and repaired") {
  GenPerm gp = GenPerm::parse("A B C B D / D E A C E");
  SuspensionData zeta{{Rat(1), Rat(1), Rat(1), Rat(9), Rat(1)},
                      {Rat(4), Rat(-2), Rat(1), Rat(-4), Rat(-2)}};
  REQUIRE(is_suspension(gp, zeta));
  Polygon bad = polygon(gp, zeta);
  CHECK_FALSE(bad.suitable);
  SuspensionData fixed = make_suitable(gp, zeta);
  CHECK(polygon(gp, fixed).suitable);
  CHECK(fixed.im == zeta.im);
  // idempotent on suitable inputs
  SuspensionData again = make_suitable(gp, fixed);
  CHECK(polygon(gp, again).suitable);
  CHECK(again.im == fixed.im);
}

TEST_CASE("make_suitable repairs random irreducible instances") {
  std::mt19937_64 rng(31);
  auto draw = [&rng]() { return rng(); };
  int done = 0;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    if (done >= 20) break;
    auto zeta = find_suspension(gp, random_lambda(gp, draw));
    if (!zeta) continue;
    auto fixed = make_suitable(gp, *zeta);
    CHECK(polygon(gp, fixed).suitable);
    CHECK(fixed.im == zeta->im);
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("make_suitable length re-solve when the last letter is doubled below") {
  // these words end their bottom row with a letter doubled in the bottom,
  // so the repair cannot just shrink one length; it re-solves all of them
  std::mt19937_64 rng(1234);
  auto draw = [&rng]() { return rng(); };
  int exercised = 0;
  for (const char* text : {"1 2 2 1 / 3 3 4 4", "1 2 2 3 1 / 3 4 4"}) {
    GenPerm gp = GenPerm::parse(text);
    REQUIRE(gp.twin(gp.size() - 1) >= gp.top_len());
    auto zeta = find_suspension(gp);
    REQUIRE(zeta.has_value());
    for (int tries = 0; tries < 400; ++tries) {
      SuspensionData z = *zeta;
      z.re = random_lambda(gp, draw);
      if (polygon(gp, z).suitable) continue;
      auto fixed = make_suitable(gp, z);
      CHECK(polygon(gp, fixed).suitable);
      CHECK(fixed.im == z.im);
      ++exercised;
      break;
    }
  }
  CHECK(exercised == 2);
}

TEST_CASE("suspension step chains preserve the validator and the area") {
  std::mt19937_64 rng(53);
  auto draw = [&rng]() { return rng(); };
  int chains = 0;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    auto zeta = find_suspension(gp, random_lambda(gp, draw));
    if (!zeta) continue;
    Rat area = polygon(gp, *zeta).area;
    GenPerm cur = gp;
    SuspensionData z = *zeta;
    for (int k = 0; k < 25; ++k) {
      try {
        auto [next, nz] = suspension_step(cur, z);
        cur = next;
        z = nz;
      } catch (const ConnectionError&) {
        break;
      }
      CHECK(is_suspension(cur, z));
      CHECK(polygon(cur, z).area == area);
    }
    if (++chains >= 10) break;
  }
  CHECK(chains == 10);
}

TEST_CASE("geodesic flow rejects nonpositive scale") {
  GenPerm gp = GenPerm::parse("A B / B A");
  SuspensionData zeta{{Rat(1), Rat(2)}, {Rat(1), Rat(-1)}};
  CHECK_THROWS_AS(geodesic_flow(zeta, Rat(0)), OutOfRangeError);
  CHECK_THROWS_AS(geodesic_flow(zeta, Rat(-2)), OutOfRangeError);
}

TEST_CASE("heights of the two-letter suspension and the area identity") {
  GenPerm gp = GenPerm::parse("A B / B A");
  SuspensionData zeta{{Rat(1), Rat(2)}, {Rat(1), Rat(-1)}};
  auto h = heights(gp, zeta);
  CHECK(h[0] == Rat(1));
  CHECK(h[1] == Rat(1));
  CHECK(zeta.re[0] * h[0] + zeta.re[1] * h[1] == polygon(gp, zeta).area);
}

TEST_CASE("classical heights formula on true permutations") {
  for (const GenPerm& gp : enumerate_all(3, true)) {
    if (!gp.is_true_permutation() || find_reduction(gp)) continue;
    auto lambda = generic_lambda(gp);
    auto ps = masur_veech_pseudo(gp);
    SuspensionData zeta{lambda, ps.tau};
    REQUIRE(is_suspension(gp, zeta));
    auto h = heights(gp, zeta);
    // h_a = sum_{pi0(b) < pi0(a)} Im z_b - sum_{pi1(b) < pi1(a)} Im z_b
    const int l = gp.top_len();
    for (int p = 0; p < l; ++p) {
      LetterId a = gp.word_at(p);
      Rat want(0);
      for (int j = 0; j < p; ++j) want += zeta.im[gp.word_at(j)];
      for (int j = l; j < gp.twin(p); ++j) want -= zeta.im[gp.word_at(j)];
      CHECK(h[a] == want);
    }
  }
}

TEST_CASE("area identity on random suitable suspensions") {
  std::mt19937_64 rng(37);
  auto draw = [&rng]() { return rng(); };
  int done = 0;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    auto zeta = find_suspension(gp, random_lambda(gp, draw));
    if (!zeta) continue;
    auto fixed = make_suitable(gp, *zeta);
    auto h = heights(gp, fixed);
    Rat sum(0);
    for (int i = 0; i < gp.d(); ++i) sum += fixed.re[i] * h[i];
    CHECK(sum == polygon(gp, fixed).area);
    if (++done >= 25) break;
  }
  CHECK(done == 25);
}

TEST_CASE("suspension step on the classical example") {
  GenPerm gp = GenPerm::parse("A B C D / D C B A");
  SuspensionData zeta{{Rat(2), Rat(1), Rat(1), Rat(3)}, {Rat(3), Rat(1), Rat(-1), Rat(-3)}};
  REQUIRE(is_suspension(gp, zeta));
  auto [next, nz] = suspension_step(gp, zeta);
  CHECK(next.str() == "A B C D / D A C B");
  CHECK(nz.re[3] == Rat(1));   // zeta_D - zeta_A, real part
  CHECK(nz.im[3] == Rat(-6));  // and imaginary part
  CHECK(nz.re[0] == zeta.re[0]);
  CHECK(polygon(next, nz).area == polygon(gp, zeta).area);
}

TEST_CASE("suspension step and geodesic flow preserve area") {
  std::mt19937_64 rng(41);
  auto draw = [&rng]() { return rng(); };
  int done = 0;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    auto zeta = find_suspension(gp, random_lambda(gp, draw));
    if (!zeta) continue;
    Rat area = polygon(gp, *zeta).area;
    try {
      auto [next, nz] = suspension_step(gp, *zeta);
      CHECK(polygon(next, nz).area == area);
    } catch (const ConnectionError&) {
    }
    auto flowed = geodesic_flow(*zeta, Rat(7, 3));
    CHECK(polygon(gp, flowed).area == area);
    CHECK(is_suspension(gp, flowed));
    CHECK(polygon(gp, geodesic_flow(*zeta, Rat(1))).top == polygon(gp, *zeta).top);
    if (++done >= 20) break;
  }
  CHECK(done == 20);
}
