#include <set>

#include "doctest.h"
#include "linvol/genperm.hpp"
#include "linvol/rauzy.hpp"
#include "linvol/reduce.hpp"

using namespace linvol;

TEST_CASE("r0 and r1 on the five-letter table example") {
  GenPerm gp = GenPerm::parse("A B C B D / D E A C E");
  auto a = r0(gp);
  REQUIRE(a.has_value());
  CHECK(a->str() == "A B C B D / D E E A C");
  auto b = r1(gp);
  REQUIRE(b.has_value());
  CHECK(b->str() == "A B C B / D D E A C E");
  CHECK(b->top_len() == 4);
  CHECK(b->bottom_len() == 6);
}

TEST_CASE("r0 row-moving branch and undefined r1") {
  GenPerm gp = GenPerm::parse("A B A / B D C C D");
  auto a = r0(gp);
  REQUIRE(a.has_value());
  CHECK(a->str() == "D A B A / B D C C");
  CHECK_FALSE(r1(gp).has_value());
}

TEST_CASE("both maps undefined forces reducibility") {
  GenPerm gp = GenPerm::parse("A B A / B C C");
  CHECK_FALSE(r0(gp).has_value());
  CHECK_FALSE(r1(gp).has_value());
  CHECK(find_reduction(gp).has_value());
}

TEST_CASE("classical regression on a true permutation") {
  GenPerm gp = GenPerm::parse("A B C D / D C B A");
  auto a = r0(gp);
  REQUIRE(a.has_value());
  CHECK(a->str() == "A B C D / D A C B");
  auto b = r1(gp);
  REQUIRE(b.has_value());
  CHECK(b->str() == "A D B C / D C B A");
}

TEST_CASE("images keep the convention") {
  for (int d = 2; d <= 4; ++d) {
    for (const GenPerm& gp : enumerate_all(d, true)) {
      for (int eps : {0, 1}) {
        auto img = r_eps(gp, eps);
        if (img) {
          CHECK(img->convention_ok());
          CHECK(img->d() == d);
        }
      }
    }
  }
}

TEST_CASE("predecessors forward-verify and invert the maps") {
  GenPerm target = GenPerm::parse("A B C B D / D E E A C");
  auto preds = predecessors(target, 0);
  GenPerm want = GenPerm::parse("A B C B D / D E A C E").canonical();
  bool found = false;
  for (const GenPerm& p : preds) found |= p == want;
  CHECK(found);
}

TEST_CASE("forward-backward consistency over all d=4 convention words") {
  for (const GenPerm& gp : enumerate_all(4, true)) {
    for (int eps : {0, 1}) {
      auto img = r_eps(gp, eps);
      if (!img) continue;
      GenPerm image = img->canonical();
      auto preds = predecessors(image, eps);
      bool found = false;
      for (const GenPerm& p : preds) found |= p == gp;
      CHECK(found);
      for (const GenPerm& p : preds) {
        auto fwd = r_eps(p, eps);
        REQUIRE(fwd.has_value());
        CHECK(fwd->canonical() == image);
      }
    }
  }
}

TEST_CASE("true permutations have exactly two predecessors") {
  // classical count, asserted on irreducible true permutations
  for (const GenPerm& gp : enumerate_all(3, true)) {
    if (!gp.is_true_permutation()) continue;
    if (find_reduction(gp)) continue;
    auto p0 = predecessors(gp, 0);
    auto p1 = predecessors(gp, 1);
    CHECK(p0.size() + p1.size() == 2);
  }
}

TEST_CASE("sources exist among d=4 convention words") {
  bool some_source = false;
  for (const GenPerm& gp : enumerate_all(4, true)) {
    if (predecessors(gp, 0).empty() && predecessors(gp, 1).empty()) some_source = true;
  }
  CHECK(some_source);
}

TEST_CASE("irreducibility is preserved forward") {
  for (int d = 2; d <= 4; ++d) {
    for (const GenPerm& gp : enumerate_all(d, true)) {
      if (find_reduction(gp)) continue;
      for (int eps : {0, 1}) {
        auto img = r_eps(gp, eps);
        if (img) CHECK_FALSE(find_reduction(*img).has_value());
      }
    }
  }
}

TEST_CASE("when both maps are undefined the word is reducible") {
  for (int d = 2; d <= 4; ++d) {
    for (const GenPerm& gp : enumerate_all(d, true)) {
      if (!r0(gp) && !r1(gp)) CHECK(find_reduction(gp).has_value());
    }
  }
}
