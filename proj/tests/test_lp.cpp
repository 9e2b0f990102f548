#include "doctest.h"
#include "linvol/lp.hpp"

using namespace linvol;

TEST_CASE("simple bounded maximum") {
  ExactLp lp;
  int x = lp.add_var(Rat(0), Rat(4));
  int y = lp.add_var(Rat(0), Rat(3));
  lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, '<', Rat(5));
  lp.set_objective({{x, Rat(2)}, {y, Rat(3)}});
  auto res = lp.solve();
  REQUIRE(res.status == ExactLp::Status::Optimal);
  CHECK(res.objective == Rat(13));  // x=2, y=3
  CHECK(res.x[0] + res.x[1] == Rat(5));
}

TEST_CASE("equality constraints and negative bounds") {
  ExactLp lp;
  int x = lp.add_var(Rat(-2), Rat(2));
  int y = lp.add_var(Rat(-2), Rat(2));
  lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, '=', Rat(1));
  lp.set_objective({{x, Rat(1)}, {y, Rat(-1)}});
  auto res = lp.solve();
  REQUIRE(res.status == ExactLp::Status::Optimal);
  CHECK(res.objective == Rat(3));  // x=2, y=-1
  CHECK(res.x[0] == Rat(2));
  CHECK(res.x[1] == Rat(-1));
}

TEST_CASE("infeasible system") {
  ExactLp lp;
  int x = lp.add_var(Rat(0), Rat(1));
  lp.add_constraint({{x, Rat(1)}}, '>', Rat(2));
  lp.set_objective({{x, Rat(1)}});
  CHECK(lp.solve().status == ExactLp::Status::Infeasible);
}

TEST_CASE("unbounded direction") {
  ExactLp lp;
  int x = lp.add_var(Rat(0));
  lp.set_objective({{x, Rat(1)}});
  CHECK(lp.solve().status == ExactLp::Status::Unbounded);
}

TEST_CASE("exact fractions survive") {
  ExactLp lp;
  int x = lp.add_var(Rat(0), Rat(1));
  int y = lp.add_var(Rat(0), Rat(1));
  lp.add_constraint({{x, Rat(3)}, {y, Rat(7)}}, '<', Rat(1));
  lp.set_objective({{x, Rat(1)}, {y, Rat(1)}});
  auto res = lp.solve();
  REQUIRE(res.status == ExactLp::Status::Optimal);
  CHECK(res.objective == Rat(1, 3));
}

TEST_CASE("early stop reports a feasible point past the threshold") {
  ExactLp lp;
  int x = lp.add_var(Rat(0), Rat(10));
  lp.add_constraint({{x, Rat(1)}}, '>', Rat(1));
  lp.set_objective({{x, Rat(1)}});
  auto res = lp.solve(Rat(0));
  REQUIRE(res.status == ExactLp::Status::Optimal);
  CHECK(res.objective > 0);
}

TEST_CASE("degenerate ties do not cycle") {
  ExactLp lp;
  int x = lp.add_var(Rat(0));
  int y = lp.add_var(Rat(0));
  int z = lp.add_var(Rat(0));
  lp.add_constraint({{x, Rat(1)}, {y, Rat(-1)}}, '<', Rat(0));
  lp.add_constraint({{x, Rat(1)}, {z, Rat(-1)}}, '<', Rat(0));
  lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}, {z, Rat(1)}}, '<', Rat(3));
  lp.set_objective({{x, Rat(1)}});
  auto res = lp.solve();
  REQUIRE(res.status == ExactLp::Status::Optimal);
  CHECK(res.objective == Rat(1));
}
