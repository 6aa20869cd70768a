#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "trapo/encode.hpp"
#include "trapo/io.hpp"
#include "trapo/linear.hpp"

using namespace trapo;

namespace {

// Independent Fourier-Motzkin feasibility oracle for small systems, used to
// cross-check the solver. Eliminates variables one by one; strictness of a
// derived bound is the disjunction of the strictness of its parents.
struct FmConstraint {
  std::vector<Rational> coef;  // dense over all vars
  bool strict;                 // sum coef*x (<|<=) rhs
  Rational rhs;
};

bool fm_feasible(std::vector<FmConstraint> cs, std::size_t vars) {
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<FmConstraint> lower, upper, rest;
    for (auto& c : cs) {
      if (c.coef[v] > 0)
        upper.push_back(c);
      else if (c.coef[v] < 0)
        lower.push_back(c);
      else
        rest.push_back(c);
    }
    for (auto& lo : lower)
      for (auto& up : upper) {
        // scale so the v coefficients cancel
        Rational a = -lo.coef[v], b = up.coef[v];
        FmConstraint merged;
        merged.coef.assign(vars, Rational(0));
        for (std::size_t k = 0; k < vars; ++k)
          merged.coef[k] = lo.coef[k] * b + up.coef[k] * a;
        merged.rhs = lo.rhs * b + up.rhs * a;
        merged.strict = lo.strict || up.strict;
        rest.push_back(std::move(merged));
      }
    cs = std::move(rest);
  }
  for (auto& c : cs) {
    if (c.strict ? !(Rational(0) < c.rhs) : !(Rational(0) <= c.rhs)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("basic feasibility") {
  ConstraintSystem sys;
  int x = sys.add_var("x"), y = sys.add_var("y");
  sys.add(diff_constraint(x, y, Rel::LT));
  SolveResult r = solve(sys);
  REQUIRE(r.feasible);
  REQUIRE(r.assignment[x] < r.assignment[y]);

  sys.add(diff_constraint(y, x, Rel::LT));
  REQUIRE_FALSE(solve(sys).feasible);

  ConstraintSystem empty;
  REQUIRE(solve(empty).feasible);
}

TEST_CASE("strict boundary cases need the delta objective") {
  // x <= 0 and x >= 0 and x < y and y <= 0: weakly feasible only at x=y=0,
  // which violates the strict row.
  ConstraintSystem sys;
  int x = sys.add_var("x"), y = sys.add_var("y");
  sys.add({{x, Rational(1)}}, Rel::LE, Rational(0));
  sys.add({{x, Rational(-1)}}, Rel::LE, Rational(0));
  sys.add({{x, Rational(1)}, {y, Rational(-1)}, {x, Rational(0)}}, Rel::LT, Rational(0));
  sys.add({{y, Rational(1)}, {x, Rational(1)}}, Rel::LE, Rational(0));  // x + y <= 0
  REQUIRE_FALSE(solve(sys).feasible);

  ConstraintSystem ok;
  x = ok.add_var("x");
  y = ok.add_var("y");
  ok.add({{x, Rational(1)}, {y, Rational(1)}}, Rel::EQ, Rational(2));
  ok.add(diff_constraint(x, y, Rel::LT));
  SolveResult r = solve(ok);
  REQUIRE(r.feasible);
  REQUIRE(r.assignment[x] + r.assignment[y] == 2);
  REQUIRE(r.assignment[x] < r.assignment[y]);
}

TEST_CASE("the base encoding of the jaw order is feasible") {
  Poset jaw = parse_poset_file(read_file(std::string(TRAPO_DATA_DIR) + "/jaw.poset")).poset;
  DisjunctiveEncoding enc = encode(jaw, PropertyQuery::none());
  SolveResult r = solve(enc.base);  // comparability constraints only
  REQUIRE(r.feasible);
}

TEST_CASE("solver agrees with Fourier-Motzkin on random small systems") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> coef(-2, 2), rhs(-2, 2), nvars(1, 3), ncons(1, 7),
      relpick(0, 2);
  for (int it = 0; it < 400; ++it) {
    std::size_t n = nvars(rng);
    std::size_t m = ncons(rng);
    ConstraintSystem sys;
    for (std::size_t v = 0; v < n; ++v) sys.add_var("x" + std::to_string(v));
    std::vector<FmConstraint> fm;
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<std::pair<int, Rational>> terms;
      FmConstraint f;
      f.coef.assign(n, Rational(0));
      for (std::size_t v = 0; v < n; ++v) {
        int a = coef(rng);
        if (a != 0) terms.push_back({static_cast<int>(v), Rational(a)});
        f.coef[v] = a;
      }
      int r = relpick(rng);
      Rational b(rhs(rng));
      if (r == 2) {
        // equality becomes two inequalities for the oracle
        sys.add(terms, Rel::EQ, b);
        f.strict = false;
        f.rhs = b;
        fm.push_back(f);
        FmConstraint g = f;
        for (auto& q : g.coef) q = -q;
        g.rhs = -b;
        fm.push_back(g);
      } else {
        sys.add(terms, r == 0 ? Rel::LT : Rel::LE, b);
        f.strict = (r == 0);
        f.rhs = b;
        fm.push_back(f);
      }
    }
    bool expect = fm_feasible(fm, n);
    SolveResult got = solve(sys);  // witness re-verified inside solve
    INFO(sys.dump());
    REQUIRE(got.feasible == expect);
  }
}

TEST_CASE("determinism") {
  ConstraintSystem sys;
  int x = sys.add_var("x"), y = sys.add_var("y"), z = sys.add_var("z");
  sys.add(diff_constraint(x, y, Rel::LT));
  sys.add(diff_constraint(y, z, Rel::LT));
  sys.add({{x, Rational(1)}, {y, Rational(1)}, {z, Rational(1)}}, Rel::LE, Rational(10));
  SolveResult a = solve(sys), b = solve(sys);
  REQUIRE(a.feasible == b.feasible);
  REQUIRE(a.assignment == b.assignment);
}

TEST_CASE("debug dump format") {
  ConstraintSystem sys;
  int x = sys.add_var("x"), y = sys.add_var("y");
  sys.add(diff_constraint(x, y, Rel::LT));
  sys.add({{x, Rational(2)}, {y, Rational(-3)}}, Rel::LE, Rational(1, 2));
  sys.add({{x, Rational(1)}}, Rel::EQ, Rational(0));
  std::string dump = sys.dump();
  REQUIRE(dump == "x - y < 0\n2*x - 3*y <= 1/2\nx = 0\n");
}
