#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "trapo/classifier.hpp"
#include "trapo/geometry.hpp"

using namespace trapo;

namespace {
Trapezoid box(int l, int r, int L, int R) {
  return Trapezoid::of(Rational(l), Rational(r), Rational(L), Rational(R));
}
}  // namespace

TEST_CASE("induced order") {
  Representation rep;
  rep.add("a", box(0, 1, 0, 1));
  rep.add("b", box(2, 3, 2, 3));
  Poset p = rep.induced_order();
  REQUIRE(p.less("a", "b"));

  Representation crossing;
  crossing.add("a", box(0, 2, 0, 1));
  crossing.add("b", box(1, 3, 2, 3));
  REQUIRE(crossing.induced_order().relation_count() == 0);  // lower intervals overlap

  // comparability needs strict gaps on both baselines
  Representation touching;
  touching.add("a", box(0, 1, 0, 1));
  touching.add("b", box(1, 2, 2, 3));
  REQUIRE(touching.induced_order().relation_count() == 0);
}

TEST_CASE("proper containment") {
  Trapezoid t = box(0, 4, 0, 4);
  REQUIRE_FALSE(properly_contains(t, t));  // "properly" excludes equality
  REQUIRE(properly_contains(t, box(1, 2, 1, 2)));
  REQUIRE_FALSE(properly_contains(box(0, 2, 1, 3), box(1, 3, 0, 2)));
  REQUIRE_FALSE(properly_contains(box(1, 3, 0, 2), box(0, 2, 1, 3)));
}

TEST_CASE("proper containment agrees with sampled cross sections") {
  std::mt19937 rng(31);
  int done = 0;
  while (done < 60) {
    Representation rep = testutil::random_representation(rng, 2);
    const Trapezoid& t1 = rep.items()[0].second;
    const Trapezoid& t2 = rep.items()[1].second;
    if (t1 == t2) continue;
    ++done;
    bool contains = properly_contains(t1, t2);
    bool sampled = true;
    for (int k = 0; k <= 100 && sampled; ++k) {
      Rational h(k, 100);
      Interval c1 = cross_section(t1, h), c2 = cross_section(t2, h);
      if (!(c1.lo <= c2.lo && c2.hi <= c1.hi)) sampled = false;
    }
    if (contains) {
      REQUIRE(sampled);
    } else if (sampled) {
      // containment at every sampled height but not proper: only possible in
      // boundary-degenerate cases where some cross sections coincide; the
      // baselines decide, so re-check there.
      REQUIRE((t1.l() <= t2.l() && t2.r() <= t1.r() && t1.L() <= t2.L() && t2.R() <= t1.R()));
    }
  }
}

TEST_CASE("property flags") {
  Representation translated;
  translated.add("a", box(0, 2, 1, 3));
  translated.add("b", box(4, 6, 5, 7));
  PropertyFlags f = translated.property_set();
  REQUIRE(f.has(RepProperty::Proper));
  REQUIRE(f.has(RepProperty::Unit));
  REQUIRE(f.has(RepProperty::Parallelogram));
  REQUIRE_FALSE(f.has(RepProperty::Rectangle));

  Representation nested;
  nested.add("a", box(0, 4, 0, 4));
  nested.add("b", box(1, 2, 1, 2));
  PropertyFlags g = nested.property_set();
  REQUIRE(g.has(RepProperty::Parallelogram));
  REQUIRE_FALSE(g.has(RepProperty::Proper));
  REQUIRE_FALSE(g.has(RepProperty::Unit));

  Representation empty;
  REQUIRE_THROWS_AS(empty.property_set(), GeometryError);

  // degenerate: all zero area is not unit
  Representation points;
  points.add("a", box(0, 0, 0, 0));
  points.add("b", box(1, 1, 1, 1));
  REQUIRE_FALSE(points.property_set().has(RepProperty::Unit));
}

TEST_CASE("rectangle representations induce interval orders") {
  std::mt19937 rng(37);
  for (int it = 0; it < 40; ++it) {
    Representation rep;
    auto names = testutil::ids(5);
    for (auto& e : names) {
      Rational l = testutil::random_rational(rng, 0, 8), r = testutil::random_rational(rng, 0, 8);
      if (l > r) std::swap(l, r);
      rep.add(e, Trapezoid(Interval(l, r), Interval(l, r)));
    }
    PropertyFlags f = rep.property_set();
    REQUIRE(f.has(RepProperty::Rectangle));
    REQUIRE(f.has(RepProperty::Parallelogram));  // rectangle implies parallelogram
    REQUIRE(is_interval_order(rep.induced_order()));
  }
}

TEST_CASE("transforms") {
  std::mt19937 rng(41);
  for (int it = 0; it < 50; ++it) {
    Representation rep = testutil::random_representation(rng, 5);
    Poset base = rep.induced_order();
    PropertyFlags flags = rep.property_set();

    // unit implies proper on every representation the suite generates
    if (flags.has(RepProperty::Unit)) REQUIRE(flags.has(RepProperty::Proper));

    REQUIRE(rep.scale(Rational(3)).property_set() == flags);
    REQUIRE(rep.scale(Rational(1, 7)).induced_order().same_order(base));
    REQUIRE(rep.translate(Rational(-9, 2)).induced_order().same_order(base));
    REQUIRE(rep.translate(Rational(5)).property_set() == flags);

    std::vector<std::string> keep = {"e0", "e2", "e4"};
    Representation sub = rep.restrict(keep);
    REQUIRE(sub.property_set().contains(flags));  // maybe some additional ones
    REQUIRE(sub.induced_order().same_order(base.restriction(keep)));

    Representation other = testutil::random_representation(rng, 3);
    Representation cat = rep.concat(other);
    REQUIRE(cat.size() == 8);
    Poset expected = Poset::series_sum(base, other.induced_order());
    REQUIRE(cat.induced_order().is_isomorphic(expected));
  }
  REQUIRE_THROWS_AS(testutil::random_representation(rng, 2).scale(Rational(0)), GeometryError);
  REQUIRE_THROWS_AS(testutil::random_representation(rng, 2).scale(Rational(-1)), GeometryError);
}
