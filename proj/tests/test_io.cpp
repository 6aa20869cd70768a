#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "trapo/catalog.hpp"
#include "trapo/io.hpp"
#include "trapo/svg.hpp"
#include "trapo/constructions.hpp"

using namespace trapo;

TEST_CASE("poset file parsing") {
  NamedPoset np = parse_poset_file("poset p\nelements: a b\nrelations: a<b\n");
  REQUIRE(np.name == "p");
  REQUIRE(np.poset.less("a", "b"));

  // comments and blank lines are ignored
  NamedPoset np2 = parse_poset_file("# header\nposet q\n\nelements: x y  # two\nrelations:\n");
  REQUIRE(np2.poset.size() == 2);
  REQUIRE(np2.poset.relation_count() == 0);

  try {
    parse_poset_file("poset p\nelements: a b\nrelations: a<b b<a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("not a partial order"));
  }

  try {
    parse_poset_file("poset p\nelements: a b\nrelations: a*b\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 3);
  }
  REQUIRE_THROWS_AS(parse_poset_file("elements: a\n"), ParseError);
  REQUIRE_THROWS_AS(parse_poset_file("poset p\nwat: x\n"), ParseError);
}

TEST_CASE("rep file parsing") {
  NamedRep nr = parse_rep_file("rep r\nelem a lower 0 1 upper 1/2 3/2\n");
  REQUIRE(nr.name == "r");
  REQUIRE(nr.rep.at("a").l() == 0);
  REQUIRE(nr.rep.at("a").R() == Rational(3, 2));

  try {
    parse_rep_file("rep r\nelem a lower 0 x upper 0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 2);
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("malformed rational"));
  }
  // intervals must be ordered
  REQUIRE_THROWS_AS(parse_rep_file("rep r\nelem a lower 2 1 upper 0 1\n"), ParseError);
}

TEST_CASE("round trips") {
  std::mt19937 rng(83);
  for (int it = 0; it < 60; ++it) {
    Poset p = testutil::random_poset(rng, 6);
    std::string text = serialize_poset("p", p);
    NamedPoset back = parse_poset_file(text);
    REQUIRE(back.poset.same_order(p));
    REQUIRE(serialize_poset("p", back.poset) == text);  // canonical form is stable

    Representation rep = testutil::random_representation(rng, 4);
    std::string rtext = serialize_rep("r", rep);
    NamedRep rback = parse_rep_file(rtext);
    REQUIRE(rback.rep.size() == rep.size());
    for (auto& [e, t] : rep.items()) REQUIRE(rback.rep.at(e) == t);
    REQUIRE(serialize_rep("r", rback.rep) == rtext);
  }
}

TEST_CASE("catalog entries load and ship as data files") {
  for (const auto& name : catalog_names()) {
    CatalogEntry entry = catalog_load(name);  // runs all load-time assertions
    REQUIRE(entry.poset.valid());
    std::string disk = read_file(std::string(TRAPO_DATA_DIR) + "/" + name + ".poset");
    REQUIRE(disk == catalog_text(name));
    REQUIRE(parse_poset_file(disk).poset.same_order(entry.poset));
  }
}

TEST_CASE("catalog autonomous chains reverse to isomorphic orders") {
  // comparability invariance: reversing any non-trivial autonomous set of a
  // catalog order yields an isomorphic order
  for (const auto& name : catalog_names()) {
    Poset p = catalog_load(name).poset;
    auto sets = p.autonomous_sets();
    for (auto& a : sets) {
      INFO(name);
      REQUIRE(p.reverse_autonomous(a).is_isomorphic(p));
    }
  }
}

TEST_CASE("svg rendering") {
  Representation square;
  square.add("a", Trapezoid::of(Rational(0), Rational(1), Rational(0), Rational(1)));
  std::string svg = render_svg(square);
  REQUIRE_THAT(svg, Catch::Matchers::StartsWith("<svg"));
  REQUIRE_THAT(svg, Catch::Matchers::ContainsSubstring("</svg>"));
  REQUIRE(std::count(svg.begin(), svg.end(), '\n') > 4);
  // one polygon per element, two baselines
  REQUIRE(svg.find("polygon") != std::string::npos);

  Representation three = thm6_proper_parallelogram(Poset::chain({"a", "b", "c"}));
  std::string svg3 = render_svg(three);
  std::size_t count = 0, pos = 0;
  while ((pos = svg3.find("<polygon", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  REQUIRE(count == 3);

  REQUIRE_THROWS_AS(render_svg(Representation{}), GeometryError);
  REQUIRE_THROWS_AS(render_svg_file(square, "/nonexistent-dir/x.svg"), std::runtime_error);
}
