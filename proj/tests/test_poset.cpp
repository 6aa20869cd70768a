#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "test_util.hpp"
#include "trapo/poset.hpp"

using trapo::Poset;
using trapo::PosetError;

TEST_CASE("building posets from relation pairs") {
  Poset chain = Poset::from_relations({"a", "b"}, {{"a", "b"}});
  REQUIRE(chain.less("a", "b"));
  REQUIRE(chain.valid());

  Poset two2 = Poset::from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  REQUIRE(two2.relation_count() == 2);
  REQUIRE(two2.incomparable(two2.index_of("a"), two2.index_of("c")));

  REQUIRE_THROWS_AS(Poset::from_relations({"a", "b"}, {{"a", "b"}, {"b", "a"}}), PosetError);
  REQUIRE_THROWS_WITH(Poset::from_relations({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                      Catch::Matchers::ContainsSubstring("not a partial order"));
  REQUIRE_THROWS_AS(Poset::from_relations({"a"}, {{"a", "z"}}), PosetError);
  REQUIRE_THROWS_AS(Poset::from_relations({"a", "a"}, {}), PosetError);

  // closure is applied to arbitrary generating pairs
  Poset c3 = Poset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  REQUIRE(c3.less("a", "c"));
}

TEST_CASE("restriction") {
  Poset two2 = Poset::from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  Poset r = two2.restriction({"a", "b"});
  REQUIRE(r.size() == 2);
  REQUIRE(r.less("a", "b"));

  REQUIRE(two2.restriction({}).empty());
  REQUIRE_THROWS_AS(two2.restriction({"zz"}), PosetError);

  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    Poset p = testutil::random_poset(rng, 6);
    // restriction(restriction(P,S),T) = restriction(P,T) for T subset of S
    std::vector<std::string> s = {"e0", "e1", "e2", "e3"};
    std::vector<std::string> t = {"e1", "e3"};
    REQUIRE(p.restriction(s).restriction(t).same_order(p.restriction(t)));
    REQUIRE(p.restriction(s).valid());
  }
}

TEST_CASE("series and parallel sums") {
  Poset c2 = Poset::chain({"a", "b"});
  Poset c4 = Poset::series_sum(c2, c2);
  REQUIRE(c4.size() == 4);
  REQUIRE(c4.is_linear());

  Poset two2 = Poset::disjoint_union(c2, c2);
  REQUIRE(two2.size() == 4);
  REQUIRE(two2.relation_count() == 2);
  REQUIRE(two2.is_isomorphic(trapo::pattern_two_plus_two()));

  // renaming on clash appends a suffix
  std::set<std::string> names(two2.elements().begin(), two2.elements().end());
  REQUIRE(names.size() == 4);

  Poset empty;
  REQUIRE(Poset::series_sum(c2, empty).same_order(c2));
  REQUIRE(Poset::series_sum(empty, c2).is_isomorphic(c2));
}

TEST_CASE("intersection") {
  Poset abc = Poset::chain({"a", "b", "c"});
  Poset cba = Poset::chain({"c", "b", "a"});
  REQUIRE(Poset::intersection(abc, abc).same_order(abc));
  REQUIRE(Poset::intersection(abc, cba).relation_count() == 0);
  REQUIRE_THROWS_AS(Poset::intersection(abc, Poset::chain({"a", "b"})), PosetError);

  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    Poset p = testutil::random_poset(rng, 5);
    Poset q = testutil::random_poset(rng, 5);
    Poset pq = Poset::intersection(p, q);
    REQUIRE(pq.valid());
    REQUIRE(pq.same_order(Poset::intersection(q, p).restriction(p.elements())));
    REQUIRE(Poset::intersection(pq, p).same_order(pq));  // idempotent-ish
    Poset r = testutil::random_poset(rng, 5);
    REQUIRE(Poset::intersection(Poset::intersection(p, q), r)
                .same_order(Poset::intersection(p, Poset::intersection(q, r))));
    // a linear extension intersects back to the original
    Poset ext = testutil::random_linear_extension(rng, p);
    REQUIRE(Poset::intersection(p, ext.restriction(p.elements())).same_order(p));
  }
}

TEST_CASE("pattern search") {
  Poset two2 = trapo::pattern_two_plus_two();
  REQUIRE(two2.find_pattern(two2).has_value());
  REQUIRE_FALSE(Poset::chain({"a", "b", "c", "d"}).has_pattern(two2));

  std::mt19937 rng(13);
  for (int it = 0; it < 30; ++it) {
    Poset p = testutil::random_poset(rng, 6);
    for (const Poset* pat : {&trapo::pattern_two_plus_two(), &trapo::pattern_three_plus_one()}) {
      bool fast = p.has_pattern(*pat);
      bool brute = testutil::has_pattern_by_subsets(p, *pat);
      REQUIRE(fast == brute);
      if (fast) {
        auto occ = p.find_pattern(*pat);
        std::vector<std::string> image;
        for (auto& [from, to] : *occ) image.push_back(to);
        REQUIRE(p.restriction(image).is_isomorphic(*pat));
      }
    }
  }
}

TEST_CASE("linear extensions") {
  REQUIRE(Poset::chain({"a", "b", "c"}).count_linear_extensions() == 1);
  REQUIRE(Poset::antichain({"a", "b"}).count_linear_extensions() == 2);
  Poset two2 = trapo::pattern_two_plus_two();
  REQUIRE(testutil::count_extensions_by_permutation(two2) == 6);  // independent oracle
  REQUIRE(two2.count_linear_extensions() == 6);

  std::mt19937 rng(17);
  for (int it = 0; it < 30; ++it) {
    Poset p = testutil::random_poset(rng, 5);
    REQUIRE(p.count_linear_extensions() == testutil::count_extensions_by_permutation(p));
    Poset ext = p.some_linear_extension();
    REQUIRE(ext.is_linear());
    REQUIRE(ext.restriction(p.elements()).contains_relations_of(p));
  }
}

TEST_CASE("isomorphism") {
  Poset v = Poset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  REQUIRE(v.is_isomorphic(v));
  REQUIRE_FALSE(Poset::chain({"a", "b"}).is_isomorphic(Poset::antichain({"a", "b"})));
  Poset w = Poset::from_relations({"x", "y", "z"}, {{"z", "x"}, {"z", "y"}});
  auto iso = v.isomorphism_to(w);
  REQUIRE(iso.has_value());
  REQUIRE((*iso)["a"] == "z");
}

TEST_CASE("autonomous sets") {
  REQUIRE(Poset::antichain({"a", "b"}).autonomous_sets().empty());

  Poset c3 = Poset::chain({"a", "b", "c"});
  auto sets = c3.autonomous_sets();
  REQUIRE(sets.size() == 2);  // the two short chains {a,b} and {b,c}
  for (auto& s : sets) REQUIRE(testutil::autonomous_by_definition(c3, s));

  REQUIRE_THROWS_AS(c3.reverse_autonomous({"a", "c"}), PosetError);
  Poset rev = c3.reverse_autonomous({"a", "b"});
  REQUIRE(rev.less("b", "a"));
  REQUIRE(rev.less("a", "c"));
  REQUIRE(rev.valid());
  REQUIRE(rev.is_isomorphic(c3));

  std::mt19937 rng(23);
  for (int it = 0; it < 20; ++it) {
    Poset p = testutil::random_poset(rng, 5);
    for (auto& s : p.autonomous_sets()) {
      REQUIRE(testutil::autonomous_by_definition(p, s));
      REQUIRE(p.reverse_autonomous(s).valid());
    }
  }
}

TEST_CASE("dual is an anti-automorphism") {
  std::mt19937 rng(29);
  for (int it = 0; it < 20; ++it) {
    Poset p = testutil::random_poset(rng, 5);
    Poset d = p.dual();
    REQUIRE(d.valid());
    REQUIRE(d.dual().same_order(p));
  }
}
