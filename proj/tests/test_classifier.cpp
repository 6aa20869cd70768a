#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "trapo/catalog.hpp"
#include "trapo/classifier.hpp"

using namespace trapo;

TEST_CASE("interval order recognition") {
  REQUIRE(is_interval_order(Poset::chain({"a", "b", "c"})));
  REQUIRE_FALSE(is_interval_order(pattern_two_plus_two()));
  auto occ = interval_order_obstruction(pattern_two_plus_two());
  REQUIRE(occ.has_value());
  REQUIRE(occ->size() == 4);
  // the transcribed nonparallel order contains a 2+2, so it is not interval
  REQUIRE_FALSE(is_interval_order(catalog_load("nonparallel").poset));
}

TEST_CASE("semiorder recognition") {
  REQUIRE(is_semiorder(Poset::chain({"a", "b", "c", "d"})));
  REQUIRE_FALSE(is_semiorder(pattern_three_plus_one()));
  REQUIRE_FALSE(is_semiorder(pattern_two_plus_two()));
}

TEST_CASE("hierarchy check") {
  ClassSet lone;
  lone.set_member(OrderClass::U_PGRAM);
  REQUIRE_FALSE(hierarchy_check(lone));

  ClassSet full;
  for (int i = 0; i < kClassCount; ++i) full.set_member(static_cast<OrderClass>(i));
  REQUIRE(hierarchy_check(full));

  ClassSet no_interval = full;
  no_interval.members &= ~(1u << static_cast<int>(OrderClass::INTERVAL));
  REQUIRE(hierarchy_check(no_interval));
}

TEST_CASE("classify the 2+2") {
  ClassSet cs = classify(pattern_two_plus_two(), 120000);
  REQUIRE(cs.is_member(OrderClass::U_PGRAM));
  REQUIRE(cs.is_member(OrderClass::P_PGRAM));
  REQUIRE(cs.is_member(OrderClass::U_TRAP));
  REQUIRE(cs.is_member(OrderClass::PGRAM));
  REQUIRE(cs.is_member(OrderClass::P_TRAP));
  REQUIRE(cs.is_member(OrderClass::TRAP));
  REQUIRE_FALSE(cs.is_member(OrderClass::INTERVAL));
  REQUIRE_FALSE(cs.is_unresolved(OrderClass::INTERVAL));
  REQUIRE(hierarchy_check(cs));
}

TEST_CASE("interval orders classify constructively") {
  // 3+1 is an interval order of semiorder dimension 2, so everything holds
  ClassSet cs = classify(pattern_three_plus_one(), 120000);
  REQUIRE(cs.is_member(OrderClass::INTERVAL));
  REQUIRE(cs.is_member(OrderClass::U_TRAP));
  REQUIRE(cs.is_member(OrderClass::P_PGRAM));
  REQUIRE(cs.is_member(OrderClass::U_PGRAM));
  REQUIRE(hierarchy_check(cs));
}

TEST_CASE("classify with zero budget leaves classes unresolved, never guessed") {
  ClassSet cs = classify(pattern_two_plus_two(), 0);
  REQUIRE(hierarchy_check(cs));
  REQUIRE(cs.unresolved != 0);
  REQUIRE_FALSE(cs.is_member(OrderClass::INTERVAL));  // pattern check has no budget
}

TEST_CASE("hereditary law on small random orders") {
  std::mt19937 rng(73);
  for (int it = 0; it < 6; ++it) {
    Poset p = testutil::random_poset(rng, 5);
    ClassSet whole = classify(p, 60000);
    REQUIRE(hierarchy_check(whole));
    std::vector<std::string> keep = {"e0", "e2", "e4"};
    ClassSet part = classify(p.restriction(keep), 60000);
    for (int c = 0; c < kClassCount; ++c) {
      OrderClass oc = static_cast<OrderClass>(c);
      if (whole.is_member(oc) && !part.is_unresolved(oc)) {
        INFO(class_name(oc));
        REQUIRE(part.is_member(oc));
      }
    }
  }
}

TEST_CASE("series sum law on small random orders") {
  std::mt19937 rng(79);
  for (int it = 0; it < 4; ++it) {
    Poset p = testutil::random_poset(rng, 3);
    Poset q = testutil::random_poset(rng, 3);
    ClassSet cp = classify(p, 60000);
    ClassSet cq = classify(q, 60000);
    ClassSet cs = classify(Poset::series_sum(p, q), 60000);
    REQUIRE(hierarchy_check(cs));
    for (int c = 0; c < kClassCount; ++c) {
      OrderClass oc = static_cast<OrderClass>(c);
      if (oc == OrderClass::INTERVAL) continue;  // representation classes only
      if (cp.is_unresolved(oc) || cq.is_unresolved(oc) || cs.is_unresolved(oc)) continue;
      INFO(class_name(oc));
      // both summands have it -> the series sum has it
      if (cp.is_member(oc) && cq.is_member(oc)) REQUIRE(cs.is_member(oc));
      // a summand misses it -> the series sum misses it (hereditary)
      if (!cp.is_member(oc) || !cq.is_member(oc)) REQUIRE_FALSE(cs.is_member(oc));
    }
  }
}
