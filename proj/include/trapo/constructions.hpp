#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/geometry.hpp"
#include "trapo/linear.hpp"
#include "trapo/poset.hpp"

namespace trapo {

// Raised when an input order lacks a required structure; carries the
// forbidden suborder occurrence as a certificate.
struct ForbiddenSuborder : std::runtime_error {
  std::map<std::string, std::string> occurrence;
  ForbiddenSuborder(const std::string& what, std::map<std::string, std::string> occ)
      : std::runtime_error(what), occurrence(std::move(occ)) {}
};

inline const Poset& pattern_two_plus_two() {
  static const Poset p =
      Poset::from_relations({"p1", "p2", "q1", "q2"}, {{"p1", "p2"}, {"q1", "q2"}});
  return p;
}

inline const Poset& pattern_three_plus_one() {
  static const Poset p =
      Poset::from_relations({"p1", "p2", "p3", "q"}, {{"p1", "p2"}, {"p2", "p3"}});
  return p;
}

// Interval map: element id -> interval on one line, in a fixed order.
struct IntervalMap {
  std::vector<std::pair<std::string, Interval>> items;

  const Interval& at(const std::string& id) const {
    for (auto& [e, iv] : items)
      if (e == id) return iv;
    throw GeometryError("unknown element id: " + id);
  }

  Poset induced_order() const {
    std::vector<std::string> elems;
    for (auto& [e, iv] : items) elems.push_back(e);
    std::vector<std::pair<std::string, std::string>> rel;
    for (auto& [a, ia] : items)
      for (auto& [b, ib] : items)
        if (&ia != &ib && ia.hi < ib.lo) rel.push_back({a, b});
    return Poset::from_relations(elems, rel);
  }

  Rational max_length() const {
    Rational m = 0;
    for (auto& [e, iv] : items) m = std::max(m, iv.length());
    return m;
  }

  IntervalMap scaled(const Rational& c) const {
    IntervalMap out;
    for (auto& [e, iv] : items) out.items.push_back({e, Interval(iv.lo * c, iv.hi * c)});
    return out;
  }
};

// Magnitude construction of an interval representation: endpoints are ranks
// of the distinct predecessor / successor sets ordered by inclusion.
inline IntervalMap canonical_interval_rep(const Poset& x) {
  if (auto occ = x.find_pattern(pattern_two_plus_two()))
    throw ForbiddenSuborder("not an interval order (contains a 2+2)", *occ);

  std::size_t n = x.size();
  auto rank_by_inclusion = [&](bool predecessors) {
    std::vector<std::uint32_t> sets(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool rel = predecessors ? x.less(j, i) : x.less(i, j);
        if (rel) sets[i] |= (1u << j);
      }
    std::vector<std::uint32_t> distinct = sets;
    std::sort(distinct.begin(), distinct.end(), [](std::uint32_t a, std::uint32_t b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t k = 0; k + 1 < distinct.size(); ++k)
      if ((distinct[k] & ~distinct[k + 1]) != 0)
        throw std::logic_error("predecessor sets of a 2+2-free order must nest");
    std::vector<int> rank(n);
    for (std::size_t i = 0; i < n; ++i)
      rank[i] = static_cast<int>(std::find(distinct.begin(), distinct.end(), sets[i]) -
                                 distinct.begin());
    return std::pair<std::vector<int>, int>(rank, static_cast<int>(distinct.size()));
  };

  auto [pred_rank, pred_count] = rank_by_inclusion(true);
  auto [succ_rank, succ_count] = rank_by_inclusion(false);
  (void)pred_count;
  IntervalMap out;
  for (std::size_t i = 0; i < n; ++i) {
    Rational left(pred_rank[i]);
    Rational right(succ_count - 1 - succ_rank[i]);
    out.items.push_back({x.element(i), Interval(left, right)});
  }
  if (!out.induced_order().same_order(x))
    throw std::logic_error("canonical interval representation self-check failed");
  return out;
}

// Unit-length interval representation of a semiorder, found by solving the
// endpoint system exactly: comparable pairs need a gap above 1, incomparable
// pairs stay within distance 1.
inline IntervalMap unit_interval_rep(const Poset& s) {
  if (auto occ = s.find_pattern(pattern_two_plus_two()))
    throw ForbiddenSuborder("not a semiorder (contains a 2+2)", *occ);
  if (auto occ = s.find_pattern(pattern_three_plus_one()))
    throw ForbiddenSuborder("not a semiorder (contains a 3+1)", *occ);

  ConstraintSystem sys;
  std::vector<int> left(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) left[i] = sys.add_var("left_" + s.element(i));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      if (s.less(i, j)) {
        // left_i + 1 < left_j
        sys.add({{left[i], Rational(1)}, {left[j], Rational(-1)}}, Rel::LT, Rational(-1));
      } else if (i < j && s.incomparable(i, j)) {
        sys.add({{left[i], Rational(1)}, {left[j], Rational(-1)}}, Rel::LE, Rational(1));
        sys.add({{left[j], Rational(1)}, {left[i], Rational(-1)}}, Rel::LE, Rational(1));
      }
    }
  SolveResult res = solve(sys);
  if (!res.feasible)
    throw std::logic_error("unit interval system infeasible for a semiorder");

  IntervalMap out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Rational l = res.assignment[left[i]];
    out.items.push_back({s.element(i), Interval(l, l + 1)});
  }
  if (!out.induced_order().same_order(s))
    throw std::logic_error("unit interval representation self-check failed");
  return out;
}

namespace detail {

inline void require_same_ground_set(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) throw PosetError("ground sets differ");
  for (const auto& e : a.elements())
    if (!b.has_element(e)) throw PosetError("ground sets differ");
}

// Relative order of endpoint slots that were strictly ordered must survive a
// transformation; ties are allowed to break.
inline void assert_endpoint_order_preserved(const std::vector<Rational>& before,
                                            const std::vector<Rational>& after) {
  for (std::size_t i = 0; i < before.size(); ++i)
    for (std::size_t j = 0; j < before.size(); ++j)
      if (before[i] < before[j] && !(after[i] < after[j]))
        throw std::logic_error("endpoint order was not preserved");
}

}  // namespace detail

// Intersection of an interval order and a semiorder on one ground set is a
// unit trapezoid order; builds the constant-area representation.
inline Representation lemma4_unit_trapezoid(const Poset& x, const Poset& s) {
  detail::require_same_ground_set(x, s);
  IntervalMap ivx = canonical_interval_rep(x);
  IntervalMap ivs = unit_interval_rep(s);

  // Scale the interval representation so the longest interval has length 1.
  Rational maxlen = ivx.max_length();
  if (maxlen > 0) ivx = ivx.scaled(Rational(1) / maxlen);

  // Scale the unit representation so distinct endpoints sit at least 2 apart.
  std::vector<Rational> endpoints;
  for (auto& [e, iv] : ivs.items) {
    endpoints.push_back(iv.lo);
    endpoints.push_back(iv.hi);
  }
  std::sort(endpoints.begin(), endpoints.end());
  Rational min_gap = 0;
  for (std::size_t i = 0; i + 1 < endpoints.size(); ++i) {
    Rational g = endpoints[i + 1] - endpoints[i];
    if (g > 0 && (min_gap == 0 || g < min_gap)) min_gap = g;
  }
  Rational factor = 1;
  if (min_gap > 0 && min_gap < 2) factor = Rational(2) / min_gap;
  if (factor < 1) factor = 1;
  ivs = ivs.scaled(factor);
  const Rational k = factor;  // common length after scaling

  // Stretch each upper interval so its length plus the lower length is k+1.
  std::vector<Rational> before, after;
  IntervalMap stretched;
  for (auto& [e, iv] : ivs.items) {
    Rational xlen = ivx.at(e).length();
    Rational new_hi = iv.lo + (k + 1 - xlen);
    stretched.items.push_back({e, Interval(iv.lo, new_hi)});
    before.push_back(iv.lo);
    before.push_back(iv.hi);
    after.push_back(iv.lo);
    after.push_back(new_hi);
  }
  detail::assert_endpoint_order_preserved(before, after);
  if (!stretched.induced_order().same_order(s))
    throw std::logic_error("stretched intervals stopped representing the semiorder");

  Representation rep;
  for (const auto& e : x.elements()) rep.add(e, Trapezoid(ivx.at(e), stretched.at(e)));

  Poset expected = Poset::intersection(x, s);
  if (!rep.induced_order().same_order(expected))
    throw std::logic_error("lemma4 output does not induce the intersection");
  if (!rep.property_set().has(RepProperty::Unit))
    throw std::logic_error("lemma4 output is not a unit representation");
  return rep;
}

// Intersection of an interval order and a linear order is a proper
// parallelogram order; upper intervals follow the cumulative formula with
// gap 1 between consecutive elements in the linear order.
inline Representation lemma5_proper_parallelogram(const Poset& x, const Poset& linear) {
  detail::require_same_ground_set(x, linear);
  if (!linear.is_linear()) throw PosetError("second argument must be a linear order");
  IntervalMap ivx = canonical_interval_rep(x);

  Poset order = linear.some_linear_extension();  // yields the sorted chain
  Representation rep;
  Rational cursor = 0;
  std::vector<std::pair<std::string, Interval>> upper;
  for (const auto& e : order.elements()) {
    Rational len = ivx.at(e).length();
    upper.push_back({e, Interval(cursor, cursor + len)});
    cursor += len + 1;
  }
  for (const auto& e : x.elements()) {
    const Interval* up = nullptr;
    for (auto& [id, iv] : upper)
      if (id == e) up = &iv;
    rep.add(e, Trapezoid(ivx.at(e), *up));
  }

  Poset expected = Poset::intersection(x, linear);
  if (!rep.induced_order().same_order(expected))
    throw std::logic_error("lemma5 output does not induce the intersection");
  PropertyFlags flags = rep.property_set();
  if (!flags.has(RepProperty::Parallelogram) || !flags.has(RepProperty::Proper))
    throw std::logic_error("lemma5 output is not a proper parallelogram representation");
  return rep;
}

// Any interval order is a unit trapezoid order: intersect with a linear
// extension viewed as a semiorder.
inline Representation thm6_unit_trapezoid(const Poset& interval_order) {
  Poset l = interval_order.some_linear_extension();
  Representation rep = lemma4_unit_trapezoid(interval_order, l);
  if (!rep.induced_order().same_order(interval_order))
    throw std::logic_error("thm6 unit output changed the order");
  return rep;
}

// Any interval order is a proper parallelogram order.
inline Representation thm6_proper_parallelogram(const Poset& interval_order) {
  Poset l = interval_order.some_linear_extension();
  Representation rep = lemma5_proper_parallelogram(interval_order, l);
  if (!rep.induced_order().same_order(interval_order))
    throw std::logic_error("thm6 parallelogram output changed the order");
  return rep;
}

// Semiorder dimension at most 2 gives a unit parallelogram representation:
// unit interval representations of the two semiorders, one per baseline.
inline Representation lemma7_forward(const Poset& s, const Poset& t) {
  detail::require_same_ground_set(s, t);
  IntervalMap lower = unit_interval_rep(s);
  IntervalMap upper = unit_interval_rep(t);
  Representation rep;
  for (const auto& e : s.elements()) rep.add(e, Trapezoid(lower.at(e), upper.at(e)));

  Poset expected = Poset::intersection(s, t);
  if (!rep.induced_order().same_order(expected))
    throw std::logic_error("lemma7 output does not induce the intersection");
  PropertyFlags flags = rep.property_set();
  if (!flags.has(RepProperty::Unit) || !flags.has(RepProperty::Parallelogram))
    throw std::logic_error("lemma7 output is not a unit parallelogram representation");
  return rep;
}

// Reverse direction: a unit parallelogram representation splits into the two
// baseline-induced interval orders, each certified a semiorder.
inline std::pair<Poset, Poset> lemma7_reverse(const Representation& rep) {
  PropertyFlags flags = rep.property_set();
  if (!flags.has(RepProperty::Unit) || !flags.has(RepProperty::Parallelogram))
    throw GeometryError("representation is not unit parallelogram");
  IntervalMap lower, upper;
  for (auto& [e, t] : rep.items()) {
    lower.items.push_back({e, t.lower});
    upper.items.push_back({e, t.upper});
  }
  Poset s = lower.induced_order();
  Poset t = upper.induced_order();
  for (const Poset* p : {&s, &t}) {
    if (p->has_pattern(pattern_two_plus_two()) || p->has_pattern(pattern_three_plus_one()))
      throw std::logic_error("baseline order of a unit parallelogram representation "
                             "must be a semiorder");
  }
  return {s, t};
}

}  // namespace trapo
