#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/poset.hpp"
#include "trapo/rational.hpp"

namespace trapo {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw GeometryError("interval with lo > hi");
  }
  Rational length() const { return hi - lo; }
};

// Baselines are the horizontal lines y=0 (lower) and y=1 (upper).
struct Trapezoid {
  Interval lower, upper;

  Trapezoid() = default;
  Trapezoid(Interval lo, Interval up) : lower(std::move(lo)), upper(std::move(up)) {}
  static Trapezoid of(Rational l, Rational r, Rational L, Rational R) {
    return Trapezoid(Interval(std::move(l), std::move(r)), Interval(std::move(L), std::move(R)));
  }

  Rational l() const { return lower.lo; }
  Rational r() const { return lower.hi; }
  Rational L() const { return upper.lo; }
  Rational R() const { return upper.hi; }
  Rational base_length() const { return lower.length(); }    // b(x)
  Rational top_length() const { return upper.length(); }     // t(x)
  Rational area() const { return (base_length() + top_length()) / 2; }

  bool operator==(const Trapezoid& o) const {
    return l() == o.l() && r() == o.r() && L() == o.L() && R() == o.R();
  }
};

// T1 properly contains T2 iff containment holds at both baselines and the
// trapezoids differ. Each side boundary is linear in height, so containment
// at both baselines implies containment at every height.
inline bool properly_contains(const Trapezoid& t1, const Trapezoid& t2) {
  return t1.l() <= t2.l() && t1.L() <= t2.L() && t2.r() <= t1.r() && t2.R() <= t1.R() &&
         !(t1 == t2);
}

enum class RepProperty : unsigned { Proper = 1, Unit = 2, Parallelogram = 4, Rectangle = 8 };

class PropertyFlags {
 public:
  PropertyFlags() = default;
  explicit PropertyFlags(unsigned bits) : bits_(bits) {}

  bool has(RepProperty p) const { return bits_ & static_cast<unsigned>(p); }
  void set(RepProperty p) { bits_ |= static_cast<unsigned>(p); }
  bool contains(const PropertyFlags& other) const { return (bits_ & other.bits_) == other.bits_; }
  unsigned bits() const { return bits_; }
  bool operator==(const PropertyFlags& o) const { return bits_ == o.bits_; }

  std::string to_string() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!s.empty()) s += ",";
      s += name;
    };
    add(has(RepProperty::Proper), "proper");
    add(has(RepProperty::Unit), "unit");
    add(has(RepProperty::Parallelogram), "parallelogram");
    add(has(RepProperty::Rectangle), "rectangle");
    return s.empty() ? "-" : s;
  }

 private:
  unsigned bits_ = 0;
};

// Map element id -> trapezoid, in a fixed element order.
class Representation {
 public:
  Representation() = default;

  void add(const std::string& id, Trapezoid t) {
    for (auto& [e, unused] : items_)
      if (e == id) throw GeometryError("duplicate element id: " + id);
    items_.push_back({id, std::move(t)});
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const std::vector<std::pair<std::string, Trapezoid>>& items() const { return items_; }

  const Trapezoid& at(const std::string& id) const {
    for (auto& [e, t] : items_)
      if (e == id) return t;
    throw GeometryError("unknown element id: " + id);
  }

  bool has(const std::string& id) const {
    for (auto& [e, unused] : items_)
      if (e == id) return true;
    return false;
  }

  // x < y iff x's trapezoid lies strictly to the left of y's on both
  // baselines.
  Poset induced_order() const {
    std::vector<std::string> elems;
    for (auto& [e, unused] : items_) elems.push_back(e);
    std::vector<std::pair<std::string, std::string>> rel;
    for (auto& [a, ta] : items_)
      for (auto& [b, tb] : items_)
        if (&ta != &tb && ta.r() < tb.l() && ta.R() < tb.L()) rel.push_back({a, b});
    return Poset::from_relations(elems, rel);
  }

  PropertyFlags property_set() const {
    if (empty()) throw GeometryError("property_set of empty representation");
    PropertyFlags flags;
    bool proper = true, unit = true, pgram = true, rect = true;
    const Rational common = items_[0].second.base_length() + items_[0].second.top_length();
    for (auto& [e, t] : items_) {
      if (t.base_length() + t.top_length() != common) unit = false;
      if (t.base_length() != t.top_length()) pgram = false;
      if (t.l() != t.L() || t.r() != t.R()) rect = false;
    }
    if (common == 0) unit = false;  // degenerate: a unit representation needs positive area
    for (auto& [a, ta] : items_)
      for (auto& [b, tb] : items_)
        if (&ta != &tb && properly_contains(ta, tb)) proper = false;
    if (proper) flags.set(RepProperty::Proper);
    if (unit) flags.set(RepProperty::Unit);
    if (pgram) flags.set(RepProperty::Parallelogram);
    if (rect) flags.set(RepProperty::Rectangle);
    return flags;
  }

  Representation restrict(const std::vector<std::string>& keep) const {
    Representation out;
    for (const auto& id : keep) out.add(id, at(id));
    return out;
  }

  Representation translate(const Rational& dx) const {
    Representation out;
    for (auto& [e, t] : items_)
      out.add(e, Trapezoid::of(t.l() + dx, t.r() + dx, t.L() + dx, t.R() + dx));
    return out;
  }

  Representation scale(const Rational& c) const {
    if (c <= 0) throw GeometryError("scale factor must be positive");
    Representation out;
    for (auto& [e, t] : items_) out.add(e, Trapezoid::of(t.l() * c, t.r() * c, t.L() * c, t.R() * c));
    return out;
  }

  // Shifts `other` so its minimum endpoint exceeds this one's maximum on both
  // baselines, then unions. Id clashes get a disambiguating suffix.
  Representation concat(const Representation& other) const {
    Representation out = *this;
    if (other.empty()) return out;
    if (empty()) return other;
    Rational hi = max_endpoint();
    Rational lo = other.min_endpoint();
    Rational dx = hi - lo + 1;
    std::set<std::string> taken;
    for (auto& [e, unused] : items_) taken.insert(e);
    for (auto& [e, t] : other.items_) {
      std::string name = e;
      int suffix = 2;
      while (taken.count(name)) name = e + "_" + std::to_string(suffix++);
      taken.insert(name);
      out.add(name, Trapezoid::of(t.l() + dx, t.r() + dx, t.L() + dx, t.R() + dx));
    }
    return out;
  }

  Rational min_endpoint() const {
    if (empty()) throw GeometryError("empty representation");
    Rational m = items_[0].second.l();
    for (auto& [e, t] : items_) m = std::min({m, t.l(), t.L()});
    return m;
  }

  Rational max_endpoint() const {
    if (empty()) throw GeometryError("empty representation");
    Rational m = items_[0].second.r();
    for (auto& [e, t] : items_) m = std::max({m, t.r(), t.R()});
    return m;
  }

 private:
  std::vector<std::pair<std::string, Trapezoid>> items_;
};

// Cross-section of a trapezoid at height h in [0,1]; sides are linear.
inline Interval cross_section(const Trapezoid& t, const Rational& h) {
  if (h < 0 || h > 1) throw GeometryError("cross-section height outside [0,1]");
  Rational lo = t.l() + (t.L() - t.l()) * h;
  Rational hi = t.r() + (t.R() - t.r()) * h;
  return Interval(lo, hi);
}

}  // namespace trapo
