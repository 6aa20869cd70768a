#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/geometry.hpp"
#include "trapo/linear.hpp"
#include "trapo/poset.hpp"

namespace trapo {

// Requested representation properties; "trapezoid" itself is implicit.
// rectangle is normalized to imply parallelogram.
struct PropertyQuery {
  bool proper = false;
  bool unit = false;
  bool parallelogram = false;
  bool rectangle = false;

  static PropertyQuery none() { return {}; }

  PropertyQuery normalized() const {
    PropertyQuery q = *this;
    if (q.rectangle) q.parallelogram = true;
    return q;
  }

  PropertyFlags as_flags() const {
    PropertyFlags f;
    if (proper) f.set(RepProperty::Proper);
    if (unit) f.set(RepProperty::Unit);
    if (parallelogram) f.set(RepProperty::Parallelogram);
    if (rectangle) f.set(RepProperty::Rectangle);
    return f;
  }

  bool subset_of(const PropertyQuery& other) const {
    return (!proper || other.proper) && (!unit || other.unit) &&
           (!parallelogram || other.parallelogram) && (!rectangle || other.rectangle);
  }

  std::string to_string() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!s.empty()) s += ",";
      s += name;
    };
    add(proper, "proper");
    add(unit, "unit");
    add(parallelogram, "parallelogram");
    add(rectangle, "rectangle");
    return s.empty() ? "trapezoid" : s;
  }
};

// Positive boolean combination of endpoint comparisons. Negation is applied
// by the caller through relation flips, so no negation nodes exist.
struct EndpointFormula {
  enum class Kind { Atom, And, Or };

  struct Atom {
    std::string left_elem;
    char left_end;  // one of l r L R
    Rel rel;
    std::string right_elem;
    char right_end;
  };

  Kind kind = Kind::Atom;
  Atom atom;
  std::vector<EndpointFormula> children;

  static EndpointFormula make_atom(std::string le, char lw, Rel r, std::string re, char rw) {
    EndpointFormula f;
    f.kind = Kind::Atom;
    f.atom = Atom{std::move(le), lw, r, std::move(re), rw};
    return f;
  }
  static EndpointFormula make_and(std::vector<EndpointFormula> fs) {
    EndpointFormula f;
    f.kind = Kind::And;
    f.children = std::move(fs);
    return f;
  }
  static EndpointFormula make_or(std::vector<EndpointFormula> fs) {
    EndpointFormula f;
    f.kind = Kind::Or;
    f.children = std::move(fs);
    return f;
  }
};

// One disjunct of a clause: a conjunction of constraints taken together.
struct Branch {
  std::vector<LinearConstraint> constraints;
  std::string label;
};

struct Clause {
  std::vector<Branch> branches;
  std::string label;
};

// Conjunctive base plus pending disjunction clauses. Solutions are exactly
// the representations of the poset with the required properties.
struct DisjunctiveEncoding {
  ConstraintSystem base;
  std::vector<Clause> clauses;
  std::vector<std::string> elements;
  std::vector<int> var_l, var_r, var_L, var_R;
  int var_c = -1;
  std::size_t strict_comparability_conjuncts = 0;

  int endpoint_var(const std::string& elem, char which) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] != elem) continue;
      switch (which) {
        case 'l': return var_l[i];
        case 'r': return var_r[i];
        case 'L': return var_L[i];
        case 'R': return var_R[i];
        default: throw std::invalid_argument("endpoint must be one of l r L R");
      }
    }
    throw PosetError("unknown element id: " + elem);
  }

  Representation assignment_to_rep(const std::vector<Rational>& a) const {
    Representation rep;
    for (std::size_t i = 0; i < elements.size(); ++i)
      rep.add(elements[i],
              Trapezoid::of(a[var_l[i]], a[var_r[i]], a[var_L[i]], a[var_R[i]]));
    return rep;
  }
};

inline LinearConstraint diff_constraint(int a, int b, Rel rel) {
  return LinearConstraint({{a, Rational(1)}, {b, Rational(-1)}}, rel, Rational(0));
}

// Builds the linear-arithmetic encoding of "P has a representation with the
// properties in q".
inline DisjunctiveEncoding encode(const Poset& p, const PropertyQuery& query) {
  PropertyQuery q = query.normalized();
  DisjunctiveEncoding enc;
  enc.elements = p.elements();
  std::size_t n = p.size();
  enc.var_l.resize(n);
  enc.var_r.resize(n);
  enc.var_L.resize(n);
  enc.var_R.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    enc.var_l[i] = enc.base.add_var("l_" + p.element(i));
    enc.var_r[i] = enc.base.add_var("r_" + p.element(i));
    enc.var_L[i] = enc.base.add_var("L_" + p.element(i));
    enc.var_R[i] = enc.base.add_var("R_" + p.element(i));
  }
  if (q.unit) enc.var_c = enc.base.add_var("c");

  for (std::size_t i = 0; i < n; ++i) {
    enc.base.add(diff_constraint(enc.var_l[i], enc.var_r[i], Rel::LE));
    enc.base.add(diff_constraint(enc.var_L[i], enc.var_R[i], Rel::LE));
  }

  // Symmetry breaking: pin the lower-left endpoint of one minimal element.
  for (std::size_t i = 0; i < n; ++i) {
    bool minimal = true;
    for (std::size_t j = 0; minimal && j < n; ++j)
      if (p.less(j, i)) minimal = false;
    if (minimal) {
      enc.base.add({{enc.var_l[i], Rational(1)}}, Rel::EQ, Rational(0));
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.less(i, j)) {
        enc.base.add(diff_constraint(enc.var_r[i], enc.var_l[j], Rel::LT));
        enc.base.add(diff_constraint(enc.var_R[i], enc.var_L[j], Rel::LT));
        enc.strict_comparability_conjuncts += 2;
      }

  if (q.unit) {
    for (std::size_t i = 0; i < n; ++i)
      enc.base.add({{enc.var_r[i], Rational(1)},
                    {enc.var_l[i], Rational(-1)},
                    {enc.var_R[i], Rational(1)},
                    {enc.var_L[i], Rational(-1)},
                    {enc.var_c, Rational(-1)}},
                   Rel::EQ, Rational(0));
    enc.base.add({{enc.var_c, Rational(-1)}}, Rel::LT, Rational(0));  // c > 0
  }
  if (q.parallelogram)
    for (std::size_t i = 0; i < n; ++i)
      enc.base.add({{enc.var_r[i], Rational(1)},
                    {enc.var_l[i], Rational(-1)},
                    {enc.var_R[i], Rational(-1)},
                    {enc.var_L[i], Rational(1)}},
                   Rel::EQ, Rational(0));
  if (q.rectangle)
    for (std::size_t i = 0; i < n; ++i) {
      enc.base.add(diff_constraint(enc.var_l[i], enc.var_L[i], Rel::EQ));
      enc.base.add(diff_constraint(enc.var_r[i], enc.var_R[i], Rel::EQ));
    }

  // Incomparable pairs: kill both comparability directions.
  for (auto& [i, j] : p.incomparable_pairs()) {
    auto one_direction = [&](std::size_t a, std::size_t b) {
      Clause cl;
      cl.label = "incomp " + p.element(a) + " " + p.element(b);
      Branch lower;
      lower.label = "lower overlap";
      lower.constraints.push_back(diff_constraint(enc.var_l[b], enc.var_r[a], Rel::LE));
      Branch upper;
      upper.label = "upper overlap";
      upper.constraints.push_back(diff_constraint(enc.var_L[b], enc.var_R[a], Rel::LE));
      cl.branches = {std::move(lower), std::move(upper)};
      enc.clauses.push_back(std::move(cl));
    };
    one_direction(i, j);
    one_direction(j, i);
  }

  // Proper: nobody properly contains anybody. Containment between comparable
  // elements is impossible, so only incomparable ordered pairs get a clause.
  if (q.proper) {
    for (auto& [i, j] : p.incomparable_pairs()) {
      auto no_containment = [&](std::size_t big, std::size_t small) {
        Clause cl;
        cl.label = "proper " + p.element(big) + " !> " + p.element(small);
        auto simple = [&](int a, int b, const char* lbl) {
          Branch br;
          br.label = lbl;
          br.constraints.push_back(diff_constraint(a, b, Rel::LT));
          cl.branches.push_back(std::move(br));
        };
        simple(enc.var_l[big], enc.var_l[small], "l strict right");
        simple(enc.var_L[big], enc.var_L[small], "L strict right");
        simple(enc.var_r[small], enc.var_r[big], "r strict left");
        simple(enc.var_R[small], enc.var_R[big], "R strict left");
        Branch eq;
        eq.label = "equal trapezoids";
        eq.constraints.push_back(diff_constraint(enc.var_l[big], enc.var_l[small], Rel::EQ));
        eq.constraints.push_back(diff_constraint(enc.var_r[big], enc.var_r[small], Rel::EQ));
        eq.constraints.push_back(diff_constraint(enc.var_L[big], enc.var_L[small], Rel::EQ));
        eq.constraints.push_back(diff_constraint(enc.var_R[big], enc.var_R[small], Rel::EQ));
        cl.branches.push_back(std::move(eq));
        enc.clauses.push_back(std::move(cl));
      };
      no_containment(i, j);
      no_containment(j, i);
    }
  }
  return enc;
}

namespace detail {

inline LinearConstraint formula_atom_constraint(const DisjunctiveEncoding& enc,
                                                const EndpointFormula::Atom& a, bool negate) {
  int left = enc.endpoint_var(a.left_elem, a.left_end);
  int right = enc.endpoint_var(a.right_elem, a.right_end);
  if (!negate) {
    if (a.rel == Rel::EQ) return diff_constraint(left, right, Rel::EQ);
    return diff_constraint(left, right, a.rel);
  }
  // negations: !(a<b) -> b<=a ; !(a<=b) -> b<a ; equality handled by caller
  if (a.rel == Rel::LT) return diff_constraint(right, left, Rel::LE);
  if (a.rel == Rel::LE) return diff_constraint(right, left, Rel::LT);
  throw std::invalid_argument("negated equality atom must be split by the caller");
}

// Clause list for the NEGATION of f (AND of clauses; clause = OR of branches;
// branch = conjunction). Distribution is exact; formulas here are small.
inline std::vector<Clause> negate_to_clauses(const DisjunctiveEncoding& enc,
                                             const EndpointFormula& f) {
  switch (f.kind) {
    case EndpointFormula::Kind::Atom: {
      Clause cl;
      cl.label = "neg atom";
      if (f.atom.rel == Rel::EQ) {
        Branch b1, b2;
        b1.label = "left smaller";
        b1.constraints.push_back(formula_atom_constraint(
            enc, EndpointFormula::Atom{f.atom.left_elem, f.atom.left_end, Rel::LT,
                                       f.atom.right_elem, f.atom.right_end},
            false));
        b2.label = "right smaller";
        b2.constraints.push_back(formula_atom_constraint(
            enc, EndpointFormula::Atom{f.atom.right_elem, f.atom.right_end, Rel::LT,
                                       f.atom.left_elem, f.atom.left_end},
            false));
        cl.branches = {std::move(b1), std::move(b2)};
      } else {
        Branch b;
        b.label = "flipped";
        b.constraints.push_back(formula_atom_constraint(enc, f.atom, true));
        cl.branches.push_back(std::move(b));
      }
      return {cl};
    }
    case EndpointFormula::Kind::Or: {
      // !(f1 | f2 | ...) = !f1 & !f2 & ...
      std::vector<Clause> out;
      for (auto& ch : f.children) {
        auto sub = negate_to_clauses(enc, ch);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case EndpointFormula::Kind::And: {
      // !(f1 & f2) = !f1 | !f2: cross-distribute the children's clause sets,
      // one merged clause per way of picking a clause from every child.
      std::vector<std::vector<Clause>> parts;
      for (auto& ch : f.children) parts.push_back(negate_to_clauses(enc, ch));
      std::vector<Clause> result;
      std::vector<std::size_t> pick(parts.size(), 0);
      for (;;) {
        Clause merged;
        merged.label = "neg and";
        for (std::size_t i = 0; i < parts.size(); ++i)
          for (auto& br : parts[i][pick[i]].branches) merged.branches.push_back(br);
        result.push_back(std::move(merged));
        std::size_t k = 0;
        while (k < parts.size() && ++pick[k] == parts[k].size()) {
          pick[k] = 0;
          ++k;
        }
        if (k == parts.size()) break;
      }
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

}  // namespace trapo
