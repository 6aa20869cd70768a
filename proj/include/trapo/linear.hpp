#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/rational.hpp"

namespace trapo {

enum class Rel { LT, LE, EQ };

inline const char* rel_name(Rel r) {
  switch (r) {
    case Rel::LT: return "<";
    case Rel::LE: return "<=";
    default: return "=";
  }
}

// Sum of terms REL rhs. Terms are kept sorted by variable with nonzero
// coefficients combined.
struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;
  Rel rel = Rel::LE;
  Rational rhs = 0;

  LinearConstraint() = default;
  LinearConstraint(std::vector<std::pair<int, Rational>> t, Rel r, Rational b)
      : rel(r), rhs(std::move(b)) {
    std::sort(t.begin(), t.end(), [](auto& a, auto& b2) { return a.first < b2.first; });
    for (auto& [v, c] : t) {
      if (!terms.empty() && terms.back().first == v)
        terms.back().second += c;
      else
        terms.push_back({v, c});
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](auto& p) { return p.second == 0; }),
                terms.end());
  }

  Rational evaluate(const std::vector<Rational>& assignment) const {
    Rational s = 0;
    for (auto& [v, c] : terms) s += c * assignment.at(v);
    return s;
  }

  bool satisfied(const std::vector<Rational>& assignment) const {
    Rational s = evaluate(assignment);
    switch (rel) {
      case Rel::LT: return s < rhs;
      case Rel::LE: return s <= rhs;
      default: return s == rhs;
    }
  }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string lhs;
    for (auto& [v, c] : terms) {
      std::string name = v < static_cast<int>(names.size()) ? names[v] : "v" + std::to_string(v);
      if (lhs.empty()) {
        if (c == 1)
          lhs = name;
        else if (c == -1)
          lhs = "-" + name;
        else
          lhs = trapo::to_string(c) + "*" + name;
      } else if (c == 1) {
        lhs += " + " + name;
      } else if (c == -1) {
        lhs += " - " + name;
      } else if (c > 0) {
        lhs += " + " + trapo::to_string(c) + "*" + name;
      } else {
        lhs += " - " + trapo::to_string(-c) + "*" + name;
      }
    }
    if (lhs.empty()) lhs = "0";
    return lhs + " " + rel_name(rel) + " " + trapo::to_string(rhs);
  }
};

class ConstraintSystem {
 public:
  int add_var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_[name] = id;
    return id;
  }

  int var(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unregistered variable: " + name);
    return it->second;
  }

  std::size_t var_count() const { return names_.size(); }
  const std::vector<std::string>& var_names() const { return names_; }

  void add(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs) {
    LinearConstraint c(std::move(terms), rel, std::move(rhs));
    for (auto& [v, coef] : c.terms)
      if (v < 0 || v >= static_cast<int>(names_.size()))
        throw std::out_of_range("constraint uses unregistered variable");
    constraints_.push_back(std::move(c));
  }

  void add(LinearConstraint c) {
    for (auto& [v, coef] : c.terms)
      if (v < 0 || v >= static_cast<int>(names_.size()))
        throw std::out_of_range("constraint uses unregistered variable");
    constraints_.push_back(std::move(c));
  }

  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  // Drops constraints added after the marker; variables stay registered.
  void truncate(std::size_t count) {
    if (count < constraints_.size()) constraints_.resize(count);
  }

  // Plain-text dump, one "lhs REL rhs" line per constraint.
  std::string dump() const {
    std::string out;
    for (auto& c : constraints_) out += c.to_string(names_) + "\n";
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<LinearConstraint> constraints_;
};

struct SolveResult {
  bool feasible = false;
  std::vector<Rational> assignment;  // indexed by system variable id
};

namespace detail {

// ---------------------------------------------------------------------------
// Difference subsystem reasoning. Constraints of the shape x - y REL 0,
// x REL 0 or -x REL 0 become edges of a reachability structure; a cycle
// through a strict edge witnesses infeasibility. Complete for systems made
// only of such constraints, a sound prefilter otherwise.
// ---------------------------------------------------------------------------
class DifferenceClosure {
 public:
  explicit DifferenceClosure(std::size_t vars) : n_(vars + 1), zero_(vars) {
    words_ = (n_ + 63) / 64;
    le_.assign(n_ * words_, 0);
    lt_.assign(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i) set_bit(le_, i, i);
  }

  // Returns false when the constraint is not difference-shaped (ignored).
  bool add(const LinearConstraint& c) {
    if (c.rhs != 0 || c.terms.size() > 2) return false;
    int pos = -1, neg = -1;
    for (auto& [v, coef] : c.terms) {
      if (coef == 1 && pos < 0)
        pos = v;
      else if (coef == -1 && neg < 0)
        neg = v;
      else
        return false;
    }
    std::size_t from, to;
    if (pos >= 0 && neg >= 0) {
      from = static_cast<std::size_t>(pos);  // pos - neg <= 0  =>  pos <= neg
      to = static_cast<std::size_t>(neg);
    } else if (pos >= 0) {
      from = static_cast<std::size_t>(pos);
      to = zero_;
    } else if (neg >= 0) {
      from = zero_;
      to = static_cast<std::size_t>(neg);
    } else {
      if (c.rel == Rel::LT) contradiction_ = true;  // "0 < 0"
      return true;
    }
    add_edge(from, to, c.rel == Rel::LT);
    if (c.rel == Rel::EQ) add_edge(to, from, false);
    return true;
  }

  bool infeasible() const {
    if (contradiction_) return true;
    for (std::size_t i = 0; i < n_; ++i)
      if (get_bit(lt_, i, i)) return true;
    return false;
  }

  // True when a strict cycle passes through both u-ish chains: helper for
  // callers that want to know whether u <= v is already entailed.
  bool entails_le(std::size_t u, std::size_t v) const { return get_bit(le_, u, v); }
  bool entails_lt(std::size_t u, std::size_t v) const { return get_bit(lt_, u, v); }

  // Integer layering witness; only meaningful when the whole system was
  // difference-shaped and feasible. Values are shifted so the zero node is 0.
  std::vector<Rational> witness(std::size_t vars) const {
    std::vector<long long> level(n_, 0);
    // level(j) = max over i reaching j of level(i) + [strict path]; the
    // relation is transitively closed, so repeated sweeps settle quickly.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) {
          if (i == j) continue;
          long long need = 0;
          if (get_bit(lt_, i, j))
            need = level[i] + 1;
          else if (get_bit(le_, i, j))
            need = level[i];
          else
            continue;
          if (level[j] < need) {
            level[j] = need;
            changed = true;
          }
        }
    }
    std::vector<Rational> out(vars);
    for (std::size_t v = 0; v < vars; ++v) out[v] = Rational(level[v] - level[zero_]);
    return out;
  }

 private:
  void set_bit(std::vector<std::uint64_t>& m, std::size_t row, std::size_t col) {
    m[row * words_ + col / 64] |= (std::uint64_t(1) << (col % 64));
  }
  bool get_bit(const std::vector<std::uint64_t>& m, std::size_t row, std::size_t col) const {
    return (m[row * words_ + col / 64] >> (col % 64)) & 1;
  }

  void or_rows(std::vector<std::uint64_t>& dst, std::size_t drow,
               const std::vector<std::uint64_t>& src, std::size_t srow) {
    for (std::size_t w = 0; w < words_; ++w) dst[drow * words_ + w] |= src[srow * words_ + w];
  }

  // from <= to (strict when requested); closure maintained eagerly.
  void add_edge(std::size_t from, std::size_t to, bool strict) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!get_bit(le_, i, from) && !get_bit(lt_, i, from)) continue;
      bool strict_prefix = get_bit(lt_, i, from) || strict;
      or_rows(le_, i, le_, to);
      or_rows(le_, i, lt_, to);
      if (strict_prefix) {
        or_rows(lt_, i, le_, to);
      }
      or_rows(lt_, i, lt_, to);
    }
  }

  std::size_t n_, words_, zero_;
  bool contradiction_ = false;
  std::vector<std::uint64_t> le_, lt_;
};

// ---------------------------------------------------------------------------
// Exact rational simplex over bounded variables. Strict inequalities share
// one slack variable delta: each "e < b" becomes "e + delta <= b", and delta
// is maximized subject to delta <= 1. The strict system is satisfiable
// exactly when the optimum is positive. Bland's rule (smallest variable
// index) governs entering and leaving choices.
// ---------------------------------------------------------------------------
class Simplex {
 public:
  Simplex(std::size_t structural_vars, const std::vector<LinearConstraint>& constraints)
      : n_struct_(structural_vars) {
    delta_ = static_cast<int>(n_struct_);
    std::size_t total = n_struct_ + 1 + constraints.size();
    lo_.assign(total, Bound{});
    hi_.assign(total, Bound{});
    lo_[delta_] = Bound{true, 0};
    hi_[delta_] = Bound{true, 1};
    beta_.assign(total, Rational(0));

    std::size_t m = constraints.size();
    rows_.assign(m, std::vector<Rational>(total, Rational(0)));
    basic_.resize(m);
    row_of_.assign(total, -1);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = constraints[i];
      int slack = static_cast<int>(n_struct_ + 1 + i);
      for (auto& [v, coef] : c.terms) rows_[i][v] += coef;
      if (c.rel == Rel::LT) rows_[i][delta_] += 1;
      basic_[i] = slack;
      row_of_[slack] = static_cast<int>(i);
      if (c.rel == Rel::EQ) {
        lo_[slack] = Bound{true, c.rhs};
        hi_[slack] = Bound{true, c.rhs};
      } else {
        hi_[slack] = Bound{true, c.rhs};
      }
    }
  }

  bool make_feasible() {
    for (;;) {
      int b = -1;
      bool need_up = false;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        int xb = basic_[i];
        bool low = lo_[xb].set && beta_[xb] < lo_[xb].value;
        bool high = hi_[xb].set && beta_[xb] > hi_[xb].value;
        if ((low || high) && (b < 0 || xb < b)) {
          b = xb;
          need_up = low;
        }
      }
      if (b < 0) return true;
      std::size_t r = static_cast<std::size_t>(row_of_[b]);
      int enter = -1;
      for (int v = 0; v < static_cast<int>(beta_.size()); ++v) {
        if (row_of_[v] >= 0) continue;
        const Rational& a = rows_[r][v];
        if (a == 0) continue;
        bool ok = need_up ? (a > 0 ? can_increase(v) : can_decrease(v))
                          : (a > 0 ? can_decrease(v) : can_increase(v));
        if (ok) {
          enter = v;
          break;
        }
      }
      if (enter < 0) return false;
      const Rational& a = rows_[r][enter];
      Rational target = need_up ? lo_[b].value : hi_[b].value;
      Rational theta = (target - beta_[b]) / a;
      shift_nonbasic(enter, beta_[enter] + theta);
      do_pivot(r, enter);
    }
  }

  // Maximizes delta with Bland's rule; returns the optimum.
  Rational maximize_delta() {
    for (;;) {
      // reduced costs of z = delta over the nonbasic variables
      int drow = row_of_[delta_];
      int enter = -1;
      bool up = true;
      for (int v = 0; v < static_cast<int>(beta_.size()); ++v) {
        if (row_of_[v] >= 0) continue;
        Rational cost = (drow < 0) ? Rational(v == delta_ ? 1 : 0) : rows_[drow][v];
        if (cost == 0) continue;
        if (cost > 0 && can_increase(v)) {
          enter = v;
          up = true;
          break;
        }
        if (cost < 0 && can_decrease(v)) {
          enter = v;
          up = false;
          break;
        }
      }
      if (enter < 0) return beta_[delta_];

      // Ratio test: smallest movement that pins entering or a basic variable
      // to a bound. Ties resolved toward the smallest variable index.
      bool found = false;
      Rational best_room;
      int best_var = -1;
      int best_row = -1;
      auto consider = [&](const Rational& room, int var, int row) {
        if (!found || room < best_room || (room == best_room && var < best_var)) {
          found = true;
          best_room = room;
          best_var = var;
          best_row = row;
        }
      };
      if (up && hi_[enter].set) consider(hi_[enter].value - beta_[enter], enter, -1);
      if (!up && lo_[enter].set) consider(beta_[enter] - lo_[enter].value, enter, -1);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& coef = rows_[i][enter];
        if (coef == 0) continue;
        int xb = basic_[i];
        Rational rate = up ? coef : -coef;  // d beta[xb] / d t with t >= 0
        if (rate > 0 && hi_[xb].set)
          consider((hi_[xb].value - beta_[xb]) / rate, xb, static_cast<int>(i));
        else if (rate < 0 && lo_[xb].set)
          consider((beta_[xb] - lo_[xb].value) / (-rate), xb, static_cast<int>(i));
      }
      if (!found) throw std::logic_error("unbounded objective despite delta cap");
      Rational t = up ? best_room : -best_room;
      if (best_row < 0) {
        shift_nonbasic(enter, beta_[enter] + t);  // bound flip, no pivot
      } else {
        shift_nonbasic(enter, beta_[enter] + t);
        do_pivot(static_cast<std::size_t>(best_row), enter);
      }
    }
  }

  std::vector<Rational> structural_assignment() const {
    return std::vector<Rational>(beta_.begin(), beta_.begin() + n_struct_);
  }
  Rational delta_value() const { return beta_[delta_]; }

 private:
  struct Bound {
    bool set = false;
    Rational value;
  };

  bool can_increase(int v) const { return !hi_[v].set || beta_[v] < hi_[v].value; }
  bool can_decrease(int v) const { return !lo_[v].set || beta_[v] > lo_[v].value; }

  // Move nonbasic variable v, updating every basic value through the rows.
  void shift_nonbasic(int v, const Rational& value) {
    Rational d = value - beta_[v];
    if (d == 0) return;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][v] != 0) beta_[basic_[i]] += rows_[i][v] * d;
    beta_[v] = value;
  }

  // Row algebra only; beta stays consistent because the equations are
  // rewritten equivalently.
  void do_pivot(std::size_t r, int enter) {
    int leave = basic_[r];
    std::vector<Rational>& row = rows_[r];
    Rational a = row[enter];
    if (a == 0) throw std::logic_error("pivot on zero coefficient");
    std::size_t total = beta_.size();
    std::vector<Rational> newrow(total, Rational(0));
    for (std::size_t v = 0; v < total; ++v) {
      if (static_cast<int>(v) == enter || row[v] == 0) continue;
      newrow[v] = -row[v] / a;
    }
    newrow[leave] = Rational(1) / a;
    rows_[r] = std::move(newrow);
    basic_[r] = enter;
    row_of_[enter] = static_cast<int>(r);
    row_of_[leave] = -1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      Rational coef = rows_[i][enter];
      if (coef == 0) continue;
      rows_[i][enter] = 0;
      for (std::size_t v = 0; v < total; ++v)
        if (rows_[r][v] != 0) rows_[i][v] += coef * rows_[r][v];
    }
  }

  std::size_t n_struct_;
  int delta_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basic_;
  std::vector<int> row_of_;  // var -> row index, -1 when nonbasic
  std::vector<Rational> beta_;
  std::vector<Bound> lo_, hi_;
};

inline bool difference_shaped(const LinearConstraint& c) {
  if (c.rhs != 0 || c.terms.size() > 2) return false;
  int pos = 0, neg = 0;
  for (auto& [v, coef] : c.terms) {
    if (coef == 1)
      ++pos;
    else if (coef == -1)
      ++neg;
    else
      return false;
  }
  return pos <= 1 && neg <= 1;
}

}  // namespace detail

// Decides rational feasibility of the conjunction. Every Feasible answer is
// re-verified by exact substitution before returning; the empty system is
// Feasible with the all-zero assignment.
inline SolveResult solve(const ConstraintSystem& sys) {
  SolveResult res;
  std::vector<Rational> witness;

  bool all_diff = true;
  for (auto& c : sys.constraints())
    if (!detail::difference_shaped(c)) {
      all_diff = false;
      break;
    }

  if (all_diff) {
    detail::DifferenceClosure dc(sys.var_count());
    for (auto& c : sys.constraints()) dc.add(c);
    if (dc.infeasible()) return res;
    witness = dc.witness(sys.var_count());
  } else {
    detail::Simplex sx(sys.var_count(), sys.constraints());
    if (!sx.make_feasible()) return res;
    bool has_strict = false;
    for (auto& c : sys.constraints())
      if (c.rel == Rel::LT) {
        has_strict = true;
        break;
      }
    if (has_strict && sx.maximize_delta() <= 0) return res;
    witness = sx.structural_assignment();
  }

  for (auto& c : sys.constraints())
    if (!c.satisfied(witness))
      throw std::logic_error("solver produced an invalid witness for: " +
                             c.to_string(sys.var_names()));
  res.feasible = true;
  res.assignment = std::move(witness);
  return res;
}

}  // namespace trapo
