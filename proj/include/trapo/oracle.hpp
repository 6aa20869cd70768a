#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/encode.hpp"
#include "trapo/geometry.hpp"
#include "trapo/linear.hpp"
#include "trapo/poset.hpp"

namespace trapo {

enum class OracleStatus { Found, NotExist, Timeout };

struct OracleResult {
  OracleStatus status = OracleStatus::Timeout;
  std::optional<Representation> witness;
  std::uint64_t nodes = 0;       // decision nodes explored
  std::uint64_t lp_calls = 0;    // full solver invocations
  double seconds = 0.0;
};

enum class ValidityStatus { Valid, CounterRep, Timeout };

struct ValidityResult {
  ValidityStatus status = ValidityStatus::Timeout;
  std::optional<Representation> counter;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct OracleOptions {
  long long budget_ms = -1;       // wall clock; negative = unlimited
  bool reverse_clauses = false;   // verdict must not depend on this
  std::ostream* trace = nullptr;  // one line per decision when set
};

namespace detail {

class Timeout {};

// Branch-and-prune over the disjunctive encoding: pick an unresolved clause,
// try each disjunct as added conjuncts, prune with the difference closure,
// decide leaves with the exact solver.
class DpllSearch {
 public:
  DpllSearch(const DisjunctiveEncoding& enc, const OracleOptions& opt)
      : enc_(enc), opt_(opt), start_(std::chrono::steady_clock::now()) {
    sys_ = enc.base;
    clauses_ = enc.clauses;
    if (opt.reverse_clauses) std::reverse(clauses_.begin(), clauses_.end());
    resolved_.assign(clauses_.size(), 0);
  }

  // Throws Timeout when the budget runs out.
  std::optional<std::vector<Rational>> run() {
    ++nodes_;
    return search(0);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t lp_calls() const { return lp_calls_; }

 private:
  void check_budget() const {
    if (opt_.budget_ms < 0) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    if (ms > opt_.budget_ms) throw Timeout{};
  }

  DifferenceClosure closure_of_base() const {
    DifferenceClosure dc(sys_.var_count());
    for (auto& c : sys_.constraints()) dc.add(c);
    return dc;
  }

  static bool branch_viable(const DifferenceClosure& base_dc, const Branch& br) {
    DifferenceClosure dc = base_dc;
    for (auto& c : br.constraints) dc.add(c);
    return !dc.infeasible();
  }

  bool witness_settles(const std::vector<Rational>& a) const {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (resolved_[ci]) continue;
      bool ok = false;
      for (auto& br : clauses_[ci].branches) {
        bool all = true;
        for (auto& c : br.constraints)
          if (!c.satisfied(a)) {
            all = false;
            break;
          }
        if (all) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  void trace_line(int depth, const std::string& text) const {
    if (!opt_.trace) return;
    for (int i = 0; i < depth; ++i) *opt_.trace << "  ";
    *opt_.trace << text << "\n";
  }

  std::optional<std::vector<Rational>> search(int depth) {
    check_budget();

    DifferenceClosure base_dc = closure_of_base();
    if (base_dc.infeasible()) {
      trace_line(depth, "prune: difference cycle");
      return std::nullopt;
    }

    // Unit propagation: drop disjuncts refuted by the difference closure,
    // promote singleton clauses into the base.
    std::vector<std::vector<std::size_t>> viable(clauses_.size());
    std::vector<std::size_t> touched;
    std::size_t base_mark = sys_.constraints().size();
    std::vector<std::size_t> resolved_here;
    bool dead = false;
    bool changed = true;
    while (changed && !dead) {
      changed = false;
      for (std::size_t ci = 0; ci < clauses_.size() && !dead; ++ci) {
        if (resolved_[ci]) continue;
        check_budget();
        viable[ci].clear();
        for (std::size_t bi = 0; bi < clauses_[ci].branches.size(); ++bi)
          if (branch_viable(base_dc, clauses_[ci].branches[bi])) viable[ci].push_back(bi);
        if (viable[ci].empty()) {
          trace_line(depth, "prune: clause [" + clauses_[ci].label + "] exhausted");
          dead = true;
          break;
        }
        if (viable[ci].size() == 1) {
          const Branch& br = clauses_[ci].branches[viable[ci][0]];
          trace_line(depth, "propagate [" + clauses_[ci].label + "] -> " + br.label);
          for (auto& c : br.constraints) {
            sys_.add(c);
            base_dc.add(c);
          }
          resolved_[ci] = 1;
          resolved_here.push_back(ci);
          if (base_dc.infeasible()) dead = true;
          changed = true;
        }
      }
    }

    std::optional<std::vector<Rational>> answer;
    if (!dead) answer = decide(depth, viable);

    // undo propagation
    sys_.truncate(base_mark);
    for (std::size_t ci : resolved_here) resolved_[ci] = 0;
    (void)touched;
    return answer;
  }

  std::optional<std::vector<Rational>> decide(int depth,
                                              const std::vector<std::vector<std::size_t>>& viable) {
    ++lp_calls_;
    SolveResult base_res = solve(sys_);
    if (!base_res.feasible) {
      trace_line(depth, "prune: base infeasible");
      return std::nullopt;
    }
    if (witness_settles(base_res.assignment)) {
      trace_line(depth, "witness satisfies all clauses");
      return base_res.assignment;
    }

    // smallest clause first, then first in order
    int pick = -1;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (resolved_[ci]) continue;
      if (pick < 0 || viable[ci].size() < viable[pick].size()) pick = static_cast<int>(ci);
    }
    if (pick < 0) return base_res.assignment;  // nothing unresolved

    resolved_[pick] = 1;
    for (std::size_t bi : viable[pick]) {
      const Branch& br = clauses_[pick].branches[bi];
      trace_line(depth, "branch [" + clauses_[pick].label + "] -> " + br.label);
      std::size_t mark = sys_.constraints().size();
      for (auto& c : br.constraints) sys_.add(c);
      ++nodes_;
      auto sub = search(depth + 1);
      sys_.truncate(mark);
      if (sub) {
        resolved_[pick] = 0;
        return sub;
      }
    }
    resolved_[pick] = 0;
    return std::nullopt;
  }

  const DisjunctiveEncoding& enc_;
  OracleOptions opt_;
  std::chrono::steady_clock::time_point start_;
  ConstraintSystem sys_;
  std::vector<Clause> clauses_;
  std::vector<char> resolved_;
  std::uint64_t nodes_ = 0;
  std::uint64_t lp_calls_ = 0;
};

}  // namespace detail

// Complete decision procedure: does p admit a representation with the
// requested properties? Found witnesses are re-verified through the geometry
// module before being returned; NotExist only after all branches are refuted.
inline OracleResult exists_representation(const Poset& p, const PropertyQuery& query,
                                          const OracleOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  OracleResult out;
  PropertyQuery q = query.normalized();

  if (p.empty()) {
    out.status = OracleStatus::Found;
    out.witness = Representation{};
    return out;
  }

  DisjunctiveEncoding enc = encode(p, q);
  detail::DpllSearch dpll(enc, opt);
  try {
    auto model = dpll.run();
    out.nodes = dpll.nodes();
    out.lp_calls = dpll.lp_calls();
    if (model) {
      Representation rep = enc.assignment_to_rep(*model);
      if (!rep.induced_order().same_order(p))
        throw std::logic_error("oracle witness induces the wrong order");
      if (!rep.property_set().contains(q.as_flags()))
        throw std::logic_error("oracle witness misses required properties");
      out.status = OracleStatus::Found;
      out.witness = std::move(rep);
    } else {
      out.status = OracleStatus::NotExist;
    }
  } catch (detail::Timeout&) {
    out.nodes = dpll.nodes();
    out.lp_calls = dpll.lp_calls();
    out.status = OracleStatus::Timeout;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// Does the endpoint formula hold in every representation of p with the
// properties in q? Decided by refuting "some representation violates it".
inline ValidityResult holds_in_all(const Poset& p, const PropertyQuery& query,
                                   const EndpointFormula& formula, const OracleOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  ValidityResult out;
  PropertyQuery q = query.normalized();
  DisjunctiveEncoding enc = encode(p, q);
  for (auto& cl : detail::negate_to_clauses(enc, formula)) enc.clauses.push_back(cl);

  detail::DpllSearch dpll(enc, opt);
  try {
    auto model = dpll.run();
    out.nodes = dpll.nodes();
    if (model) {
      Representation rep = enc.assignment_to_rep(*model);
      if (!rep.induced_order().same_order(p))
        throw std::logic_error("counter-representation induces the wrong order");
      out.status = ValidityStatus::CounterRep;
      out.counter = std::move(rep);
    } else {
      out.status = ValidityStatus::Valid;
    }
  } catch (detail::Timeout&) {
    out.nodes = dpll.nodes();
    out.status = ValidityStatus::Timeout;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// ---------------------------------------------------------------------------
// Independent small-scale oracle: enumerate the coupled weak orderings of the
// endpoint values on each baseline, check each with a single conjunctive
// solve. Exponential; restricted to |P| <= 3.
// ---------------------------------------------------------------------------
namespace detail {

// All weak orders of `count` tokens as block index vectors; filter is called
// on complete assignments.
template <typename Fn>
void enumerate_weak_orders(std::size_t count, std::vector<int>& blocks, std::size_t next,
                           int max_block, Fn&& fn) {
  if (next == count) {
    fn(blocks);
    return;
  }
  for (int b = 0; b <= max_block + 1; ++b) {
    blocks[next] = b;
    enumerate_weak_orders(count, blocks, next + 1, std::max(max_block, b), fn);
  }
  blocks[next] = -1;
}

}  // namespace detail

// Enumerates all order types of the endpoint sequences on the two baselines
// (coupled through the poset's comparabilities) and tests each candidate with
// one conjunctive feasibility call. Must agree with exists_representation.
inline OracleResult naive_oracle(const Poset& p, const PropertyQuery& query) {
  if (p.size() > 3) throw std::invalid_argument("naive_oracle is restricted to posets of size <= 3");
  OracleResult out;
  PropertyQuery q = query.normalized();
  if (p.empty()) {
    out.status = OracleStatus::Found;
    out.witness = Representation{};
    return out;
  }
  std::size_t n = p.size();
  // token layout per baseline: 2i = left endpoint of element i, 2i+1 = right
  std::vector<std::vector<int>> bottoms;
  {
    std::vector<int> blocks(2 * n, -1);
    detail::enumerate_weak_orders(2 * n, blocks, 0, -1, [&](const std::vector<int>& bl) {
      for (std::size_t i = 0; i < n; ++i)
        if (bl[2 * i] > bl[2 * i + 1]) return;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (p.less(i, j) && !(bl[2 * i + 1] < bl[2 * j])) return;  // r_i < l_j required
      bottoms.push_back(bl);
    });
  }

  auto try_pair = [&](const std::vector<int>& bot, const std::vector<int>& top) -> bool {
    // induced order check
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        bool before = bot[2 * i + 1] < bot[2 * j] && top[2 * i + 1] < top[2 * j];
        if (before != p.less(i, j)) return false;
      }
    if (q.proper) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          bool contains = bot[2 * i] <= bot[2 * j] && top[2 * i] <= top[2 * j] &&
                          bot[2 * j + 1] <= bot[2 * i + 1] && top[2 * j + 1] <= top[2 * i + 1];
          bool equal = bot[2 * i] == bot[2 * j] && top[2 * i] == top[2 * j] &&
                       bot[2 * j + 1] == bot[2 * i + 1] && top[2 * j + 1] == top[2 * i + 1];
          if (contains && !equal) return false;
        }
    }
    // metric feasibility for the chosen order types
    ConstraintSystem sys;
    int nb = 1 + *std::max_element(bot.begin(), bot.end());
    int nt = 1 + *std::max_element(top.begin(), top.end());
    std::vector<int> bv(nb), tv(nt);
    for (int b = 0; b < nb; ++b) bv[b] = sys.add_var("u" + std::to_string(b));
    for (int t = 0; t < nt; ++t) tv[t] = sys.add_var("v" + std::to_string(t));
    for (int b = 0; b + 1 < nb; ++b) sys.add(diff_constraint(bv[b], bv[b + 1], Rel::LT));
    for (int t = 0; t + 1 < nt; ++t) sys.add(diff_constraint(tv[t], tv[t + 1], Rel::LT));
    int cvar = -1;
    if (q.unit) cvar = sys.add_var("c");
    for (std::size_t i = 0; i < n && q.unit; ++i)
      sys.add({{bv[bot[2 * i + 1]], Rational(1)},
               {bv[bot[2 * i]], Rational(-1)},
               {tv[top[2 * i + 1]], Rational(1)},
               {tv[top[2 * i]], Rational(-1)},
               {cvar, Rational(-1)}},
              Rel::EQ, Rational(0));
    if (q.unit) sys.add({{cvar, Rational(-1)}}, Rel::LT, Rational(0));
    for (std::size_t i = 0; i < n && q.parallelogram; ++i)
      sys.add({{bv[bot[2 * i + 1]], Rational(1)},
               {bv[bot[2 * i]], Rational(-1)},
               {tv[top[2 * i + 1]], Rational(-1)},
               {tv[top[2 * i]], Rational(1)}},
              Rel::EQ, Rational(0));
    for (std::size_t i = 0; i < n && q.rectangle; ++i) {
      sys.add(diff_constraint(bv[bot[2 * i]], tv[top[2 * i]], Rel::EQ));
      sys.add(diff_constraint(bv[bot[2 * i + 1]], tv[top[2 * i + 1]], Rel::EQ));
    }
    SolveResult sr = solve(sys);
    if (!sr.feasible) return false;
    Representation rep;
    for (std::size_t i = 0; i < n; ++i)
      rep.add(p.element(i), Trapezoid::of(sr.assignment[bv[bot[2 * i]]],
                                          sr.assignment[bv[bot[2 * i + 1]]],
                                          sr.assignment[tv[top[2 * i]]],
                                          sr.assignment[tv[top[2 * i + 1]]]));
    if (!rep.induced_order().same_order(p)) return false;
    if (!rep.property_set().contains(q.as_flags())) return false;
    out.witness = std::move(rep);
    return true;
  };

  for (const auto& bot : bottoms) {
    std::vector<int> blocks(2 * n, -1);
    bool found = false;
    detail::enumerate_weak_orders(2 * n, blocks, 0, -1, [&](const std::vector<int>& top) {
      if (found) return;
      for (std::size_t i = 0; i < n; ++i)
        if (top[2 * i] > top[2 * i + 1]) return;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (p.less(i, j) && !(top[2 * i + 1] < top[2 * j])) return;
      if (try_pair(bot, top)) found = true;
    });
    if (found) {
      out.status = OracleStatus::Found;
      return out;
    }
  }
  out.status = OracleStatus::NotExist;
  return out;
}

}  // namespace trapo
