#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "trapo/constructions.hpp"
#include "trapo/oracle.hpp"
#include "trapo/poset.hpp"

namespace trapo {

enum class OrderClass : int {
  TRAP = 0,
  P_TRAP = 1,
  U_TRAP = 2,
  PGRAM = 3,
  P_PGRAM = 4,
  U_PGRAM = 5,
  INTERVAL = 6,
};

inline const char* class_name(OrderClass c) {
  switch (c) {
    case OrderClass::TRAP: return "TRAP";
    case OrderClass::P_TRAP: return "P_TRAP";
    case OrderClass::U_TRAP: return "U_TRAP";
    case OrderClass::PGRAM: return "PGRAM";
    case OrderClass::P_PGRAM: return "P_PGRAM";
    case OrderClass::U_PGRAM: return "U_PGRAM";
    case OrderClass::INTERVAL: return "INTERVAL";
  }
  return "?";
}

constexpr int kClassCount = 7;

// Inclusion edges X -> Y: membership in X implies membership in Y.
inline const std::vector<std::pair<OrderClass, OrderClass>>& class_edges() {
  static const std::vector<std::pair<OrderClass, OrderClass>> edges = {
      {OrderClass::U_PGRAM, OrderClass::P_PGRAM}, {OrderClass::U_PGRAM, OrderClass::U_TRAP},
      {OrderClass::P_PGRAM, OrderClass::PGRAM},   {OrderClass::P_PGRAM, OrderClass::P_TRAP},
      {OrderClass::U_TRAP, OrderClass::P_TRAP},   {OrderClass::PGRAM, OrderClass::TRAP},
      {OrderClass::P_TRAP, OrderClass::TRAP},     {OrderClass::INTERVAL, OrderClass::U_TRAP},
      {OrderClass::INTERVAL, OrderClass::P_PGRAM}};
  return edges;
}

// Membership verdicts for the hierarchy classes; classes the budget could
// not settle are reported as unresolved, never guessed.
struct ClassSet {
  unsigned members = 0;
  unsigned unresolved = 0;

  bool is_member(OrderClass c) const { return members & (1u << static_cast<int>(c)); }
  bool is_unresolved(OrderClass c) const { return unresolved & (1u << static_cast<int>(c)); }
  void set_member(OrderClass c) { members |= 1u << static_cast<int>(c); }
  void set_unresolved(OrderClass c) { unresolved |= 1u << static_cast<int>(c); }
  void clear_unresolved(OrderClass c) { unresolved &= ~(1u << static_cast<int>(c)); }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < kClassCount; ++i) {
      OrderClass c = static_cast<OrderClass>(i);
      if (!is_member(c) && !is_unresolved(c)) continue;
      if (!s.empty()) s += ",";
      s += class_name(c);
      if (is_unresolved(c)) s += "?";
    }
    return s.empty() ? "-" : s;
  }
};

// Up-closure along the inclusion edges; unresolved entries are ignored.
inline bool hierarchy_check(const ClassSet& cs) {
  for (auto& [from, to] : class_edges())
    if (cs.is_member(from) && !cs.is_member(to)) return false;
  return true;
}

inline bool is_interval_order(const Poset& p) { return !p.has_pattern(pattern_two_plus_two()); }

inline std::optional<std::map<std::string, std::string>> interval_order_obstruction(const Poset& p) {
  return p.find_pattern(pattern_two_plus_two());
}

inline bool is_semiorder(const Poset& p) {
  return !p.has_pattern(pattern_two_plus_two()) && !p.has_pattern(pattern_three_plus_one());
}

// Places an order in the hierarchy: interval orders get their classes
// constructively, the rest is settled through oracle queries ordered so that
// up-closure skips implied ones.
inline ClassSet classify(const Poset& p, long long budget_ms = -1) {
  ClassSet cs;
  if (p.empty()) {  // vacuously everything
    for (int i = 0; i < kClassCount; ++i) cs.set_member(static_cast<OrderClass>(i));
    return cs;
  }
  auto deadline_start = std::chrono::steady_clock::now();
  auto remaining = [&]() -> long long {
    if (budget_ms < 0) return -1;
    auto used = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - deadline_start)
                    .count();
    return budget_ms > used ? budget_ms - used : 0;
  };

  std::array<int, kClassCount> state;  // -1 unknown, 0 out, 1 in
  state.fill(-1);
  auto propagate = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [from, to] : class_edges()) {
        int f = static_cast<int>(from), t = static_cast<int>(to);
        if (state[f] == 1 && state[t] != 1) {
          state[t] = 1;
          changed = true;
        }
        if (state[t] == 0 && state[f] != 0) {
          state[f] = 0;
          changed = true;
        }
      }
    }
  };

  if (is_interval_order(p)) {
    // Constructive: the two theorem constructions self-verify.
    thm6_unit_trapezoid(p);
    thm6_proper_parallelogram(p);
    state[static_cast<int>(OrderClass::INTERVAL)] = 1;
    propagate();
  } else {
    state[static_cast<int>(OrderClass::INTERVAL)] = 0;
  }

  struct Query {
    OrderClass cls;
    PropertyQuery q;
  };
  auto mk = [](bool pr, bool un, bool pg) {
    PropertyQuery q;
    q.proper = pr;
    q.unit = un;
    q.parallelogram = pg;
    return q;
  };
  const std::vector<Query> queries = {
      {OrderClass::TRAP, mk(false, false, false)},
      {OrderClass::P_TRAP, mk(true, false, false)},
      {OrderClass::U_TRAP, mk(false, true, false)},
      {OrderClass::PGRAM, mk(false, false, true)},
      {OrderClass::P_PGRAM, mk(true, false, true)},
      {OrderClass::U_PGRAM, mk(false, true, true)},
  };
  for (auto& query : queries) {
    int idx = static_cast<int>(query.cls);
    if (state[idx] != -1) continue;
    OracleOptions opt;
    opt.budget_ms = remaining();
    if (opt.budget_ms == 0) continue;  // out of budget: leave unresolved
    OracleResult r = exists_representation(p, query.q, opt);
    if (r.status == OracleStatus::Found)
      state[idx] = 1;
    else if (r.status == OracleStatus::NotExist)
      state[idx] = 0;
    propagate();
  }

  for (int i = 0; i < kClassCount; ++i) {
    if (state[i] == 1)
      cs.set_member(static_cast<OrderClass>(i));
    else if (state[i] == -1)
      cs.set_unresolved(static_cast<OrderClass>(i));
  }
  if (!hierarchy_check(cs)) throw std::logic_error("classify produced a non-up-closed set");
  return cs;
}

}  // namespace trapo
