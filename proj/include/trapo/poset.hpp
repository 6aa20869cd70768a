#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trapo {

struct PosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite strict partial order over opaque string ids. The relation is kept
// transitively closed at all times; covers are recomputed on demand.
// Element count is capped at 32 so a row fits in one mask word.
class Poset {
 public:
  Poset() = default;

  // `covers` may be any relation pairs; the transitive closure is applied.
  // Throws PosetError on unknown ids, duplicate ids, or cycles.
  static Poset from_relations(std::vector<std::string> elements,
                              const std::vector<std::pair<std::string, std::string>>& relations) {
    Poset p;
    if (elements.size() > kMaxElements) throw PosetError("too many elements (max 32)");
    p.elems_ = std::move(elements);
    for (std::size_t i = 0; i < p.elems_.size(); ++i) {
      if (p.index_.count(p.elems_[i])) throw PosetError("duplicate element id: " + p.elems_[i]);
      p.index_[p.elems_[i]] = i;
    }
    p.up_.assign(p.elems_.size(), 0);
    for (const auto& [a, b] : relations) {
      std::size_t i = p.index_of(a), j = p.index_of(b);
      if (i == j) throw PosetError("not a partial order");
      p.up_[i] |= bit(j);
    }
    p.close();
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.up_[i] & bit(i)) throw PosetError("not a partial order");
    return p;
  }

  static Poset chain(const std::vector<std::string>& elements) {
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i + 1 < elements.size(); ++i) rel.push_back({elements[i], elements[i + 1]});
    return from_relations(elements, rel);
  }

  static Poset antichain(const std::vector<std::string>& elements) {
    return from_relations(elements, {});
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<std::string>& elements() const { return elems_; }
  const std::string& element(std::size_t i) const { return elems_[i]; }

  bool has_element(const std::string& id) const { return index_.count(id) != 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw PosetError("unknown element id: " + id);
    return it->second;
  }

  bool less(std::size_t i, std::size_t j) const { return (up_[i] & bit(j)) != 0; }
  bool less(const std::string& a, const std::string& b) const { return less(index_of(a), index_of(b)); }
  bool comparable(std::size_t i, std::size_t j) const { return i != j && (less(i, j) || less(j, i)); }
  bool incomparable(std::size_t i, std::size_t j) const { return i != j && !comparable(i, j); }

  std::vector<std::pair<std::string, std::string>> relation_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (less(i, j)) out.push_back({elems_[i], elems_[j]});
    return out;
  }

  // Cover pairs (i ≺ j with nothing in between), recomputed on demand.
  std::vector<std::pair<std::string, std::string>> cover_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (!less(i, j)) continue;
        bool cover = true;
        for (std::size_t k = 0; cover && k < size(); ++k)
          if (less(i, k) && less(k, j)) cover = false;
        if (cover) out.push_back({elems_[i], elems_[j]});
      }
    return out;
  }

  std::size_t relation_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (less(i, j)) ++n;
    return n;
  }

  std::vector<std::pair<std::size_t, std::size_t>> incomparable_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (incomparable(i, j)) out.push_back({i, j});
    return out;
  }

  // Order axioms; construction maintains them, exposed for tests.
  bool valid() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (up_[i] & bit(i)) return false;
      for (std::size_t j = 0; j < size(); ++j) {
        if (!less(i, j)) continue;
        if (less(j, i)) return false;
        if ((up_[j] & ~up_[i]) != 0) return false;  // transitivity
      }
    }
    return true;
  }

  Poset restriction(const std::vector<std::string>& keep) const {
    std::vector<std::pair<std::string, std::string>> rel;
    for (const auto& a : keep)
      for (const auto& b : keep)
        if (a != b && less(a, b)) rel.push_back({a, b});
    for (const auto& a : keep) index_of(a);
    return from_relations(keep, rel);
  }

  Poset dual() const {
    std::vector<std::pair<std::string, std::string>> rel;
    for (auto& [a, b] : relation_pairs()) rel.push_back({b, a});
    return from_relations(elems_, rel);
  }

  // Union of the two orders over disjoint element sets; ids clashing with an
  // existing one get a disambiguating suffix.
  static Poset disjoint_union(const Poset& p, const Poset& q) { return combine(p, q, false); }

  // Disjoint union plus every element of p below every element of q.
  static Poset series_sum(const Poset& p, const Poset& q) { return combine(p, q, true); }

  // Intersection of the relations; requires the same ground set.
  static Poset intersection(const Poset& p, const Poset& q) {
    if (p.size() != q.size()) throw PosetError("ground sets differ");
    for (const auto& e : p.elems_)
      if (!q.has_element(e)) throw PosetError("ground sets differ");
    std::vector<std::pair<std::string, std::string>> rel;
    for (auto& [a, b] : p.relation_pairs())
      if (q.less(a, b)) rel.push_back({a, b});
    return from_relations(p.elems_, rel);
  }

  bool is_linear() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!comparable(i, j)) return false;
    return true;
  }

  bool contains_relations_of(const Poset& p) const {
    for (auto& [a, b] : p.relation_pairs())
      if (!less(a, b)) return false;
    return true;
  }

  // A linear extension, deterministic (smallest available index first).
  Poset some_linear_extension() const {
    std::vector<std::string> order;
    std::uint32_t placed = 0;
    for (std::size_t step = 0; step < size(); ++step) {
      for (std::size_t i = 0; i < size(); ++i) {
        if (placed & bit(i)) continue;
        bool minimal = true;
        for (std::size_t j = 0; minimal && j < size(); ++j)
          if (!(placed & bit(j)) && less(j, i)) minimal = false;
        if (minimal) {
          order.push_back(elems_[i]);
          placed |= bit(i);
          break;
        }
      }
    }
    return chain(order);
  }

  // Counts linear extensions by downset DP.
  unsigned long long count_linear_extensions() const {
    std::vector<std::uint32_t> down(size(), 0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (less(j, i)) down[i] |= bit(j);
    std::vector<unsigned long long> ways(1ull << size(), 0);
    ways[0] = 1;
    for (std::uint32_t mask = 0; mask < (1u << size()); ++mask) {
      if (!ways[mask]) continue;
      for (std::size_t i = 0; i < size(); ++i)
        if (!(mask & bit(i)) && (down[i] & ~mask) == 0) ways[mask | bit(i)] += ways[mask];
    }
    return ways[(1u << size()) - 1];
  }

  // Injective map m with restriction(P, image(m)) isomorphic to `pattern`,
  // found by backtracking with degree pruning. Map is pattern id -> this id.
  std::optional<std::map<std::string, std::string>> find_pattern(const Poset& pattern) const {
    if (pattern.size() > size()) return std::nullopt;
    std::vector<std::size_t> assign(pattern.size());
    std::uint32_t used = 0;
    auto pat_deg = degrees(pattern);
    auto own_deg = degrees(*this);
    std::optional<std::map<std::string, std::string>> result;
    backtrack_pattern(pattern, pat_deg, own_deg, 0, assign, used, result);
    return result;
  }

  bool has_pattern(const Poset& pattern) const { return find_pattern(pattern).has_value(); }

  // Relation-preserving bijection, if any, as this id -> other id.
  std::optional<std::map<std::string, std::string>> isomorphism_to(const Poset& other) const {
    if (size() != other.size()) return std::nullopt;
    if (relation_count() != other.relation_count()) return std::nullopt;
    auto m = other.find_pattern(*this);  // injective + same size = bijection
    return m;
  }

  bool is_isomorphic(const Poset& other) const { return isomorphism_to(other).has_value(); }

  // Every element outside A relates identically to all of A. Non-trivial
  // means 2 <= |A| < n.
  bool is_autonomous(const std::vector<std::string>& ids) const {
    std::uint32_t a = 0;
    for (const auto& e : ids) a |= bit(index_of(e));
    return is_autonomous_mask(a);
  }

  std::vector<std::vector<std::string>> autonomous_sets() const {
    std::vector<std::vector<std::string>> out;
    if (size() < 2) return out;
    for (std::uint32_t a = 1; a < (1u << size()); ++a) {
      auto k = popcount(a);
      if (k < 2 || k >= size()) continue;
      if (!is_autonomous_mask(a)) continue;
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < size(); ++i)
        if (a & bit(i)) ids.push_back(elems_[i]);
      out.push_back(std::move(ids));
    }
    return out;
  }

  // Reverses the order inside an autonomous set, keeping everything else.
  Poset reverse_autonomous(const std::vector<std::string>& ids) const {
    std::uint32_t a = 0;
    for (const auto& e : ids) a |= bit(index_of(e));
    if (!is_autonomous_mask(a)) throw PosetError("set is not autonomous");
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (!less(i, j)) continue;
        bool inside = (a & bit(i)) && (a & bit(j));
        if (inside)
          rel.push_back({elems_[j], elems_[i]});
        else
          rel.push_back({elems_[i], elems_[j]});
      }
    return from_relations(elems_, rel);
  }

  bool same_order(const Poset& other) const {
    if (elems_ != other.elems_) return false;
    return up_ == other.up_;
  }

 private:
  static constexpr std::size_t kMaxElements = 32;
  static std::uint32_t bit(std::size_t i) { return 1u << i; }
  static std::size_t popcount(std::uint32_t v) {
    std::size_t n = 0;
    for (; v; v &= v - 1) ++n;
    return n;
  }

  void close() {
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t i = 0; i < size(); ++i)
        if (up_[i] & bit(k)) up_[i] |= up_[k];
  }

  static Poset combine(const Poset& p, const Poset& q, bool series) {
    std::vector<std::string> elems = p.elems_;
    std::set<std::string> taken(elems.begin(), elems.end());
    std::vector<std::string> qnames;
    for (const auto& e : q.elems_) {
      std::string name = e;
      int suffix = 2;
      while (taken.count(name)) name = e + "_" + std::to_string(suffix++);
      taken.insert(name);
      qnames.push_back(name);
      elems.push_back(name);
    }
    std::vector<std::pair<std::string, std::string>> rel = p.relation_pairs();
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        if (q.less(i, j)) rel.push_back({qnames[i], qnames[j]});
    if (series)
      for (const auto& a : p.elems_)
        for (const auto& b : qnames) rel.push_back({a, b});
    return from_relations(elems, rel);
  }

  struct Degrees {
    std::vector<std::size_t> below, above;
  };

  static Degrees degrees(const Poset& p) {
    Degrees d;
    d.below.assign(p.size(), 0);
    d.above.assign(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p.less(i, j)) {
          ++d.above[i];
          ++d.below[j];
        }
    return d;
  }

  void backtrack_pattern(const Poset& pattern, const Degrees& pd, const Degrees& od,
                         std::size_t next, std::vector<std::size_t>& assign, std::uint32_t& used,
                         std::optional<std::map<std::string, std::string>>& result) const {
    if (result) return;
    if (next == pattern.size()) {
      std::map<std::string, std::string> m;
      for (std::size_t i = 0; i < pattern.size(); ++i) m[pattern.elems_[i]] = elems_[assign[i]];
      result = std::move(m);
      return;
    }
    for (std::size_t cand = 0; cand < size(); ++cand) {
      if (used & bit(cand)) continue;
      if (od.below[cand] < pd.below[next] || od.above[cand] < pd.above[next]) continue;
      bool ok = true;
      for (std::size_t k = 0; ok && k < next; ++k) {
        if (pattern.less(k, next) != less(assign[k], cand)) ok = false;
        if (ok && pattern.less(next, k) != less(cand, assign[k])) ok = false;
      }
      if (!ok) continue;
      assign[next] = cand;
      used |= bit(cand);
      backtrack_pattern(pattern, pd, od, next + 1, assign, used, result);
      used &= ~bit(cand);
      if (result) return;
    }
  }

  bool is_autonomous_mask(std::uint32_t a) const {
    std::optional<std::size_t> probe;
    for (std::size_t i = 0; i < size(); ++i)
      if (a & bit(i)) {
        probe = i;
        break;
      }
    if (!probe) return false;
    for (std::size_t z = 0; z < size(); ++z) {
      if (a & bit(z)) continue;
      for (std::size_t i = 0; i < size(); ++i) {
        if (!(a & bit(i))) continue;
        if (less(z, i) != less(z, *probe)) return false;
        if (less(i, z) != less(*probe, z)) return false;
      }
    }
    return true;
  }

  std::vector<std::string> elems_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::uint32_t> up_;
};

}  // namespace trapo
