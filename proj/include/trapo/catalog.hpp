#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/classifier.hpp"
#include "trapo/io.hpp"
#include "trapo/oracle.hpp"
#include "trapo/poset.hpp"

namespace trapo {

struct CatalogError : std::runtime_error {
  std::string assertion;
  CatalogError(std::string a, const std::string& entry)
      : std::runtime_error("catalog entry '" + entry + "' failed assertion: " + a),
        assertion(std::move(a)) {}
};

// ---------------------------------------------------------------------------
// The example orders, transcribed from the source figures. The Hasse diagrams
// are pinned by the textual constraints checked in catalog_load and by the
// verification runs: the jaw transcription is the one whose forced-relation
// formula is valid in every trapezoid representation.
// ---------------------------------------------------------------------------

inline const char* kTwoTwoText =
    "# figure: classification item 1 (the order 2+2)\n"
    "poset twotwo\n"
    "elements: a b c d\n"
    "relations: a<b c<d\n";

inline const char* kJawText =
    "# figure: jaworder\n"
    "# every trapezoid representation forces the rigid endpoint chain\n"
    "poset jaw\n"
    "elements: B C D E F G 1 2 3\n"
    "relations: B<C C<D E<D E<F E<3 F<G 1<D 1<2 2<3\n";

inline const char* kNonparallelText =
    "# figure: nonparallel\n"
    "# the jaw order with one additional point N between the teeth\n"
    "poset nonparallel\n"
    "elements: B C D E F G N 1 2 3\n"
    "relations: B<C C<D E<F E<N E<3 F<G N<D 1<D 1<2 2<3\n";

inline const char* kPputText =
    "# figure: pput\n"
    "# proper parallelogram and unit trapezoid, but not unit parallelogram;\n"
    "# x is contained by the jaws of a and h\n"
    "poset pput\n"
    "elements: 1 2 3 4 a b c d e f g h x\n"
    "relations: 1<2 1<e 2<3 2<h 3<4 a<f a<x b<c c<h d<3 d<e d<h e<4 f<g x<4 x<h\n";

inline const char* kUglymessText =
    "# figure: uglymess\n"
    "# unit trapezoid and parallelogram, but not proper parallelogram;\n"
    "# two and a half jaw structures sharing the frame 1 2 3 c d f g\n"
    "poset uglymess\n"
    "elements: 1 2 3 a b c d e f g h i x y\n"
    "relations: 1<2 1<h 1<y 2<3 a<c a<x a<y b<c b<y c<d e<f e<y f<g g<h g<i x<3 x<h x<i "
    "y<3 y<i\n";

inline std::vector<std::string> catalog_names() {
  return {"twotwo", "jaw", "nonparallel", "pput", "uglymess"};
}

inline const char* catalog_text(const std::string& name) {
  if (name == "twotwo") return kTwoTwoText;
  if (name == "jaw") return kJawText;
  if (name == "nonparallel") return kNonparallelText;
  if (name == "pput") return kPputText;
  if (name == "uglymess") return kUglymessText;
  throw std::invalid_argument("unknown catalog entry: " + name);
}

// The forced-relation formula of the jaw lemma: the fence lays out on one
// baseline while the teeth E and D poke into 2 there and flank 2's interval
// on the other baseline.
inline EndpointFormula jaw_lemma_formula() {
  using F = EndpointFormula;
  auto disjunct = [&](bool chain_on_lower) {
    char lo = chain_on_lower ? 'l' : 'L', hi = chain_on_lower ? 'r' : 'R';
    char LO = chain_on_lower ? 'L' : 'l', HI = chain_on_lower ? 'R' : 'r';
    std::vector<F> fs;
    fs.push_back(F::make_atom("B", hi, Rel::LT, "C", lo));
    fs.push_back(F::make_atom("C", lo, Rel::LE, "1", hi));
    fs.push_back(F::make_atom("1", hi, Rel::LT, "2", lo));
    fs.push_back(F::make_atom("2", lo, Rel::LE, "E", hi));
    fs.push_back(F::make_atom("E", hi, Rel::LT, "D", lo));
    fs.push_back(F::make_atom("D", lo, Rel::LE, "2", hi));
    fs.push_back(F::make_atom("2", hi, Rel::LT, "3", lo));
    fs.push_back(F::make_atom("3", lo, Rel::LE, "F", hi));
    fs.push_back(F::make_atom("F", hi, Rel::LT, "G", lo));
    fs.push_back(F::make_atom("E", HI, Rel::LT, "2", LO));
    fs.push_back(F::make_atom("2", LO, Rel::LE, "2", HI));
    fs.push_back(F::make_atom("2", HI, Rel::LT, "D", LO));
    return F::make_and(fs);
  };
  return F::make_or({disjunct(true), disjunct(false)});
}

// In every trapezoid representation of the nonparallel order, N's interval
// strictly contains 2's on one of the two baselines.
inline EndpointFormula nonparallel_containment_formula() {
  using F = EndpointFormula;
  return F::make_or({F::make_and({F::make_atom("N", 'L', Rel::LT, "2", 'L'),
                                  F::make_atom("2", 'R', Rel::LT, "N", 'R')}),
                     F::make_and({F::make_atom("N", 'l', Rel::LT, "2", 'l'),
                                  F::make_atom("2", 'r', Rel::LT, "N", 'r')})});
}

struct ClassFact {
  OrderClass cls;
  bool member;
};

struct CatalogEntry {
  std::string name;
  Poset poset;
  std::vector<ClassFact> expected;
};

namespace detail {

inline void require(bool ok, const char* what, const std::string& entry) {
  if (!ok) throw CatalogError(what, entry);
}

}  // namespace detail

// Loads an entry and checks all of its textual validation assertions; any
// failure aborts with the assertion named.
inline CatalogEntry catalog_load(const std::string& name) {
  using detail::require;
  CatalogEntry entry;
  entry.name = name;
  entry.poset = parse_poset_file(catalog_text(name)).poset;
  const Poset& p = entry.poset;

  auto jaw = [] { return parse_poset_file(kJawText).poset; };

  if (name == "twotwo") {
    Poset sum = Poset::disjoint_union(Poset::chain({"a", "b"}), Poset::chain({"a", "b"}));
    require(p.is_isomorphic(sum), "equals the disjoint union of two 2-chains", name);
    entry.expected = {{OrderClass::U_PGRAM, true}, {OrderClass::INTERVAL, false}};
  } else if (name == "jaw") {
    require(p.size() == 9, "has the nine elements B C D E F G 1 2 3", name);
    for (const char* e : {"B", "C", "D", "E", "F", "G", "1", "2", "3"})
      require(p.has_element(e), "has the nine elements B C D E F G 1 2 3", name);
    require(p.less("1", "2") && p.less("2", "3"), "1<2<3 is a chain", name);
    require(p.incomparable(p.index_of("E"), p.index_of("2")) &&
                p.incomparable(p.index_of("D"), p.index_of("2")),
            "the teeth E and D are incomparable to 2", name);
    require(p.dual().is_isomorphic(p), "self-dual under reversal", name);
    entry.expected = {{OrderClass::TRAP, true}};
  } else if (name == "nonparallel") {
    std::vector<std::string> keep;
    for (const auto& e : p.elements())
      if (e != "N") keep.push_back(e);
    require(p.restriction(keep).is_isomorphic(jaw()),
            "the jaw order with one additional point N added", name);
    require(p.incomparable(p.index_of("N"), p.index_of("1")) &&
                p.incomparable(p.index_of("N"), p.index_of("3")),
            "N is incomparable to both 1 and 3", name);
    require(p.less("E", "N") && p.less("N", "D"), "N lies between the two teeth", name);
    require(p.less("1", "2") && p.less("2", "3"), "1<2<3 is a chain", name);
    entry.expected = {{OrderClass::U_TRAP, true}, {OrderClass::PGRAM, false}};
  } else if (name == "pput") {
    require(p.size() == 13, "ground set is a..h, 1..4 and x", name);
    for (const char* e : {"a", "b", "c", "d", "e", "f", "g", "h", "1", "2", "3", "4", "x"})
      require(p.has_element(e), "ground set is a..h, 1..4 and x", name);
    require(p.less("a", "x") && p.less("x", "h"), "x is contained by the jaws of a and h",
            name);
    require(p.restriction({"b", "c", "2", "3", "4", "a", "h", "f", "g"}).is_isomorphic(jaw()),
            "the jaw structure around 3 is a copy of the jaw order", name);
    entry.expected = {{OrderClass::P_PGRAM, true},
                      {OrderClass::U_TRAP, true},
                      {OrderClass::U_PGRAM, false}};
  } else if (name == "uglymess") {
    require(p.size() == 14, "14 elements 1 2 3 a..i x y", name);
    for (const char* e :
         {"1", "2", "3", "a", "b", "c", "d", "e", "f", "g", "h", "i", "x", "y"})
      require(p.has_element(e), "14 elements 1 2 3 a..i x y", name);
    require(p.restriction({"1", "2", "3", "a", "c", "d", "f", "g", "i"}).is_isomorphic(jaw()),
            "restriction A = {1,2,3,a,c,d,f,g,i} is a copy of the jaw order", name);
    require(p.restriction({"1", "2", "3", "b", "c", "d", "f", "g", "i"}).is_isomorphic(jaw()),
            "restriction B = {1,2,3,b,c,d,f,g,i} is a copy of the jaw order", name);
    require(p.restriction({"1", "2", "3", "a", "c", "d", "f", "g", "h"}).is_isomorphic(jaw()),
            "restriction C = {1,2,3,a,c,d,f,g,h} is a copy of the jaw order", name);
    require(p.less("e", "f"), "e is below f", name);
    require(p.less("e", "y"), "y is above e", name);
    require(p.incomparable(p.index_of("x"), p.index_of("y")), "x is incomparable to y", name);
    require(p.incomparable(p.index_of("b"), p.index_of("h")), "b is incomparable to h", name);
    require(p.incomparable(p.index_of("x"), p.index_of("1")), "x is incomparable to 1", name);
    require(p.less("a", "x") && p.less("x", "h"), "x lies between a and h", name);
    require(p.less("b", "y") && p.less("y", "i"), "y lies between b and i", name);
    entry.expected = {{OrderClass::U_TRAP, true},
                      {OrderClass::PGRAM, true},
                      {OrderClass::P_PGRAM, false}};
  } else {
    throw std::invalid_argument("unknown catalog entry: " + name);
  }
  return entry;
}

// ---------------------------------------------------------------------------
// Scripted verification of the classification results for one entry.
// ---------------------------------------------------------------------------

enum class CheckOutcome { Pass, Fail, Timeout };

struct VerifyRow {
  std::string check;
  CheckOutcome outcome = CheckOutcome::Timeout;
  bool extended = false;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::string entry;
  std::vector<VerifyRow> rows;

  bool failed() const {
    for (auto& r : rows)
      if (r.outcome == CheckOutcome::Fail) return true;
    return false;
  }
  bool timed_out() const {
    for (auto& r : rows)
      if (r.outcome == CheckOutcome::Timeout) return true;
    return false;
  }

  std::string to_string() const {
    std::string s = "entry " + entry + "\n";
    for (auto& r : rows) {
      const char* oc = r.outcome == CheckOutcome::Pass
                           ? "PASS"
                           : r.outcome == CheckOutcome::Fail ? "FAIL" : "TIMEOUT";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%8.2fs", r.seconds);
      s += std::string("  ") + oc + buf + "  " + r.check +
           (r.extended ? "  [extended]" : "") + (r.detail.empty() ? "" : "  (" + r.detail + ")") +
           "\n";
    }
    return s;
  }
};

// Runs the entry's scripted checks. Timeouts are reported per sub-check,
// never as failures. Negative directions on the two large orders run under
// the extended budget and can be excluded wholesale.
inline VerifyReport verify_entry(const CatalogEntry& entry, long long budget_ms = 120000,
                                 long long extended_budget_ms = 3600000,
                                 bool include_extended = true) {
  VerifyReport report;
  report.entry = entry.name;
  const Poset& p = entry.poset;

  auto query = [](bool pr, bool un, bool pg) {
    PropertyQuery q;
    q.proper = pr;
    q.unit = un;
    q.parallelogram = pg;
    return q;
  };
  auto run_exists = [&](const std::string& label, PropertyQuery q, bool expect_found,
                        bool extended) {
    if (extended && !include_extended) return;
    OracleOptions opt;
    opt.budget_ms = extended ? extended_budget_ms : budget_ms;
    OracleResult r = exists_representation(p, q, opt);
    VerifyRow row;
    row.check = label;
    row.extended = extended;
    row.seconds = r.seconds;
    if (r.status == OracleStatus::Timeout) {
      row.outcome = CheckOutcome::Timeout;
      row.detail = "explored " + std::to_string(r.nodes) + " nodes";
    } else {
      bool found = r.status == OracleStatus::Found;
      row.outcome = (found == expect_found) ? CheckOutcome::Pass : CheckOutcome::Fail;
      row.detail = found ? "Found" : "NotExist";
    }
    report.rows.push_back(row);
  };
  auto run_valid = [&](const std::string& label, const EndpointFormula& f) {
    OracleOptions opt;
    opt.budget_ms = budget_ms;
    ValidityResult v = holds_in_all(p, PropertyQuery::none(), f, opt);
    VerifyRow row;
    row.check = label;
    row.seconds = v.seconds;
    if (v.status == ValidityStatus::Timeout)
      row.outcome = CheckOutcome::Timeout;
    else if (v.status == ValidityStatus::Valid)
      row.outcome = CheckOutcome::Pass;
    else {
      row.outcome = CheckOutcome::Fail;
      row.detail = "counter-representation exists";
    }
    report.rows.push_back(row);
  };

  if (entry.name == "twotwo") {
    run_exists("unit parallelogram representation exists", query(false, true, true), true, false);
    VerifyRow row;
    row.check = "not an interval order (contains a 2+2)";
    auto t0 = std::chrono::steady_clock::now();
    row.outcome = is_interval_order(p) ? CheckOutcome::Fail : CheckOutcome::Pass;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.rows.push_back(row);
  } else if (entry.name == "jaw") {
    run_exists("trapezoid representation exists", query(false, false, false), true, false);
    run_valid("forced endpoint relations hold in every representation", jaw_lemma_formula());
  } else if (entry.name == "nonparallel") {
    run_exists("unit representation exists", query(false, true, false), true, false);
    run_exists("no parallelogram representation", query(false, false, true), false, false);
    run_valid("N's interval strictly contains 2's on one baseline",
              nonparallel_containment_formula());
  } else if (entry.name == "pput") {
    run_exists("proper parallelogram representation exists", query(true, false, true), true,
               false);
    run_exists("unit representation exists", query(false, true, false), true, false);
    run_exists("no unit parallelogram representation", query(false, true, true), false, true);
  } else if (entry.name == "uglymess") {
    run_exists("unit representation exists", query(false, true, false), true, false);
    run_exists("parallelogram representation exists", query(false, false, true), true, false);
    run_exists("no proper parallelogram representation", query(true, false, true), false, true);
  }
  return report;
}

}  // namespace trapo
