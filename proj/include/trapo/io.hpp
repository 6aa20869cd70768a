#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trapo/geometry.hpp"
#include "trapo/poset.hpp"
#include "trapo/rational.hpp"

namespace trapo {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

struct NamedPoset {
  std::string name;
  Poset poset;
};

struct NamedRep {
  std::string name;
  Representation rep;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace detail

// Grammar (line oriented, '#' comments):
//   poset <name>
//   elements: id id ...
//   relations: a<b c<d ...
// Relation pairs may be any generating set; the transitive closure applies.
inline NamedPoset parse_poset_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_header = false, have_elements = false;
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> relations;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> relation_lines;

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(detail::strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "poset") {
      if (have_header) throw ParseError(lineno, "duplicate poset header");
      if (toks.size() != 2) throw ParseError(lineno, "expected: poset <name>");
      name = toks[1];
      have_header = true;
    } else if (toks[0] == "elements:") {
      if (!have_header) throw ParseError(lineno, "elements before poset header");
      if (have_elements) throw ParseError(lineno, "duplicate elements line");
      elements.assign(toks.begin() + 1, toks.end());
      have_elements = true;
    } else if (toks[0] == "relations:") {
      if (!have_elements) throw ParseError(lineno, "relations before elements");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto lt = toks[i].find('<');
        if (lt == std::string::npos || lt == 0 || lt + 1 == toks[i].size())
          throw ParseError(lineno, "expected id<id, got '" + toks[i] + "'");
        relations.push_back({toks[i].substr(0, lt), toks[i].substr(lt + 1)});
        relation_lines.push_back({lineno, relations.back()});
      }
    } else {
      throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing poset header");
  if (!have_elements) throw ParseError(lineno, "missing elements line");
  NamedPoset out;
  out.name = name;
  try {
    out.poset = Poset::from_relations(elements, relations);
  } catch (const PosetError& e) {
    throw ParseError(lineno, e.what());
  }
  return out;
}

inline std::string serialize_poset(const std::string& name, const Poset& p) {
  std::string out = "poset " + name + "\nelements:";
  for (const auto& e : p.elements()) out += " " + e;
  out += "\nrelations:";
  for (auto& [a, b] : p.cover_pairs()) out += " " + a + "<" + b;
  out += "\n";
  return out;
}

// Grammar:
//   rep <name>
//   elem <id> lower <q> <q> upper <q> <q>
// with rationals as p/q or plain integers.
inline NamedRep parse_rep_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  NamedRep out;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(detail::strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "rep") {
      if (have_header) throw ParseError(lineno, "duplicate rep header");
      if (toks.size() != 2) throw ParseError(lineno, "expected: rep <name>");
      out.name = toks[1];
      have_header = true;
    } else if (toks[0] == "elem") {
      if (!have_header) throw ParseError(lineno, "elem before rep header");
      if (toks.size() != 8 || toks[2] != "lower" || toks[5] != "upper")
        throw ParseError(lineno, "expected: elem <id> lower <q> <q> upper <q> <q>");
      Rational q[4];
      for (int i = 0; i < 4; ++i) {
        static const int pos[4] = {3, 4, 6, 7};
        auto v = parse_rational(toks[pos[i]]);
        if (!v) throw ParseError(lineno, "malformed rational '" + toks[pos[i]] + "'");
        q[i] = *v;
      }
      try {
        out.rep.add(toks[1], Trapezoid::of(q[0], q[1], q[2], q[3]));
      } catch (const GeometryError& e) {
        throw ParseError(lineno, e.what());
      }
    } else {
      throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing rep header");
  return out;
}

inline std::string serialize_rep(const std::string& name, const Representation& rep) {
  std::string out = "rep " + name + "\n";
  for (auto& [e, t] : rep.items())
    out += "elem " + e + " lower " + to_string(t.l()) + " " + to_string(t.r()) + " upper " +
           to_string(t.L()) + " " + to_string(t.R()) + "\n";
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace trapo
