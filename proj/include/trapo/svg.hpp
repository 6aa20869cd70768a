#pragma once

#include <string>

#include "trapo/geometry.hpp"
#include "trapo/io.hpp"
#include "trapo/rational.hpp"

namespace trapo {

namespace detail {

// Fixed-point decimal rendering of a rational, two digits, no floating point.
inline std::string svg_coord(const Rational& q) {
  Integer scaled = numerator(q * 100) / denominator(q * 100);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  Integer whole = scaled / 100, frac = scaled % 100;
  std::string s = (neg ? "-" : "") + whole.str();
  std::string f = frac.str();
  if (f.size() < 2) f = "0" + f;
  return s + "." + f;
}

}  // namespace detail

// Two horizontal baselines, one filled quadrilateral per element with its
// label; exact coordinates affinely scaled to a fixed 800x440 canvas.
inline std::string render_svg(const Representation& rep) {
  if (rep.empty()) throw GeometryError("cannot render an empty representation");
  const Rational x0 = rep.min_endpoint(), x1 = rep.max_endpoint();
  const Rational span = (x1 > x0) ? (x1 - x0) : Rational(1);
  const Rational left = 40, width = 720;
  const Rational y_low = 370, y_up = 70;
  auto sx = [&](const Rational& x) { return left + (x - x0) * width / span; };

  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"440\" "
       "viewBox=\"0 0 800 440\">\n";
  s += "  <rect width=\"800\" height=\"440\" fill=\"white\"/>\n";
  s += "  <line x1=\"20\" y1=\"" + detail::svg_coord(y_low) + "\" x2=\"780\" y2=\"" +
       detail::svg_coord(y_low) + "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  s += "  <line x1=\"20\" y1=\"" + detail::svg_coord(y_up) + "\" x2=\"780\" y2=\"" +
       detail::svg_coord(y_up) + "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  std::size_t idx = 0;
  for (auto& [e, t] : rep.items()) {
    const char* color = palette[idx % 10];
    std::string pts = detail::svg_coord(sx(t.l())) + "," + detail::svg_coord(y_low) + " " +
                      detail::svg_coord(sx(t.r())) + "," + detail::svg_coord(y_low) + " " +
                      detail::svg_coord(sx(t.R())) + "," + detail::svg_coord(y_up) + " " +
                      detail::svg_coord(sx(t.L())) + "," + detail::svg_coord(y_up);
    s += "  <polygon points=\"" + pts + "\" fill=\"" + color +
         "\" fill-opacity=\"0.35\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    Rational cx = (sx(t.l()) + sx(t.r()) + sx(t.L()) + sx(t.R())) / 4;
    Rational cy = (y_low + y_up) / 2;
    s += "  <text x=\"" + detail::svg_coord(cx) + "\" y=\"" + detail::svg_coord(cy) +
         "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">" + e +
         "</text>\n";
    ++idx;
  }
  s += "</svg>\n";
  return s;
}

inline void render_svg_file(const Representation& rep, const std::string& path) {
  write_file(path, render_svg(rep));
}

}  // namespace trapo
