#include "smm/configuration.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace smm {

std::vector<MarkedPoint> Configuration::raw_points(Color c) const {
  std::vector<MarkedPoint> out;
  for (const auto& p : points)
    if (p.color == c) out.push_back({-1, p.position, p.color, p.stubs});
  return out;
}

Configuration build_configuration(std::vector<MarkedPoint> red,
                                  std::vector<MarkedPoint> blue,
                                  const Geometry& geometry, Mode mode) {
  if (mode == Mode::OneColor && !blue.empty())
    throw std::invalid_argument("one-color configurations take red points only");

  Configuration cfg;
  cfg.geometry = geometry;
  cfg.mode = mode;
  cfg.points.reserve(red.size() + blue.size());
  for (auto& p : red) {
    p.color = Color::Red;
    cfg.points.push_back(p);
  }
  for (auto& p : blue) {
    p.color = Color::Blue;
    cfg.points.push_back(p);
  }

  for (const auto& p : cfg.points) {
    if (!geometry.contains(p.position))
      throw std::invalid_argument("point position outside the geometry");
    if (p.stubs < 1) throw std::invalid_argument("every point needs stubs >= 1");
  }

  // Stable sort: equal positions keep red-before-blue, then input order.
  std::stable_sort(cfg.points.begin(), cfg.points.end(),
                   [](const MarkedPoint& a, const MarkedPoint& b) {
                     if (a.position != b.position) return a.position < b.position;
                     return a.color < b.color;
                   });

  for (int i = 0; i < static_cast<int>(cfg.points.size()); ++i) {
    cfg.points[i].id = i;
    if (i > 0 && cfg.points[i].position == cfg.points[i - 1].position)
      cfg.collision = true;
    if (cfg.points[i].color == Color::Red) {
      ++cfg.n_red;
      cfg.stubs_red += cfg.points[i].stubs;
    } else {
      ++cfg.n_blue;
      cfg.stubs_blue += cfg.points[i].stubs;
    }
  }
  cfg.color_empty = mode == Mode::TwoColor && (cfg.n_red == 0 || cfg.n_blue == 0);
  return cfg;
}

void dump_configuration(const Configuration& cfg, std::ostream& out) {
  char buf[96];
  if (cfg.geometry.is_cycle())
    std::snprintf(buf, sizeof buf, "geometry cycle %.17g", cfg.geometry.circumference());
  else
    std::snprintf(buf, sizeof buf, "geometry line %.17g", cfg.geometry.halfwidth());
  out << buf << '\n';
  out << "mode " << (cfg.mode == Mode::OneColor ? "onecolor" : "twocolor") << '\n';
  for (const auto& p : cfg.points) {
    std::snprintf(buf, sizeof buf, "%d %a %c %d", p.id, p.position,
                  color_letter(p.color), p.stubs);
    out << buf << '\n';
  }
}

Configuration load_configuration(std::istream& in) {
  bool have_geometry = false;
  Geometry geometry = Geometry::line(1.0);
  Mode mode = Mode::TwoColor;
  std::vector<MarkedPoint> red, blue;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string head;
    row >> head;
    auto fail = [&](const char* what) {
      throw std::invalid_argument("configuration line " + std::to_string(lineno) +
                                  ": " + what);
    };
    if (head == "geometry") {
      std::string kind;
      double param = 0.0;
      if (!(row >> kind >> param)) fail("expected 'geometry <line|cycle> <param>'");
      if (kind == "line") geometry = Geometry::line(param);
      else if (kind == "cycle") geometry = Geometry::cycle(param);
      else fail("geometry kind must be line or cycle");
      have_geometry = true;
    } else if (head == "mode") {
      std::string m;
      if (!(row >> m)) fail("expected 'mode <onecolor|twocolor>'");
      if (m == "onecolor") mode = Mode::OneColor;
      else if (m == "twocolor") mode = Mode::TwoColor;
      else fail("mode must be onecolor or twocolor");
    } else {
      // Point row: id position color stubs. Ids are re-derived on build; the
      // row order preserves the original tie-break order.
      double position = 0.0;
      std::string pos_text, color_text;
      int stubs = 0;
      std::istringstream reparse(line);
      int id = 0;
      if (!(reparse >> id >> pos_text >> color_text >> stubs))
        fail("expected 'id position color stubs'");
      char* end = nullptr;
      position = std::strtod(pos_text.c_str(), &end);
      if (end != pos_text.c_str() + pos_text.size()) fail("bad position");
      if (color_text != "R" && color_text != "B") fail("color must be R or B");
      MarkedPoint p{-1, position, color_text == "R" ? Color::Red : Color::Blue, stubs};
      (p.color == Color::Red ? red : blue).push_back(p);
    }
  }
  if (!have_geometry)
    throw std::invalid_argument("configuration stream lacks a geometry line");
  if (mode == Mode::OneColor && !blue.empty())
    throw std::invalid_argument("one-color configuration contains blue points");
  return build_configuration(std::move(red), std::move(blue), geometry, mode);
}

}  // namespace smm
