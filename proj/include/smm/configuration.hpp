#pragma once

#include <iosfwd>
#include <vector>

#include "smm/geometry.hpp"
#include "smm/point.hpp"

namespace smm {

// One-color matchings pair any two distinct points; two-color matchings only
// pair points of opposite colors.
enum class Mode { OneColor, TwoColor };

// An immutable snapshot of marked points on a geometry, sorted by position
// with dense ids 0..n-1 in that order. Position ties are broken red before
// blue, then by input order, and leave a collision flag behind: downstream
// uniqueness arguments assume distinct positions, so flagged configurations
// are excluded from structural assertions.
struct Configuration {
  Geometry geometry = Geometry::line(1.0);
  Mode mode = Mode::TwoColor;
  std::vector<MarkedPoint> points;
  bool collision = false;
  bool color_empty = false;  // two-color with one side empty
  int n_red = 0;
  int n_blue = 0;
  long long stubs_red = 0;
  long long stubs_blue = 0;

  int size() const { return static_cast<int>(points.size()); }
  const MarkedPoint& point(int id) const { return points.at(id); }
  bool flagged() const { return collision; }

  // Input point lists split back out by color (positions and stubs only,
  // ids dropped); used to rebuild perturbed copies of a configuration.
  std::vector<MarkedPoint> raw_points(Color c) const;
};

// Validates, merges, sorts and labels the inputs. Throws std::invalid_argument
// on out-of-range positions, stubs < 1, or blue points in one-color mode.
Configuration build_configuration(std::vector<MarkedPoint> red,
                                  std::vector<MarkedPoint> blue,
                                  const Geometry& geometry, Mode mode);

// Plain-text round trip. Positions serialize as hexfloats, so load(dump(c))
// reproduces every coordinate bit for bit.
void dump_configuration(const Configuration& cfg, std::ostream& out);
Configuration load_configuration(std::istream& in);

}  // namespace smm
