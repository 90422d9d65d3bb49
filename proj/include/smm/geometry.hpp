#pragma once

#include <cmath>
#include <stdexcept>

namespace smm {

// Carrier space for point configurations: a symmetric interval [-L, L] or a
// cycle of circumference C with positions in [0, C). Both expose the metric
// and a signed offset; on the cycle the offset follows the shorter arc.
class Geometry {
 public:
  enum class Kind { Line, Cycle };

  static Geometry line(double halfwidth) {
    if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
      throw std::invalid_argument("line halfwidth must be finite and positive");
    return Geometry(Kind::Line, halfwidth);
  }

  static Geometry cycle(double circumference) {
    if (!(circumference > 0.0) || !std::isfinite(circumference))
      throw std::invalid_argument("cycle circumference must be finite and positive");
    return Geometry(Kind::Cycle, circumference);
  }

  Kind kind() const { return kind_; }
  bool is_cycle() const { return kind_ == Kind::Cycle; }

  double halfwidth() const { return kind_ == Kind::Line ? param_ : 0.0; }
  double circumference() const { return kind_ == Kind::Cycle ? param_ : 0.0; }

  // Admissible position range: [lo, hi) on the cycle, [lo, hi] on the line.
  double lo() const { return kind_ == Kind::Line ? -param_ : 0.0; }
  double hi() const { return kind_ == Kind::Line ? param_ : param_; }

  bool contains(double p) const {
    if (!std::isfinite(p)) return false;
    if (kind_ == Kind::Line) return p >= -param_ && p <= param_;
    return p >= 0.0 && p < param_;
  }

  double distance(double a, double b) const {
    if (kind_ == Kind::Line) return std::abs(b - a);
    double d = std::abs(b - a);
    return std::min(d, param_ - d);
  }

  // Signed separation from a to b. Line: plain difference. Cycle: shorter
  // signed arc, in (-C/2, C/2]; exactly antipodal pairs report +C/2 and the
  // caller must treat |offset| == C/2 as direction-ambiguous.
  double signed_offset(double a, double b) const {
    if (kind_ == Kind::Line) return b - a;
    double d = std::fmod(b - a + param_, param_);
    if (d < 0.0) d += param_;  // fmod sign safety for tiny negative inputs
    if (d > param_ / 2.0) d -= param_;
    return d;
  }

 private:
  Geometry(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

}  // namespace smm
