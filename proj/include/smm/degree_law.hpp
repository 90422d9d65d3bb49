#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include "smm/rng.hpp"

namespace smm {

// Mark (stub count) distribution attached to points. Three families, all
// supported on strictly positive integers:
//   constant:k          point mass at k
//   twopoint:a,b,p      a with probability p, else b  (a < b)
//   poissonshift:l,s    s + Poisson(l)
class DegreeLaw {
 public:
  enum class Kind { Constant, TwoPoint, PoissonShift };

  static DegreeLaw constant(int k) {
    if (k < 1) throw std::invalid_argument("constant law needs k >= 1");
    DegreeLaw law(Kind::Constant);
    law.a_ = k;
    return law;
  }

  static DegreeLaw two_point(int a, int b, double p_a) {
    if (a < 1 || b <= a) throw std::invalid_argument("twopoint law needs 1 <= a < b");
    if (!(p_a > 0.0 && p_a < 1.0))
      throw std::invalid_argument("twopoint law needs 0 < p < 1");
    DegreeLaw law(Kind::TwoPoint);
    law.a_ = a;
    law.b_ = b;
    law.p_ = p_a;
    return law;
  }

  static DegreeLaw poisson_shift(double lambda, int shift) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("poissonshift law needs lambda >= 0");
    if (shift < 1) throw std::invalid_argument("poissonshift law needs shift >= 1");
    DegreeLaw law(Kind::PoissonShift);
    law.lambda_ = lambda;
    law.a_ = shift;
    return law;
  }

  Kind kind() const { return kind_; }

  int sample(RngStream& rng) const {
    switch (kind_) {
      case Kind::Constant: return a_;
      case Kind::TwoPoint: return rng.bernoulli(p_) ? a_ : b_;
      case Kind::PoissonShift: return a_ + rng.poisson(lambda_);
    }
    throw std::logic_error("unreachable");
  }

  double mean() const {
    switch (kind_) {
      case Kind::Constant: return a_;
      case Kind::TwoPoint: return p_ * a_ + (1.0 - p_) * b_;
      case Kind::PoissonShift: return a_ + lambda_;
    }
    throw std::logic_error("unreachable");
  }

  int min_value() const { return a_; }

  bool is_constant(int k) const { return kind_ == Kind::Constant && a_ == k; }

  // Law parameters for accessors and tests.
  int const_k() const { return a_; }
  int two_a() const { return a_; }
  int two_b() const { return b_; }
  double two_p() const { return p_; }
  double poisson_lambda() const { return lambda_; }
  int poisson_shift_value() const { return a_; }

  std::string to_string() const {
    char buf[64];
    switch (kind_) {
      case Kind::Constant:
        std::snprintf(buf, sizeof buf, "constant:%d", a_);
        break;
      case Kind::TwoPoint:
        std::snprintf(buf, sizeof buf, "twopoint:%d,%d,%g", a_, b_, p_);
        break;
      case Kind::PoissonShift:
        std::snprintf(buf, sizeof buf, "poissonshift:%g,%d", lambda_, a_);
        break;
    }
    return buf;
  }

  // Parses the to_string format. Round trip is exact for parameters that
  // print exactly (all laws used in the experiments do).
  static DegreeLaw parse(std::string_view text);

 private:
  explicit DegreeLaw(Kind kind) : kind_(kind) {}

  Kind kind_;
  int a_ = 0;
  int b_ = 0;
  double p_ = 0.0;
  double lambda_ = 0.0;
};

}  // namespace smm
