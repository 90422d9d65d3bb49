#include "smm/pointgen.hpp"

#include <stdexcept>

namespace smm {
namespace {

std::vector<MarkedPoint> uniform_batch(int n, double lo, double hi, Color color,
                                       RngStream& rng) {
  std::vector<MarkedPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back({-1, rng.uniform(lo, hi), color, 0});
  return out;
}

}  // namespace

std::vector<MarkedPoint> sample_poisson_line(double intensity, const Geometry& line,
                                             Color color, RngStream& rng) {
  if (line.is_cycle())
    throw std::invalid_argument("sample_poisson_line needs a line geometry");
  if (!(intensity > 0.0))
    throw std::invalid_argument("intensity must be positive");
  int n = rng.poisson(intensity * 2.0 * line.halfwidth());
  return uniform_batch(n, line.lo(), line.hi(), color, rng);
}

std::vector<MarkedPoint> sample_uniform_cycle(int n, const Geometry& cycle,
                                              Color color, RngStream& rng) {
  if (!cycle.is_cycle())
    throw std::invalid_argument("sample_uniform_cycle needs a cycle geometry");
  if (n < 0) throw std::invalid_argument("point count must be nonnegative");
  return uniform_batch(n, 0.0, cycle.circumference(), color, rng);
}

std::vector<MarkedPoint> sample_uniform_line(int n, const Geometry& line,
                                             Color color, RngStream& rng) {
  if (line.is_cycle())
    throw std::invalid_argument("sample_uniform_line needs a line geometry");
  if (n < 0) throw std::invalid_argument("point count must be nonnegative");
  return uniform_batch(n, line.lo(), line.hi(), color, rng);
}

void assign_marks(std::vector<MarkedPoint>& points, const DegreeLaw& law,
                  RngStream& rng) {
  for (auto& p : points) p.stubs = law.sample(rng);
}

}  // namespace smm
