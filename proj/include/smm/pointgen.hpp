#pragma once

#include <vector>

#include "smm/configuration.hpp"
#include "smm/degree_law.hpp"
#include "smm/geometry.hpp"
#include "smm/rng.hpp"

namespace smm {

// Homogeneous Poisson process of the given intensity on a line window:
// Poisson(intensity * 2L) many points, placed i.i.d. uniformly. Returned in
// sampling order (unsorted); ids unset.
std::vector<MarkedPoint> sample_poisson_line(double intensity, const Geometry& line,
                                             Color color, RngStream& rng);

// Exactly n i.i.d. uniform points on the cycle; the conditional law of a
// Poisson process given its count.
std::vector<MarkedPoint> sample_uniform_cycle(int n, const Geometry& cycle,
                                              Color color, RngStream& rng);

// Exactly n i.i.d. uniform points on the line window.
std::vector<MarkedPoint> sample_uniform_line(int n, const Geometry& line,
                                             Color color, RngStream& rng);

// Draws each point's stub count independently from the law, in point order.
void assign_marks(std::vector<MarkedPoint>& points, const DegreeLaw& law,
                  RngStream& rng);

}  // namespace smm
