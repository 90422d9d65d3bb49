#pragma once

#include <vector>

#include "smm/configuration.hpp"
#include "smm/matching.hpp"

namespace smm {

// Connected components of the matching graph. Every point belongs to exactly
// one component; unmatched points form singletons. Component ids are dense
// and ordered by smallest member id.
struct ComponentSummary {
  std::vector<int> component_of;  // per point id
  std::vector<int> size;          // per component
  std::vector<int> red_count;
  std::vector<int> blue_count;

  int count() const { return static_cast<int>(size.size()); }

  int largest() const {
    int best = 0;
    for (int s : size) best = std::max(best, s);
    return best;
  }

  double largest_fraction(int total_points) const {
    return total_points == 0 ? 0.0 : static_cast<double>(largest()) / total_points;
  }
};

ComponentSummary components(const Configuration& cfg, const Matching& m);

}  // namespace smm
