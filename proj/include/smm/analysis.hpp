#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "smm/components.hpp"
#include "smm/configuration.hpp"
#include "smm/matching.hpp"

namespace smm {

// Local shape of a degree-2 point: both partners to the left, both to the
// right, or one on each side. Everything else (degree != 2, a collision, or a
// direction-ambiguous antipodal partner) is Other.
enum class Role { LeftBeak = 0, RightBeak = 1, Bird = 2, Other = 3 };

const char* role_name(Role r);
Role classify(const Configuration& cfg, const Matching& m, int id);
std::array<long long, 4> role_histogram(const Configuration& cfg, const Matching& m);

// Pair of matching edges whose id intervals strictly interleave
// (a < c < b < d). Indices refer to m.edges; comp fields are the component
// ids of the two edges.
struct CrossingPair {
  int e1, e2;
  int comp1, comp2;
};

struct CrossingReport {
  std::vector<CrossingPair> pairs;
  // Cycle edges whose shorter arc passes the position-0 cut (or is exactly
  // antipodal) have no well-defined id interval and are left out.
  int excluded_edges = 0;
  bool antipodal_flag = false;
};

CrossingReport crossings(const Configuration& cfg, const Matching& m,
                         const ComponentSummary& cs);

// Longest matched edge at a point, plus the insatiable flag: a point with
// unmatched stubs desires every location, no matter how far.
struct IncidentStats {
  double longest = 0.0;
  bool insatiable = false;
};

IncidentStats longest_incident(const Configuration& cfg, const Matching& m, int id);

// x desires a location when it is insatiable or strictly closer to the
// location than its longest matched edge.
bool desires(const Configuration& cfg, const Matching& m, int id, double location);

// Number of points (optionally restricted to one color) within the window
// around the target location that desire the target.
long long desire_count(const Configuration& cfg, const Matching& m, double target,
                       double window, std::optional<Color> who);

// id,size,red,blue rows.
void write_components_csv(const ComponentSummary& cs, std::ostream& out);
// role,count rows.
void write_roles_csv(const std::array<long long, 4>& hist, std::ostream& out);

}  // namespace smm
