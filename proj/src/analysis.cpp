#include "smm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace smm {

const char* role_name(Role r) {
  switch (r) {
    case Role::LeftBeak: return "left_beak";
    case Role::RightBeak: return "right_beak";
    case Role::Bird: return "bird";
    case Role::Other: return "other";
  }
  return "other";
}

Role classify(const Configuration& cfg, const Matching& m, int id) {
  if (m.partners[id].size() != 2) return Role::Other;
  const double x = cfg.points[id].position;
  const double half = cfg.geometry.is_cycle() ? cfg.geometry.circumference() / 2.0 : 0.0;
  int lefts = 0, rights = 0;
  for (int p : m.partners[id]) {
    double off = cfg.geometry.signed_offset(x, cfg.points[p].position);
    if (off == 0.0) return Role::Other;                       // collision
    if (cfg.geometry.is_cycle() && std::abs(off) == half) return Role::Other;
    ++(off < 0.0 ? lefts : rights);
  }
  if (lefts == 2) return Role::LeftBeak;
  if (rights == 2) return Role::RightBeak;
  return Role::Bird;
}

std::array<long long, 4> role_histogram(const Configuration& cfg, const Matching& m) {
  std::array<long long, 4> hist{0, 0, 0, 0};
  for (int i = 0; i < cfg.size(); ++i)
    ++hist[static_cast<int>(classify(cfg, m, i))];
  return hist;
}

CrossingReport crossings(const Configuration& cfg, const Matching& m,
                         const ComponentSummary& cs) {
  CrossingReport rep;
  // Ids are position-sorted, so a non-wrapping edge is the id interval of its
  // endpoints and two edges cross exactly when their intervals strictly
  // interleave.
  struct Interval {
    int a, b, edge;
  };
  std::vector<Interval> iv;
  iv.reserve(m.edges.size());
  const double half = cfg.geometry.is_cycle() ? cfg.geometry.circumference() / 2.0 : 0.0;
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    auto [a, b] = m.edges[e];
    if (cfg.geometry.is_cycle()) {
      double gap = cfg.points[b].position - cfg.points[a].position;
      if (gap == half) {
        rep.antipodal_flag = true;
        ++rep.excluded_edges;
        continue;
      }
      if (gap > half) {  // shorter arc wraps the cut
        ++rep.excluded_edges;
        continue;
      }
    }
    iv.push_back({a, b, e});
  }
  std::sort(iv.begin(), iv.end(), [](const Interval& l, const Interval& r) {
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });
  for (size_t i = 0; i < iv.size(); ++i) {
    for (size_t j = i + 1; j < iv.size(); ++j) {
      if (iv[j].a >= iv[i].b) break;   // no later interval can start inside
      if (iv[j].a == iv[i].a) continue;  // shared left endpoint never crosses
      if (iv[j].b > iv[i].b) {
        int u = m.edges[iv[i].edge].first, v = m.edges[iv[j].edge].first;
        rep.pairs.push_back({iv[i].edge, iv[j].edge, cs.component_of[u],
                             cs.component_of[v]});
      }
    }
  }
  return rep;
}

IncidentStats longest_incident(const Configuration& cfg, const Matching& m, int id) {
  IncidentStats s;
  s.insatiable = m.unmatched_stubs[id] > 0;
  const double x = cfg.points[id].position;
  for (int p : m.partners[id])
    s.longest = std::max(s.longest, cfg.geometry.distance(x, cfg.points[p].position));
  return s;
}

bool desires(const Configuration& cfg, const Matching& m, int id, double location) {
  IncidentStats s = longest_incident(cfg, m, id);
  if (s.insatiable) return true;
  return cfg.geometry.distance(cfg.points[id].position, location) < s.longest;
}

long long desire_count(const Configuration& cfg, const Matching& m, double target,
                       double window, std::optional<Color> who) {
  long long count = 0;
  for (int i = 0; i < cfg.size(); ++i) {
    if (who && cfg.points[i].color != *who) continue;
    if (cfg.geometry.distance(cfg.points[i].position, target) > window) continue;
    if (desires(cfg, m, i, target)) ++count;
  }
  return count;
}

void write_components_csv(const ComponentSummary& cs, std::ostream& out) {
  out << "component_id,size,red,blue\n";
  for (int c = 0; c < cs.count(); ++c)
    out << c << ',' << cs.size[c] << ',' << cs.red_count[c] << ','
        << cs.blue_count[c] << '\n';
}

void write_roles_csv(const std::array<long long, 4>& hist, std::ostream& out) {
  out << "role,count\n";
  for (int r = 0; r < 4; ++r)
    out << role_name(static_cast<Role>(r)) << ',' << hist[r] << '\n';
}

}  // namespace smm
