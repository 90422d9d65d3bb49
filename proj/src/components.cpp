#include "smm/components.hpp"

#include <algorithm>
#include <numeric>

namespace smm {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];  // path halving
    x = parent[x];
  }
  return x;
}

}  // namespace

ComponentSummary components(const Configuration& cfg, const Matching& m) {
  const int n = cfg.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : m.edges) {
    int ra = find_root(parent, a), rb = find_root(parent, b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  ComponentSummary cs;
  cs.component_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find_root(parent, i);
    if (cs.component_of[r] == -1) {
      cs.component_of[r] = cs.count();
      cs.size.push_back(0);
      cs.red_count.push_back(0);
      cs.blue_count.push_back(0);
    }
    int c = cs.component_of[r];
    cs.component_of[i] = c;
    ++cs.size[c];
    ++(cfg.points[i].color == Color::Red ? cs.red_count[c] : cs.blue_count[c]);
  }
  return cs;
}

}  // namespace smm
