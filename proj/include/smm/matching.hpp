#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "smm/configuration.hpp"

namespace smm {

// Result of a stable multi-matching run: a simple graph on point ids in which
// point x has degree <= stubs(x). Edges are stored normalized (a < b) in
// creation order; round_of_edge is parallel to edges for the round engine and
// empty for the greedy engine.
struct Matching {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> round_of_edge;
  std::vector<std::vector<int>> partners;   // adjacency per id
  std::vector<int> matched_degree;          // per id
  std::vector<int> unmatched_stubs;         // per id, stubs - degree
  bool tie_flag = false;  // some point saw two equidistant candidates

  bool has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int p : partners[a])
      if (p == b) return true;
    return false;
  }

  // Edge list in (a, b) lexicographic order, for set comparison between
  // engines whose creation orders differ.
  std::vector<std::pair<int, int>> sorted_edges() const;

  long long total_unmatched() const;
};

// Text dump: one edge per line as "a b round distance" with "-" for the round
// in greedy output, then one "unmatched id count" line per stub-holding point.
void dump_matching_text(const Matching& m, const Configuration& cfg,
                        std::ostream& out);

// JSON dump: {"edges": [[a, b], ...], "unmatched": {"id": count, ...}} plus
// rounds when present.
void dump_matching_json(const Matching& m, std::ostream& out);

}  // namespace smm
