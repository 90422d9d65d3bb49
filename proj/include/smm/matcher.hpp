#pragma once

#include <optional>

#include "smm/configuration.hpp"
#include "smm/matching.hpp"

namespace smm {

// Color compatibility under the matching mode (ignores linkage and stubs).
inline bool colors_compatible(const Configuration& cfg, int a, int b) {
  if (a == b) return false;
  if (cfg.mode == Mode::OneColor) return true;
  return cfg.points[a].color != cfg.points[b].color;
}

// Mutable matcher state shared by both engines: remaining stubs, the partner
// sets built so far, and a doubly-linked list threading the active points
// (stubs left > 0) in position order. On the cycle the list is circular.
class MatcherState {
 public:
  explicit MatcherState(const Configuration& cfg);

  struct Candidate {
    int id;
    double dist;
    bool tie;  // the opposite direction offered a distinct candidate at the same distance
  };

  // Nearest compatible point for an active id: first compatible active
  // non-partner scanning left, same scanning right, closer of the two.
  // Exact distance ties between the two directions resolve to the
  // lexicographically smaller (min id, max id) pair and set the tie flag.
  std::optional<Candidate> nearest_compatible(int id) const;

  bool active(int id) const { return stubs_left_[id] > 0; }
  int stubs_left(int id) const { return stubs_left_[id]; }
  bool linked(int a, int b) const;
  // Active, color-compatible and not yet linked.
  bool compatible(int a, int b) const;

  // Consumes one stub at each endpoint and records the partnership; points
  // that reach zero stubs leave the active list.
  void link(int a, int b);

  int active_count() const { return active_count_; }
  std::vector<int> active_ids() const;
  const std::vector<std::vector<int>>& partners() const { return partners_; }
  const Configuration& config() const { return *cfg_; }

 private:
  void detach(int id);

  const Configuration* cfg_;
  std::vector<int> stubs_left_;
  std::vector<std::vector<int>> partners_;
  std::vector<int> next_, prev_;  // -1 marks a line end or a detached node
  int active_count_ = 0;
};

// Round engine: repeatedly computes every active point's nearest compatible
// point against the frozen round-start state and links all mutual pairs at
// once; stops at the first round that creates no edge. Mirrors the iterated
// mutually-nearest construction directly.
Matching stable_match_rounds(const Configuration& cfg);

// Event engine: a lazy-deletion min-heap of (distance, proposer, candidate)
// events ordered by (distance, min id, max id). Each popped event is either
// stale (dropped or reproposed) or links the currently closest compatible
// pair, so the two engines build the same edge set on tie-free inputs.
Matching stable_match_greedy(const Configuration& cfg);

}  // namespace smm
