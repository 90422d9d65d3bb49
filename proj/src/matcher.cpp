#include "smm/matcher.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <ostream>
#include <queue>

#include <json.hpp>

namespace smm {

std::vector<std::pair<int, int>> Matching::sorted_edges() const {
  auto out = edges;
  std::sort(out.begin(), out.end());
  return out;
}

long long Matching::total_unmatched() const {
  long long total = 0;
  for (int u : unmatched_stubs) total += u;
  return total;
}

namespace {

Matching make_shell(const Configuration& cfg) {
  Matching m;
  const int n = cfg.size();
  m.partners.resize(n);
  m.matched_degree.assign(n, 0);
  m.unmatched_stubs.resize(n);
  for (int i = 0; i < n; ++i) m.unmatched_stubs[i] = cfg.points[i].stubs;
  return m;
}

void record_edge(Matching& m, int a, int b, int round) {
  if (a > b) std::swap(a, b);
  m.edges.emplace_back(a, b);
  if (round > 0) m.round_of_edge.push_back(round);
  m.partners[a].push_back(b);
  m.partners[b].push_back(a);
  ++m.matched_degree[a];
  ++m.matched_degree[b];
  --m.unmatched_stubs[a];
  --m.unmatched_stubs[b];
  assert(m.unmatched_stubs[a] >= 0 && m.unmatched_stubs[b] >= 0);
}

// (min id, max id) lexicographic order; the global tie-break between
// equidistant pairs.
bool pair_before(int x, int a, int y, int b) {
  int xmin = std::min(x, a), xmax = std::max(x, a);
  int ymin = std::min(y, b), ymax = std::max(y, b);
  if (xmin != ymin) return xmin < ymin;
  return xmax < ymax;
}

}  // namespace

MatcherState::MatcherState(const Configuration& cfg) : cfg_(&cfg) {
  const int n = cfg.size();
  stubs_left_.resize(n);
  for (int i = 0; i < n; ++i) stubs_left_[i] = cfg.points[i].stubs;
  partners_.resize(n);
  next_.resize(n);
  prev_.resize(n);
  for (int i = 0; i < n; ++i) {
    next_[i] = i + 1 < n ? i + 1 : -1;
    prev_[i] = i - 1;
  }
  if (cfg.geometry.is_cycle() && n > 0) {
    next_[n - 1] = 0;
    prev_[0] = n - 1;
  }
  active_count_ = n;
}

bool MatcherState::linked(int a, int b) const {
  for (int p : partners_[a])
    if (p == b) return true;
  return false;
}

bool MatcherState::compatible(int a, int b) const {
  return active(a) && active(b) && colors_compatible(*cfg_, a, b) && !linked(a, b);
}

std::optional<MatcherState::Candidate> MatcherState::nearest_compatible(int id) const {
  assert(active(id));
  int left = -1, right = -1;
  for (int j = prev_[id]; j != -1 && j != id; j = prev_[j]) {
    if (compatible(id, j)) {
      left = j;
      break;
    }
  }
  for (int j = next_[id]; j != -1 && j != id; j = next_[j]) {
    if (compatible(id, j)) {
      right = j;
      break;
    }
  }
  if (left == -1 && right == -1) return std::nullopt;
  const double x = cfg_->points[id].position;
  if (left == -1 || left == right) {
    return Candidate{right, cfg_->geometry.distance(x, cfg_->points[right].position),
                     false};
  }
  if (right == -1) {
    return Candidate{left, cfg_->geometry.distance(x, cfg_->points[left].position),
                     false};
  }
  // On the cycle either scan direction can round the far side, so compare
  // metric distances, not walk lengths: the true nearest compatible point is
  // always the first compatible one along its own shorter arc.
  double dl = cfg_->geometry.distance(x, cfg_->points[left].position);
  double dr = cfg_->geometry.distance(x, cfg_->points[right].position);
  if (dl < dr) return Candidate{left, dl, false};
  if (dr < dl) return Candidate{right, dr, false};
  int pick = pair_before(id, left, id, right) ? left : right;
  return Candidate{pick, dl, true};
}

void MatcherState::detach(int id) {
  int p = prev_[id], n = next_[id];
  if (p != -1) next_[p] = n;
  if (n != -1) prev_[n] = p;
  prev_[id] = next_[id] = -1;
  --active_count_;
}

void MatcherState::link(int a, int b) {
  assert(compatible(a, b));
  partners_[a].push_back(b);
  partners_[b].push_back(a);
  if (--stubs_left_[a] == 0) detach(a);
  if (--stubs_left_[b] == 0) detach(b);
}

std::vector<int> MatcherState::active_ids() const {
  std::vector<int> out;
  out.reserve(active_count_);
  for (int i = 0; i < static_cast<int>(stubs_left_.size()); ++i)
    if (stubs_left_[i] > 0) out.push_back(i);
  return out;
}

Matching stable_match_rounds(const Configuration& cfg) {
  Matching m = make_shell(cfg);
  MatcherState st(cfg);
  std::vector<int> cand(cfg.size(), -1);
  int round = 1;
  while (true) {
    // All candidates are computed against the frozen round-start state, then
    // the mutual pairs are linked as one batch. Mutuality makes the batch
    // vertex-disjoint: a point's nearest candidate is single-valued.
    auto act = st.active_ids();
    for (int x : act) {
      auto c = st.nearest_compatible(x);
      cand[x] = c ? c->id : -1;
      if (c && c->tie) m.tie_flag = true;
    }
    std::vector<std::pair<int, int>> batch;
    for (int x : act) {
      int y = cand[x];
      if (y > x && cand[y] == x) batch.emplace_back(x, y);
    }
    if (batch.empty()) break;
    for (auto [x, y] : batch) {
      st.link(x, y);
      record_edge(m, x, y, round);
    }
    ++round;
  }
  return m;
}

Matching stable_match_greedy(const Configuration& cfg) {
  Matching m = make_shell(cfg);
  MatcherState st(cfg);

  struct Event {
    double dist;
    int a, b;  // proposer, candidate
  };
  auto later = [](const Event& l, const Event& r) {
    if (l.dist != r.dist) return l.dist > r.dist;
    return pair_before(r.a, r.b, l.a, l.b);
  };
  std::priority_queue<Event, std::vector<Event>, decltype(later)> heap(later);

  auto propose = [&](int x) {
    if (auto c = st.nearest_compatible(x)) {
      if (c->tie) m.tie_flag = true;
      heap.push({c->dist, x, c->id});
    }
  };
  for (int i = 0; i < cfg.size(); ++i)
    if (st.active(i)) propose(i);

  // Lazy deletion: a popped event re-proposes its proposer when stale. A
  // valid popped event always links the globally closest compatible pair,
  // because candidate sets only shrink: every live proposer keeps exactly one
  // event whose stored distance is at most its current nearest distance.
  while (!heap.empty()) {
    Event e = heap.top();
    heap.pop();
    if (!st.active(e.a)) continue;
    if (!st.compatible(e.a, e.b)) {
      propose(e.a);
      continue;
    }
    st.link(e.a, e.b);
    record_edge(m, e.a, e.b, -1);
    if (st.active(e.a)) propose(e.a);
  }
  return m;
}

void dump_matching_text(const Matching& m, const Configuration& cfg,
                        std::ostream& out) {
  char buf[96];
  const bool rounds = !m.round_of_edge.empty();
  for (size_t i = 0; i < m.edges.size(); ++i) {
    auto [a, b] = m.edges[i];
    double d = cfg.geometry.distance(cfg.points[a].position, cfg.points[b].position);
    if (rounds)
      std::snprintf(buf, sizeof buf, "%d %d %d %.17g", a, b, m.round_of_edge[i], d);
    else
      std::snprintf(buf, sizeof buf, "%d %d - %.17g", a, b, d);
    out << buf << '\n';
  }
  for (size_t i = 0; i < m.unmatched_stubs.size(); ++i)
    if (m.unmatched_stubs[i] > 0)
      out << "unmatched " << i << ' ' << m.unmatched_stubs[i] << '\n';
}

void dump_matching_json(const Matching& m, std::ostream& out) {
  nlohmann::json j;
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : m.edges) j["edges"].push_back({a, b});
  if (!m.round_of_edge.empty()) j["rounds"] = m.round_of_edge;
  auto unmatched = nlohmann::json::object();
  for (size_t i = 0; i < m.unmatched_stubs.size(); ++i)
    if (m.unmatched_stubs[i] > 0)
      unmatched[std::to_string(i)] = m.unmatched_stubs[i];
  j["unmatched"] = unmatched;
  j["tie_flag"] = m.tie_flag;
  out << j.dump(2) << '\n';
}

}  // namespace smm
