#include "smm/validators.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "smm/components.hpp"
#include "smm/matcher.hpp"
#include "smm/pointgen.hpp"
#include "smm/rng.hpp"

namespace smm {

namespace {

bool witness_before(const Witness& a, const Witness& b) {
  if (a.ids != b.ids) return a.ids < b.ids;
  return a.note < b.note;
}

bool all_stubs_two(const Configuration& cfg) {
  for (const auto& p : cfg.points)
    if (p.stubs != 2) return false;
  return true;
}

// Shorter arc between two cycle points passes the position-0 cut.
bool edge_wraps(const Configuration& cfg, int a, int b) {
  if (!cfg.geometry.is_cycle()) return false;
  double gap = std::abs(cfg.points[b].position - cfg.points[a].position);
  return gap >= cfg.geometry.circumference() / 2.0;
}

}  // namespace

nlohmann::json report_to_json(const ViolationReport& rep) {
  auto witness_json = [](const Witness& w) {
    nlohmann::json j;
    j["ids"] = w.ids;
    j["d1"] = w.d1;
    j["d2"] = w.d2;
    if (w.component_size > 0) j["component_size"] = w.component_size;
    if (!w.note.empty()) j["note"] = w.note;
    return j;
  };
  nlohmann::json j;
  j["check"] = rep.check;
  j["pass"] = rep.pass;
  j["vacuous"] = rep.vacuous;
  j["excluded"] = rep.excluded;
  j["cases"] = rep.cases;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : rep.witnesses) j["witnesses"].push_back(witness_json(w));
  j["observations"] = nlohmann::json::array();
  for (const auto& w : rep.observations) j["observations"].push_back(witness_json(w));
  return j;
}

void write_reports_json(const std::vector<ViolationReport>& reps, std::ostream& out) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reps) j.push_back(report_to_json(r));
  out << j.dump(2) << '\n';
}

Matching matching_from_edges(const Configuration& cfg,
                             const std::vector<std::pair<int, int>>& edges) {
  Matching m;
  const int n = cfg.size();
  m.partners.resize(n);
  m.matched_degree.assign(n, 0);
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("bad edge in matching_from_edges");
    if (a > b) std::swap(a, b);
    if (m.has_edge(a, b)) throw std::invalid_argument("duplicate edge");
    m.edges.emplace_back(a, b);
    m.partners[a].push_back(b);
    m.partners[b].push_back(a);
    ++m.matched_degree[a];
    ++m.matched_degree[b];
  }
  m.unmatched_stubs.resize(n);
  for (int i = 0; i < n; ++i)
    m.unmatched_stubs[i] = std::max(0, cfg.points[i].stubs - m.matched_degree[i]);
  return m;
}

ViolationReport check_stability(const Configuration& cfg, const Matching& m,
                                int threads) {
  ViolationReport rep;
  rep.check = "stability";
  const int n = cfg.size();
  std::vector<double> longest(n);
  std::vector<char> insatiable(n);
  for (int i = 0; i < n; ++i) {
    IncidentStats s = longest_incident(cfg, m, i);
    longest[i] = s.longest;
    insatiable[i] = s.insatiable ? 1 : 0;
  }

  const int T = threads > 0 ? threads : omp_get_max_threads();
  std::vector<std::vector<Witness>> found(T);
  long long cases = 0;
#pragma omp parallel for schedule(dynamic, 64) num_threads(T) reduction(+ : cases)
  for (int i = 0; i < n; ++i) {
    auto& local = found[omp_get_thread_num()];
    for (int j = i + 1; j < n; ++j) {
      if (!colors_compatible(cfg, i, j)) continue;
      if (m.has_edge(i, j)) continue;
      ++cases;
      double d = cfg.geometry.distance(cfg.points[i].position, cfg.points[j].position);
      bool di = insatiable[i] || d < longest[i];
      if (!di) continue;
      bool dj = insatiable[j] || d < longest[j];
      if (!dj) continue;
      Witness w;
      w.ids = {i, j, -1, -1};
      w.d1 = d;
      w.d2 = std::min(insatiable[i] ? std::numeric_limits<double>::infinity()
                                    : longest[i],
                      insatiable[j] ? std::numeric_limits<double>::infinity()
                                    : longest[j]);
      w.note = "mutual desire";
      local.push_back(w);
    }
  }
  rep.cases = cases;
  for (auto& bucket : found)
    rep.witnesses.insert(rep.witnesses.end(), bucket.begin(), bucket.end());
  std::sort(rep.witnesses.begin(), rep.witnesses.end(), witness_before);
  rep.vacuous = cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_stability_reference(const Configuration& cfg, const Matching& m) {
  ViolationReport rep;
  rep.check = "stability_reference";
  const int n = cfg.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!colors_compatible(cfg, i, j)) continue;
      if (m.has_edge(i, j)) continue;
      ++rep.cases;
      double d = cfg.geometry.distance(cfg.points[i].position, cfg.points[j].position);
      // x desires y iff x still has free stubs or some partner of x sits
      // strictly further out than y.
      bool desire[2] = {false, false};
      int pair_ids[2] = {i, j};
      for (int side = 0; side < 2; ++side) {
        int x = pair_ids[side];
        if (m.unmatched_stubs[x] > 0) {
          desire[side] = true;
          continue;
        }
        for (int p : m.partners[x]) {
          if (cfg.geometry.distance(cfg.points[x].position, cfg.points[p].position) > d) {
            desire[side] = true;
            break;
          }
        }
      }
      if (desire[0] && desire[1]) {
        Witness w;
        w.ids = {i, j, -1, -1};
        w.d1 = d;
        w.note = "mutual desire";
        rep.witnesses.push_back(w);
      }
    }
  }
  rep.vacuous = rep.cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_crossing_component(const Configuration& cfg, const Matching& m) {
  ViolationReport rep;
  rep.check = "crossing_component";
  auto cs = components(cfg, m);
  auto cr = crossings(cfg, m, cs);
  rep.excluded = cr.excluded_edges > 0;
  rep.cases = static_cast<long long>(cr.pairs.size());
  for (const auto& p : cr.pairs) {
    if (p.comp1 == p.comp2) continue;
    Witness w;
    w.ids = {m.edges[p.e1].first, m.edges[p.e1].second, m.edges[p.e2].first,
             m.edges[p.e2].second};
    w.note = "crossing edges in different components";
    rep.witnesses.push_back(w);
  }
  rep.vacuous = rep.cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_lemma_mia(const Configuration& cfg, const Matching& m,
                                int size_threshold) {
  ViolationReport rep;
  rep.check = "lemma_mia";
  if (cfg.mode != Mode::TwoColor || !all_stubs_two(cfg)) {
    rep.vacuous = true;
    return rep;
  }
  if (cfg.collision || m.tie_flag) {
    rep.excluded = true;
    return rep;
  }
  auto cs = components(cfg, m);
  auto cr = crossings(cfg, m, cs);
  rep.excluded = cr.excluded_edges > 0;
  for (const auto& p : cr.pairs) {
    // Intervals interleave as a < c < b < d with (a,b) the earlier edge.
    int a = m.edges[p.e1].first, b = m.edges[p.e1].second;
    int c = m.edges[p.e2].first, d = m.edges[p.e2].second;
    int comp_size = cs.size[cs.component_of[a]];
    bool same_color = cfg.points[c].color == cfg.points[b].color;
    bool anomaly = same_color || !m.has_edge(c, b);
    if (comp_size < size_threshold) {
      if (anomaly) {
        Witness w;
        w.ids = {a, c, b, d};
        w.component_size = comp_size;
        w.note = "below threshold";
        rep.observations.push_back(w);
      }
      continue;
    }
    ++rep.cases;
    if (!anomaly) continue;
    Witness w;
    w.ids = {a, c, b, d};
    w.component_size = comp_size;
    if (same_color) {
      // Mutual desire forces the bridging edge only across opposite colors;
      // same-color endpoints are ruled out solely for unbounded components,
      // so a finite component may exhibit them legitimately.
      w.note = "same-color crossing endpoints";
      rep.observations.push_back(w);
    } else {
      w.note = "crossing without bridging edge (c,b)";
      rep.witnesses.push_back(w);
    }
  }
  rep.vacuous = rep.cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_lemma_samba(const Configuration& cfg, const Matching& m) {
  ViolationReport rep;
  rep.check = "lemma_samba";
  if (cfg.mode != Mode::TwoColor || !all_stubs_two(cfg)) {
    rep.vacuous = true;
    return rep;
  }
  if (cfg.collision || m.tie_flag) {
    rep.excluded = true;
    return rep;
  }
  for (auto [a, b] : m.edges) {
    if (cfg.points[a].color != Color::Red || cfg.points[b].color != Color::Blue)
      continue;
    if (edge_wraps(cfg, a, b)) {
      rep.excluded = true;
      continue;
    }
    for (int c = a + 1; c < b; ++c) {
      if (cfg.points[c].color != Color::Blue) continue;
      if (m.has_edge(a, c)) continue;
      bool skip = false;
      for (int d : m.partners[c]) {
        if (edge_wraps(cfg, c, d)) {
          skip = true;
          break;
        }
      }
      if (skip) {
        rep.excluded = true;
        continue;
      }
      ++rep.cases;
      int beyond_b = 0;
      for (int d : m.partners[c]) {
        if (d < a) {
          Witness w;
          w.ids = {a, b, c, d};
          w.note = "partner left of a";
          rep.witnesses.push_back(w);
        } else if (d > b) {
          ++beyond_b;
          if (!m.has_edge(b, d)) {
            Witness w;
            w.ids = {a, b, c, d};
            w.note = "far partner without edge (b,d)";
            rep.witnesses.push_back(w);
          }
        }
      }
      if (beyond_b > 1) {
        Witness w;
        w.ids = {a, b, c, -1};
        w.d1 = beyond_b;
        w.note = "two partners right of b";
        rep.witnesses.push_back(w);
      }
    }
  }
  rep.vacuous = rep.cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_comp_spacing(const Configuration& cfg, const Matching& m,
                                   int size_threshold) {
  ViolationReport rep;
  rep.check = "comp_spacing";
  if (cfg.mode != Mode::TwoColor || !all_stubs_two(cfg)) {
    rep.vacuous = true;
    return rep;
  }
  if (cfg.collision || m.tie_flag) {
    rep.excluded = true;
    return rep;
  }
  auto cs = components(cfg, m);
  std::vector<std::vector<int>> members(cs.count());
  for (int i = 0; i < cfg.size(); ++i) members[cs.component_of[i]].push_back(i);

  for (int comp = 0; comp < cs.count(); ++comp) {
    if (cs.size[comp] < size_threshold) continue;
    const auto& ids = members[comp];  // ascending, therefore position-sorted
    bool wraps = false;
    for (int x : ids) {
      for (int p : m.partners[x])
        if (edge_wraps(cfg, x, p)) {
          wraps = true;
          break;
        }
      if (wraps) break;
    }
    if (wraps) {
      rep.excluded = true;
      continue;
    }
    ++rep.cases;

    std::vector<int> reds, blues;
    for (int x : ids)
      (cfg.points[x].color == Color::Red ? reds : blues).push_back(x);

    // (ii) at most three red members strictly between consecutive blue members
    for (size_t bi = 0; bi + 1 < blues.size(); ++bi) {
      int lo = blues[bi], hi = blues[bi + 1];
      int reds_between = 0;
      for (int r : reds)
        if (r > lo && r < hi) ++reds_between;
      if (reds_between > 3) {
        Witness w;
        w.ids = {lo, hi, -1, -1};
        w.d1 = reds_between;
        w.component_size = cs.size[comp];
        w.note = "more than three red members between consecutive blues";
        rep.witnesses.push_back(w);
      }
    }

    // (i) interior red members reach no further per direction than their
    // second-nearest blue component member that way. The two extremal reds
    // sit at the component boundary, where the infinite-component statement
    // has no finite counterpart, and are skipped.
    for (size_t ri = 1; ri + 1 < reds.size(); ++ri) {
      int x = reds[ri];
      const double px = cfg.points[x].position;
      for (int dir = 0; dir < 2; ++dir) {
        auto on_side = [&](int y) { return dir == 0 ? y < x : y > x; };
        double far_partner = -1.0;
        int far_id = -1;
        for (int p : m.partners[x]) {
          if (!on_side(p)) continue;
          double dp = std::abs(cfg.points[p].position - px);
          if (dp > far_partner) {
            far_partner = dp;
            far_id = p;
          }
        }
        if (far_id == -1) continue;
        std::vector<double> blue_dists;
        for (int bpt : blues)
          if (on_side(bpt)) blue_dists.push_back(std::abs(cfg.points[bpt].position - px));
        if (blue_dists.size() < 2) continue;  // boundary: no second neighbor to bound by
        std::nth_element(blue_dists.begin(), blue_dists.begin() + 1, blue_dists.end());
        double bound = blue_dists[1];
        if (far_partner > bound) {
          Witness w;
          w.ids = {x, far_id, -1, -1};
          w.d1 = far_partner;
          w.d2 = bound;
          w.component_size = cs.size[comp];
          w.note = "edge beyond second-nearest blue component member";
          rep.witnesses.push_back(w);
        }
      }
    }
  }
  rep.vacuous = rep.cases == 0;
  rep.finalize();
  return rep;
}

ViolationReport check_monotonicity(const Configuration& cfg, double w_position,
                                   int w_stubs) {
  if (cfg.mode != Mode::TwoColor)
    throw std::invalid_argument("monotonicity check needs two-color mode");
  if (!cfg.geometry.contains(w_position))
    throw std::invalid_argument("added point lies outside the geometry");
  if (w_stubs < 1) throw std::invalid_argument("added point needs stubs >= 1");
  for (const auto& p : cfg.points)
    if (p.position == w_position)
      throw std::invalid_argument("added point collides with an existing position");

  ViolationReport rep;
  rep.check = "monotonicity";

  auto red = cfg.raw_points(Color::Red);
  auto blue = cfg.raw_points(Color::Blue);
  red.push_back({-1, w_position, Color::Red, w_stubs});
  Configuration augmented =
      build_configuration(std::move(red), std::move(blue), cfg.geometry, cfg.mode);

  Matching base = stable_match_greedy(cfg);
  Matching extra = stable_match_greedy(augmented);
  if (cfg.collision || augmented.collision || base.tie_flag || extra.tie_flag) {
    rep.excluded = true;
    return rep;
  }

  auto blue_ids = [](const Configuration& c) {
    std::vector<int> out;
    for (const auto& p : c.points)
      if (p.color == Color::Blue) out.push_back(p.id);
    return out;
  };
  auto sorted_partner_dists = [](const Configuration& c, const Matching& m, int id) {
    std::vector<double> d;
    for (int p : m.partners[id])
      d.push_back(c.geometry.distance(c.points[id].position, c.points[p].position));
    std::sort(d.begin(), d.end());
    return d;
  };

  auto b1 = blue_ids(cfg), b2 = blue_ids(augmented);
  // The added point is red, so blue points correspond rank for rank.
  const double inf = std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < b1.size(); ++r) {
    ++rep.cases;
    auto d1 = sorted_partner_dists(cfg, base, b1[r]);
    auto d2 = sorted_partner_dists(augmented, extra, b2[r]);
    size_t kmax = std::max(d1.size(), d2.size());
    for (size_t k = 0; k < kmax; ++k) {
      double before = k < d1.size() ? d1[k] : inf;
      double after = k < d2.size() ? d2[k] : inf;
      if (after > before) {
        Witness w;
        w.ids = {b1[r], b2[r], static_cast<int>(k), -1};
        w.d1 = before;
        w.d2 = after;
        w.note = "k-th partner distance grew after adding a red point";
        rep.witnesses.push_back(w);
      }
    }
  }
  rep.vacuous = b1.empty();
  rep.finalize();
  return rep;
}

ViolationReport check_oracle_equivalence(const Configuration& cfg) {
  ViolationReport rep;
  rep.check = "oracle_equivalence";
  Matching greedy = stable_match_greedy(cfg);
  Matching rounds = stable_match_rounds(cfg);
  if (cfg.collision || greedy.tie_flag || rounds.tie_flag) {
    rep.excluded = true;
    return rep;
  }
  auto ge = greedy.sorted_edges();
  auto re = rounds.sorted_edges();
  rep.cases = static_cast<long long>(std::max(ge.size(), re.size()));
  std::vector<std::pair<int, int>> only;
  std::set_difference(ge.begin(), ge.end(), re.begin(), re.end(),
                      std::back_inserter(only));
  for (auto [a, b] : only) {
    Witness w;
    w.ids = {a, b, -1, -1};
    w.note = "edge only in greedy output";
    rep.witnesses.push_back(w);
  }
  only.clear();
  std::set_difference(re.begin(), re.end(), ge.begin(), ge.end(),
                      std::back_inserter(only));
  for (auto [a, b] : only) {
    Witness w;
    w.ids = {a, b, -1, -1};
    w.note = "edge only in rounds output";
    rep.witnesses.push_back(w);
  }
  rep.vacuous = ge.empty() && re.empty();
  rep.finalize();
  return rep;
}

Configuration random_instance(const InstanceParams& params, std::uint64_t master,
                              std::uint64_t index) {
  if (params.n_points < (params.mode == Mode::TwoColor ? 2 : 1))
    throw std::invalid_argument("instance needs at least one point per color");

  RngStream pos_red(master, index, Stream::PositionsRed);
  RngStream pos_blue(master, index, Stream::PositionsBlue);
  RngStream marks_red(master, index, Stream::MarksRed);
  RngStream marks_blue(master, index, Stream::MarksBlue);

  const int n = params.n_points;
  const bool two = params.mode == Mode::TwoColor;
  const int n_red = two ? n / 2 : n;
  const int n_blue = two ? n - n / 2 : 0;

  std::vector<MarkedPoint> red, blue;
  if (params.geometry == Geometry::Kind::Cycle) {
    // Unit intensity per color pair: n points on circumference n.
    Geometry g = Geometry::cycle(static_cast<double>(n));
    red = sample_uniform_cycle(n_red, g, Color::Red, pos_red);
    if (two) blue = sample_uniform_cycle(n_blue, g, Color::Blue, pos_blue);
    assign_marks(red, params.law_red, marks_red);
    if (two) assign_marks(blue, params.law_blue, marks_blue);
    return build_configuration(std::move(red), std::move(blue), g, params.mode);
  }
  Geometry g = Geometry::line(two ? n / 4.0 : n / 2.0);
  red = sample_uniform_line(n_red, g, Color::Red, pos_red);
  if (two) blue = sample_uniform_line(n_blue, g, Color::Blue, pos_blue);
  assign_marks(red, params.law_red, marks_red);
  if (two) assign_marks(blue, params.law_blue, marks_blue);
  return build_configuration(std::move(red), std::move(blue), g, params.mode);
}

}  // namespace smm
