#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "smm/matcher.hpp"
#include "smm/validators.hpp"

using namespace smm;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Usage: smm_bench [n_points] [seed] [threads]
// Compares the event engine against the round-based reference and the
// OpenMP stability scan against its serial reference on one instance.
int run(int n, std::uint64_t seed, int threads) {
  InstanceParams params;
  params.geometry = Geometry::Kind::Cycle;
  params.mode = Mode::TwoColor;
  params.law_red = DegreeLaw::two_point(2, 3, 0.5);
  params.law_blue = DegreeLaw::two_point(2, 3, 0.5);
  params.n_points = n;
  Configuration cfg = random_instance(params, seed, 0);
  std::printf("instance: %d points, twopoint:2,3,0.5 marks, cycle\n", cfg.size());

  auto t0 = clock_type::now();
  Matching greedy = stable_match_greedy(cfg);
  double t_greedy = seconds_since(t0);

  t0 = clock_type::now();
  Matching rounds = stable_match_rounds(cfg);
  double t_rounds = seconds_since(t0);

  bool same = greedy.sorted_edges() == rounds.sorted_edges();
  std::printf("matcher   greedy %.3fs   rounds %.3fs   speedup %.1fx   edges %s\n",
              t_greedy, t_rounds, t_rounds / t_greedy,
              same ? "identical" : "DIFFERENT");

  t0 = clock_type::now();
  ViolationReport par = check_stability(cfg, greedy, threads);
  double t_par = seconds_since(t0);

  t0 = clock_type::now();
  ViolationReport ser = check_stability_reference(cfg, greedy);
  double t_ser = seconds_since(t0);

  bool agree = par.pass == ser.pass && par.witnesses.size() == ser.witnesses.size();
  std::printf("stability parallel(%d) %.3fs   serial %.3fs   speedup %.1fx   %s\n",
              threads, t_par, t_ser, t_ser / t_par,
              agree ? (par.pass ? "stable" : "witnesses agree") : "DISAGREE");

  return same && agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 20000;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  int threads = argc > 3 ? std::atoi(argv[3]) : 0;
  if (n < 2) {
    std::fprintf(stderr, "usage: smm_bench [n_points>=2] [seed] [threads]\n");
    return 2;
  }
  return run(n, seed, threads);
}
