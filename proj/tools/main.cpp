#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "smm/analysis.hpp"
#include "smm/components.hpp"
#include "smm/harness.hpp"
#include "smm/matcher.hpp"
#include "smm/pointgen.hpp"
#include "smm/validators.hpp"

namespace {

using namespace smm;

// Shared option values; CLI11 fallthrough lets subcommands read app-level flags.
struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  int threshold = 20;
};

// Writes to --out or stdout; failure to open is an I/O error (exit 1).
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Configuration load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return load_configuration(in);
}

DegreeLaw parse_law_flag(const std::string& text) {
  try {
    return DegreeLaw::parse(text);
  } catch (const std::invalid_argument& e) {
    // Degree law syntax errors are usage errors.
    throw CLI::ValidationError("--law", e.what());
  }
}

int cmd_sample(const GlobalOpts& g, const std::string& geometry, int n,
               double circumference, double halfwidth, double intensity,
               const std::string& mode_name, const std::string& law_red_text,
               const std::string& law_blue_text, int rep) {
  Mode mode = mode_name == "onecolor" ? Mode::OneColor : Mode::TwoColor;
  DegreeLaw law_red = parse_law_flag(law_red_text);
  DegreeLaw law_blue = parse_law_flag(law_blue_text.empty() ? law_red_text
                                                            : law_blue_text);
  RngStream pos_red(g.seed, rep, Stream::PositionsRed);
  RngStream pos_blue(g.seed, rep, Stream::PositionsBlue);
  RngStream marks_red(g.seed, rep, Stream::MarksRed);
  RngStream marks_blue(g.seed, rep, Stream::MarksBlue);

  std::vector<MarkedPoint> red, blue;
  const bool two = mode == Mode::TwoColor;
  Configuration cfg = [&] {
    if (geometry == "cycle") {
      double circ = circumference > 0.0 ? circumference
                                        : static_cast<double>(two ? 2 * n : n);
      Geometry geo = Geometry::cycle(circ);
      red = sample_uniform_cycle(n, geo, Color::Red, pos_red);
      if (two) blue = sample_uniform_cycle(n, geo, Color::Blue, pos_blue);
      assign_marks(red, law_red, marks_red);
      if (two) assign_marks(blue, law_blue, marks_blue);
      return build_configuration(std::move(red), std::move(blue), geo, mode);
    }
    Geometry geo = Geometry::line(halfwidth);
    red = sample_poisson_line(intensity, geo, Color::Red, pos_red);
    if (two) blue = sample_poisson_line(intensity, geo, Color::Blue, pos_blue);
    assign_marks(red, law_red, marks_red);
    if (two) assign_marks(blue, law_blue, marks_blue);
    return build_configuration(std::move(red), std::move(blue), geo, mode);
  }();

  OutputTarget out(g.out);
  dump_configuration(cfg, out.stream());
  return 0;
}

int cmd_match(const GlobalOpts& g, const std::string& input,
              const std::string& engine) {
  Configuration cfg = load_config_file(input);
  Matching m = engine == "rounds" ? stable_match_rounds(cfg)
                                  : stable_match_greedy(cfg);
  OutputTarget out(g.out);
  if (g.format == "json")
    dump_matching_json(m, out.stream());
  else
    dump_matching_text(m, cfg, out.stream());
  return 0;
}

int cmd_analyze(const GlobalOpts& g, const std::string& input,
                const std::string& engine) {
  Configuration cfg = load_config_file(input);
  Matching m = engine == "rounds" ? stable_match_rounds(cfg)
                                  : stable_match_greedy(cfg);
  ComponentSummary cs = components(cfg, m);
  OutputTarget out(g.out);
  if (g.format == "json") {
    nlohmann::json j;
    j["points"] = cfg.size();
    j["edges"] = m.edges.size();
    j["largest_fraction"] = cs.largest_fraction(cfg.size());
    j["components"] = cs.count();
    j["unmatched_stubs"] = m.total_unmatched();
    auto hist = role_histogram(cfg, m);
    j["roles"] = {{"left_beak", hist[0]},
                  {"right_beak", hist[1]},
                  {"bird", hist[2]},
                  {"other", hist[3]}};
    auto cr = crossings(cfg, m, cs);
    j["crossing_pairs"] = cr.pairs.size();
    j["excluded_edges"] = cr.excluded_edges;
    j["tie_flag"] = m.tie_flag;
    j["collision_flag"] = cfg.collision;
    out.stream() << j.dump(2) << '\n';
  } else {
    write_components_csv(cs, out.stream());
  }
  return 0;
}

int cmd_table1(const GlobalOpts& g, std::vector<int> sizes, int replicates,
               const std::string& replicate_csv) {
  if (sizes.empty())
    sizes.assign(table1_sizes().begin(), table1_sizes().end());
  auto cells = run_table1(sizes, g.seed, replicates, g.jobs);
  OutputTarget out(g.out);
  if (g.format == "json") {
    out.stream() << table1_json(cells).dump(2) << '\n';
  } else {
    write_table1_aggregate_csv(cells, out.stream());
  }
  if (!replicate_csv.empty()) {
    std::ofstream reps(replicate_csv);
    if (!reps) throw std::runtime_error("cannot open output file: " + replicate_csv);
    write_table1_replicates_csv(cells, reps);
  }
  int failed = 0;
  for (const auto& c : cells)
    if (!c.verdict) ++failed;
  if (failed > 0)
    std::cerr << failed << " of " << cells.size()
              << " cells outside the reference tolerance\n";
  return 0;
}

int cmd_desire_growth(const GlobalOpts& g, std::vector<double> windows, int seeds,
                      const std::string& law_red_text,
                      const std::string& law_blue_text) {
  if (windows.empty()) windows = {100.0, 1000.0, 10000.0};
  DegreeLaw law_red = parse_law_flag(law_red_text);
  DegreeLaw law_blue = parse_law_flag(law_blue_text.empty() ? law_red_text
                                                            : law_blue_text);
  auto r = run_desire_growth(windows, seeds, law_red, law_blue, g.seed, g.jobs);
  OutputTarget out(g.out);
  if (g.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (size_t wi = 0; wi < r.rows.size(); ++wi) {
      j.push_back({{"window", r.rows[wi].window},
                   {"median", r.rows[wi].median},
                   {"q1", r.rows[wi].q1},
                   {"q3", r.rows[wi].q3},
                   {"counts", r.counts[wi]}});
    }
    out.stream() << j.dump(2) << '\n';
  } else {
    write_desire_growth_csv(r, out.stream());
  }
  return 0;
}

int cmd_contrast(const GlobalOpts& g, int n, int replicates) {
  auto r = run_color_contrast(n, replicates, g.seed, g.jobs);
  OutputTarget out(g.out);
  if (g.format == "json") {
    nlohmann::json j;
    j["n"] = r.n;
    j["two_color"] = experiment_json(r.two_color);
    j["one_color"] = experiment_json(r.one_color);
    j["ratio"] = r.ratio;
    out.stream() << j.dump(2) << '\n';
  } else {
    write_contrast_csv(r, out.stream());
  }
  return 0;
}

int cmd_experiment(const GlobalOpts& g, const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::runtime_error("cannot open spec file: " + spec_path);
  SpecFile file = parse_spec_file(in);
  if (file.spec.jobs == 1 && g.jobs > 1) file.spec.jobs = g.jobs;
  ExperimentResult r = run_experiment(file.spec);
  std::string out_path = !g.out.empty() ? g.out : file.out;
  std::string format = g.format != "csv" ? g.format : file.format;
  OutputTarget out(out_path);
  if (format == "json") {
    out.stream() << experiment_json(r).dump(2) << '\n';
  } else {
    write_experiment_replicates_csv(r, out.stream());
    std::ostringstream agg;
    write_experiment_aggregate_csv(r, agg);
    std::cerr << agg.str();
  }
  if (r.stub_balance_warning)
    std::cerr << "warning: expected stub mass differs between colors; "
                 "heavy unmatched mass is expected\n";
  return 0;
}

// Deterministic parameter rotation for the verification sweep.
InstanceParams sweep_params(int i, int max_n) {
  static const std::vector<DegreeLaw> laws = {
      DegreeLaw::constant(1),     DegreeLaw::constant(2),
      DegreeLaw::constant(3),     DegreeLaw::two_point(2, 3, 0.5),
      DegreeLaw::poisson_shift(2.0, 1)};
  InstanceParams p;
  p.geometry = i % 2 == 0 ? Geometry::Kind::Cycle : Geometry::Kind::Line;
  p.mode = i % 4 < 3 ? Mode::TwoColor : Mode::OneColor;
  p.law_red = laws[i % laws.size()];
  p.law_blue = laws[(i / 2) % laws.size()];
  p.n_points = 10 + (i * 37) % (max_n > 10 ? max_n - 9 : 1);
  return p;
}

int cmd_verify(const GlobalOpts& g, int max_n, int instances) {
  long long stability_witnesses = 0, oracle_witnesses = 0;
  long long stability_cases = 0, excluded = 0;

  for (int i = 0; i < instances; ++i) {
    InstanceParams p = sweep_params(i, max_n);
    Configuration cfg = random_instance(p, g.seed, i);

    auto rep_oracle = check_oracle_equivalence(cfg);
    if (rep_oracle.excluded) {
      ++excluded;
      continue;
    }
    oracle_witnesses += static_cast<long long>(rep_oracle.witnesses.size());

    for (auto* build : {&stable_match_greedy, &stable_match_rounds}) {
      Matching m = (*build)(cfg);
      auto rep = check_stability(cfg, m, g.jobs);
      stability_witnesses += static_cast<long long>(rep.witnesses.size());
      stability_cases += rep.cases;
    }
  }

  // Monotonicity trials on smaller instances; the added point's position
  // comes from the auxiliary stream, its stubs from the red law.
  long long mono_witnesses = 0;
  int mono_trials = 0;
  for (int i = 0; i < instances; ++i) {
    InstanceParams p = sweep_params(i, std::min(max_n, 300));
    if (p.mode != Mode::TwoColor) continue;
    Configuration cfg = random_instance(p, g.seed ^ 0x5eedULL, i);
    RngStream aux(g.seed ^ 0x5eedULL, i, Stream::Aux);
    double w = aux.uniform(cfg.geometry.lo(), cfg.geometry.hi());
    int stubs = p.law_red.sample(aux);
    try {
      auto rep = check_monotonicity(cfg, w, stubs);
      if (rep.excluded) {
        ++excluded;
        continue;
      }
      ++mono_trials;
      mono_witnesses += static_cast<long long>(rep.witnesses.size());
    } catch (const std::invalid_argument&) {
      ++excluded;  // position collision; vanishing probability
    }
  }

  // Degree-2 lemma suite on line runs.
  long long crossing_witnesses = 0, mia_witnesses = 0, samba_witnesses = 0,
            spacing_witnesses = 0, lemma_observations = 0;
  int lemma_runs = std::max(5, instances / 10);
  for (int s = 0; s < lemma_runs; ++s) {
    std::uint64_t seed = g.seed ^ 0x1e44aULL;
    RngStream pos_red(seed, s, Stream::PositionsRed);
    RngStream pos_blue(seed, s, Stream::PositionsBlue);
    Geometry geo = Geometry::line(std::max(50.0, max_n / 2.0));
    auto red = sample_poisson_line(1.0, geo, Color::Red, pos_red);
    auto blue = sample_poisson_line(1.0, geo, Color::Blue, pos_blue);
    for (auto& pt : red) pt.stubs = 2;
    for (auto& pt : blue) pt.stubs = 2;
    Configuration cfg =
        build_configuration(std::move(red), std::move(blue), geo, Mode::TwoColor);
    Matching m = stable_match_greedy(cfg);
    auto r1 = check_crossing_component(cfg, m);
    auto r2 = check_lemma_mia(cfg, m, g.threshold);
    auto r3 = check_lemma_samba(cfg, m);
    auto r4 = check_comp_spacing(cfg, m, g.threshold);
    crossing_witnesses += static_cast<long long>(r1.witnesses.size());
    mia_witnesses += static_cast<long long>(r2.witnesses.size());
    samba_witnesses += static_cast<long long>(r3.witnesses.size());
    spacing_witnesses += static_cast<long long>(r4.witnesses.size());
    lemma_observations += static_cast<long long>(r2.observations.size());
  }

  auto line = [](const char* name, long long witnesses, const std::string& extra) {
    std::cout << (witnesses == 0 ? "[PASS] " : "[FAIL] ") << name << " witnesses="
              << witnesses << (extra.empty() ? "" : " ") << extra << '\n';
  };
  line("stability", stability_witnesses,
       "pairs_checked=" + std::to_string(stability_cases));
  line("oracle_equivalence", oracle_witnesses, "");
  line("monotonicity", mono_witnesses,
       "trials=" + std::to_string(mono_trials));
  line("crossing_component", crossing_witnesses, "");
  line("lemma_mia", mia_witnesses,
       "observations=" + std::to_string(lemma_observations));
  line("lemma_samba", samba_witnesses, "");
  line("comp_spacing", spacing_witnesses, "");
  std::cout << "excluded_instances=" << excluded << '\n';

  if (!g.out.empty()) {
    OutputTarget out(g.out);
    nlohmann::json j;
    j["stability_witnesses"] = stability_witnesses;
    j["oracle_witnesses"] = oracle_witnesses;
    j["monotonicity_witnesses"] = mono_witnesses;
    j["crossing_witnesses"] = crossing_witnesses;
    j["mia_witnesses"] = mia_witnesses;
    j["samba_witnesses"] = samba_witnesses;
    j["spacing_witnesses"] = spacing_witnesses;
    j["lemma_observations"] = lemma_observations;
    j["excluded_instances"] = excluded;
    out.stream() << j.dump(2) << '\n';
  }
  // Hard failures are stability and oracle equivalence; the lemma surrogates
  // report but do not gate.
  return stability_witnesses + oracle_witnesses > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable multi-matching simulator for marked points on line and cycle"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "parallel replicates")->check(CLI::PositiveNumber);
  app.add_option("--threshold", g.threshold, "large component size threshold")
      ->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "sample a marked configuration");
  std::string geometry = "cycle", mode_name = "twocolor";
  std::string law_red_text = "constant:2", law_blue_text;
  int n = 100, rep = 0;
  double circumference = 0.0, halfwidth = 50.0, intensity = 1.0;
  sample->add_option("--geometry", geometry)->check(CLI::IsMember({"cycle", "line"}));
  sample->add_option("--n", n, "points per color (cycle)")->check(CLI::PositiveNumber);
  sample->add_option("--circumference", circumference, "cycle circumference (0 = default)");
  sample->add_option("--halfwidth", halfwidth, "line window halfwidth");
  sample->add_option("--intensity", intensity, "line process intensity per color");
  sample->add_option("--mode", mode_name)->check(CLI::IsMember({"onecolor", "twocolor"}));
  sample->add_option("--law", law_red_text, "degree law (both colors unless --law-blue)");
  sample->add_option("--law-blue", law_blue_text, "blue degree law");
  sample->add_option("--rep", rep, "replicate index for stream derivation");

  auto* match = app.add_subcommand("match", "run a matcher on a configuration file");
  std::string input, engine = "greedy";
  match->add_option("--input", input, "configuration file")->required();
  match->add_option("--engine", engine)->check(CLI::IsMember({"greedy", "rounds"}));

  auto* analyze = app.add_subcommand("analyze", "match and summarize a configuration");
  std::string ain, aengine = "greedy";
  analyze->add_option("--input", ain, "configuration file")->required();
  analyze->add_option("--engine", aengine)->check(CLI::IsMember({"greedy", "rounds"}));

  auto* verify = app.add_subcommand("verify", "randomized structural verification");
  int vn = 200, vinstances = 50;
  verify->add_option("--n", vn, "max instance size")->check(CLI::PositiveNumber);
  verify->add_option("--instances", vinstances, "instances per sweep")
      ->check(CLI::PositiveNumber);

  auto* table1 = app.add_subcommand("table1", "largest-component reproduction table");
  std::vector<int> sizes;
  int replicates = 10;
  std::string replicate_csv;
  table1->add_option("--sizes", sizes, "subset of {5000, 20000, 50000}");
  table1->add_option("--replicates", replicates)->check(CLI::PositiveNumber);
  table1->add_option("--per-replicate", replicate_csv,
                     "also write the per-replicate CSV to this path");

  auto* desire = app.add_subcommand("desire-growth", "desire counts around the origin");
  std::vector<double> windows;
  int seeds = 30;
  std::string dlaw_red = "constant:2", dlaw_blue;
  desire->add_option("--windows", windows, "window halfwidths, increasing");
  desire->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
  desire->add_option("--law", dlaw_red, "degree law (both colors unless --law-blue)");
  desire->add_option("--law-blue", dlaw_blue, "blue degree law");

  auto* contrast = app.add_subcommand("contrast", "one-color vs two-color degree 2");
  int cn = 20000, creps = 10;
  contrast->add_option("--n", cn, "points per color for the two-color side")
      ->check(CLI::PositiveNumber);
  contrast->add_option("--replicates", creps)->check(CLI::PositiveNumber);

  auto* experiment = app.add_subcommand("experiment", "run a key=value experiment spec");
  std::string spec_path;
  experiment->add_option("--spec", spec_path, "spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (sample->parsed())
      return cmd_sample(g, geometry, n, circumference, halfwidth, intensity,
                        mode_name, law_red_text, law_blue_text, rep);
    if (match->parsed()) return cmd_match(g, input, engine);
    if (analyze->parsed()) return cmd_analyze(g, ain, aengine);
    if (verify->parsed()) return cmd_verify(g, vn, vinstances);
    if (table1->parsed()) return cmd_table1(g, sizes, replicates, replicate_csv);
    if (desire->parsed())
      return cmd_desire_growth(g, windows, seeds, dlaw_red, dlaw_blue);
    if (contrast->parsed()) return cmd_contrast(g, cn, creps);
    if (experiment->parsed()) return cmd_experiment(g, spec_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
