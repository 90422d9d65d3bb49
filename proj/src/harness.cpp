#include "smm/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "smm/analysis.hpp"
#include "smm/components.hpp"
#include "smm/matcher.hpp"
#include "smm/pointgen.hpp"
#include "smm/rng.hpp"

namespace smm {

namespace {

bool wants(const std::vector<std::string>& analyses, const char* what) {
  return std::find(analyses.begin(), analyses.end(), what) != analyses.end();
}

Configuration sample_replicate(const ExperimentSpec& spec, int rep) {
  RngStream pos_red(spec.master_seed, rep, Stream::PositionsRed);
  RngStream pos_blue(spec.master_seed, rep, Stream::PositionsBlue);
  RngStream marks_red(spec.master_seed, rep, Stream::MarksRed);
  RngStream marks_blue(spec.master_seed, rep, Stream::MarksBlue);
  const bool two = spec.mode == Mode::TwoColor;
  std::vector<MarkedPoint> red, blue;
  if (spec.recipe.kind == Geometry::Kind::Cycle) {
    double circ = spec.recipe.circumference > 0.0
                      ? spec.recipe.circumference
                      : static_cast<double>(spec.recipe.n_red + spec.recipe.n_blue);
    Geometry g = Geometry::cycle(circ);
    red = sample_uniform_cycle(spec.recipe.n_red, g, Color::Red, pos_red);
    if (two) blue = sample_uniform_cycle(spec.recipe.n_blue, g, Color::Blue, pos_blue);
    assign_marks(red, spec.law_red, marks_red);
    if (two) assign_marks(blue, spec.law_blue, marks_blue);
    return build_configuration(std::move(red), std::move(blue), g, spec.mode);
  }
  Geometry g = Geometry::line(spec.recipe.halfwidth);
  red = sample_poisson_line(spec.recipe.intensity_red, g, Color::Red, pos_red);
  if (two) blue = sample_poisson_line(spec.recipe.intensity_blue, g, Color::Blue, pos_blue);
  assign_marks(red, spec.law_red, marks_red);
  if (two) assign_marks(blue, spec.law_blue, marks_blue);
  return build_configuration(std::move(red), std::move(blue), g, spec.mode);
}

ReplicateResult run_replicate(const ExperimentSpec& spec, int rep) {
  ReplicateResult r;
  r.replicate = rep;
  double t0 = omp_get_wtime();
  try {
    Configuration cfg = sample_replicate(spec, rep);
    Matching m = stable_match_greedy(cfg);
    ComponentSummary cs = components(cfg, m);
    r.points = cfg.size();
    r.largest_fraction = cs.largest_fraction(cfg.size());
    r.component_count = cs.count();
    r.unmatched_stubs = m.total_unmatched();
    if (wants(spec.analyses, "roles")) r.roles = role_histogram(cfg, m);
    if (wants(spec.analyses, "crossings"))
      r.crossing_pairs = static_cast<long long>(crossings(cfg, m, cs).pairs.size());
    r.ok = true;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  r.runtime_seconds = omp_get_wtime() - t0;
  return r;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (recipe.kind == Geometry::Kind::Cycle) {
    if (recipe.n_red < 1) throw std::invalid_argument("cycle recipe needs n_red >= 1");
    if (mode == Mode::TwoColor && recipe.n_blue < 1)
      throw std::invalid_argument("two-color cycle recipe needs n_blue >= 1");
    if (recipe.circumference < 0.0)
      throw std::invalid_argument("circumference must be positive (or 0 for default)");
  } else {
    if (!(recipe.halfwidth > 0.0))
      throw std::invalid_argument("line recipe needs halfwidth > 0");
    if (!(recipe.intensity_red > 0.0))
      throw std::invalid_argument("line recipe needs intensity_red > 0");
    if (mode == Mode::TwoColor && !(recipe.intensity_blue > 0.0))
      throw std::invalid_argument("line recipe needs intensity_blue > 0");
  }
  for (const auto& a : analyses)
    if (a != "roles" && a != "crossings")
      throw std::invalid_argument("unknown analysis: " + a);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult out;
  out.spec = spec;
  out.replicates.resize(spec.replicates);

  const int T = spec.jobs;
#pragma omp parallel for schedule(dynamic) num_threads(T)
  for (int i = 0; i < spec.replicates; ++i)
    out.replicates[i] = run_replicate(spec, i);

  // Aggregate strictly in replicate order so any --jobs level sums the same.
  double sum = 0.0;
  for (const auto& r : out.replicates) {
    if (!r.ok) continue;
    ++out.ok_count;
    sum += r.largest_fraction;
  }
  out.mean = out.ok_count > 0 ? sum / out.ok_count : 0.0;
  double ss = 0.0;
  for (const auto& r : out.replicates) {
    if (!r.ok) continue;
    ss += (r.largest_fraction - out.mean) * (r.largest_fraction - out.mean);
  }
  out.stddev = out.ok_count > 1 ? std::sqrt(ss / (out.ok_count - 1)) : 0.0;

  if (spec.mode == Mode::TwoColor) {
    double red_mass, blue_mass;
    if (spec.recipe.kind == Geometry::Kind::Cycle) {
      red_mass = spec.recipe.n_red * spec.law_red.mean();
      blue_mass = spec.recipe.n_blue * spec.law_blue.mean();
    } else {
      red_mass = spec.recipe.intensity_red * spec.law_red.mean();
      blue_mass = spec.recipe.intensity_blue * spec.law_blue.mean();
    }
    double scale = std::max(std::abs(red_mass), std::abs(blue_mass));
    out.stub_balance_warning = scale > 0.0 && std::abs(red_mass - blue_mass) > 1e-9 * scale;
  }
  return out;
}

const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows = {
      {"2", DegreeLaw::constant(2),
       {0.0047, 0.0013, 0.0007}, {0.0008, 0.0017, 0.0001}},
      {"3", DegreeLaw::constant(3),
       {0.0716, 0.0280, 0.0068}, {0.0226, 0.0035, 0.0066}},
      {"4", DegreeLaw::constant(4),
       {0.5628, 0.4124, 0.2897}, {0.1754, 0.1517, 0.1190}},
      {"5", DegreeLaw::constant(5),
       {0.9706, 0.8920, 0.9001}, {0.0563, 0.0956, 0.1470}},
      {"2 and 3", DegreeLaw::two_point(2, 3, 0.5),
       {0.0532, 0.0209, 0.0109}, {0.01809, 0.0060, 0.0030}},
      {"3 and 4", DegreeLaw::two_point(3, 4, 0.5),
       {0.7794, 0.4319, 0.32953}, {0.1549, 0.208, 0.1700}},
      {"Poisson(2)+1", DegreeLaw::poisson_shift(2.0, 1),
       {0.4029, 0.2158, 0.1668}, {0.1505, 0.1010, 0.0686}},
      {"Poisson(2)+2", DegreeLaw::poisson_shift(2.0, 2),
       {0.7626, 0.7286, 0.7612}, {0.2471, 0.1949, 0.1273}},
  };
  return rows;
}

const std::array<int, 3>& table1_sizes() {
  static const std::array<int, 3> sizes = {5000, 20000, 50000};
  return sizes;
}

std::vector<Table1Cell> run_table1(const std::vector<int>& sizes,
                                   std::uint64_t master_seed, int replicates,
                                   int jobs) {
  const auto& canon = table1_sizes();
  std::vector<int> scale_index;
  for (int s : sizes) {
    auto it = std::find(canon.begin(), canon.end(), s);
    if (it == canon.end())
      throw std::invalid_argument("size must be one of 5000, 20000, 50000");
    scale_index.push_back(static_cast<int>(it - canon.begin()));
  }

  std::vector<Table1Cell> cells;
  const auto& rows = table1_rows();
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t si = 0; si < sizes.size(); ++si) {
      const int n = sizes[si];
      Table1Cell cell;
      cell.label = rows[r].label;
      cell.size = n;
      cell.reference_mean = rows[r].reference_mean[scale_index[si]];
      cell.reference_std = rows[r].reference_std[scale_index[si]];
      cell.tolerance = std::max({5.0 * cell.reference_std,
                                 0.25 * cell.reference_mean, 0.005});

      ExperimentSpec spec;
      spec.name = rows[r].label;
      spec.recipe.kind = Geometry::Kind::Cycle;
      spec.recipe.n_red = n;
      spec.recipe.n_blue = n;
      spec.recipe.circumference = 2.0 * n;
      spec.mode = Mode::TwoColor;
      spec.law_red = rows[r].law;
      spec.law_blue = rows[r].law;
      spec.replicates = replicates;
      // Each cell owns an independent seed domain, so running a subset of
      // sizes reproduces the corresponding cells of a full run.
      spec.master_seed = derive_subseed(master_seed, r, static_cast<std::uint64_t>(n));
      spec.jobs = jobs;
      cell.result = run_experiment(spec);
      cell.verdict = std::abs(cell.result.mean - cell.reference_mean) <= cell.tolerance;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void write_table1_replicates_csv(const std::vector<Table1Cell>& cells,
                                 std::ostream& out) {
  out << "row_label,size,rep,largest_fraction,components,unmatched_stubs\n";
  char buf[160];
  for (const auto& cell : cells) {
    for (const auto& r : cell.result.replicates) {
      if (!r.ok) continue;
      std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%d,%lld",
                    cell.label.c_str(), cell.size, r.replicate, r.largest_fraction,
                    r.component_count, r.unmatched_stubs);
      out << buf << '\n';
    }
  }
}

void write_table1_aggregate_csv(const std::vector<Table1Cell>& cells,
                                std::ostream& out) {
  out << "row_label,size,mean,std,paper_mean,paper_std,verdict\n";
  char buf[160];
  for (const auto& cell : cells) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.4f,%.4f,%.4f,%.4f,%s",
                  cell.label.c_str(), cell.size, cell.result.mean,
                  cell.result.stddev, cell.reference_mean, cell.reference_std,
                  cell.verdict ? "pass" : "fail");
    out << buf << '\n';
  }
}

namespace {

nlohmann::json spec_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["mode"] = spec.mode == Mode::OneColor ? "onecolor" : "twocolor";
  j["law_red"] = spec.law_red.to_string();
  j["law_blue"] = spec.law_blue.to_string();
  j["replicates"] = spec.replicates;
  j["seed"] = spec.master_seed;
  if (spec.recipe.kind == Geometry::Kind::Cycle) {
    j["geometry"] = "cycle";
    j["n_red"] = spec.recipe.n_red;
    j["n_blue"] = spec.recipe.n_blue;
    j["circumference"] = spec.recipe.circumference;
  } else {
    j["geometry"] = "line";
    j["halfwidth"] = spec.recipe.halfwidth;
    j["intensity_red"] = spec.recipe.intensity_red;
    j["intensity_blue"] = spec.recipe.intensity_blue;
  }
  return j;
}

nlohmann::json replicate_json(const ReplicateResult& r,
                              const std::vector<std::string>& analyses) {
  nlohmann::json j;
  j["rep"] = r.replicate;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  j["points"] = r.points;
  j["largest_fraction"] = r.largest_fraction;
  j["components"] = r.component_count;
  j["unmatched_stubs"] = r.unmatched_stubs;
  j["runtime_seconds"] = r.runtime_seconds;
  if (wants(analyses, "roles")) {
    j["roles"] = {{"left_beak", r.roles[0]},
                  {"right_beak", r.roles[1]},
                  {"bird", r.roles[2]},
                  {"other", r.roles[3]}};
  }
  if (wants(analyses, "crossings")) j["crossing_pairs"] = r.crossing_pairs;
  return j;
}

nlohmann::json result_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["spec"] = spec_json(r.spec);
  j["mean"] = r.mean;
  j["std"] = r.stddev;
  j["ok_replicates"] = r.ok_count;
  j["stub_balance_warning"] = r.stub_balance_warning;
  j["replicates"] = nlohmann::json::array();
  for (const auto& rep : r.replicates)
    j["replicates"].push_back(replicate_json(rep, r.spec.analyses));
  return j;
}

}  // namespace

nlohmann::json table1_json(const std::vector<Table1Cell>& cells) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& cell : cells) {
    nlohmann::json c = result_json(cell.result);
    c["row_label"] = cell.label;
    c["size"] = cell.size;
    c["paper_mean"] = cell.reference_mean;
    c["paper_std"] = cell.reference_std;
    c["tolerance"] = cell.tolerance;
    c["verdict"] = cell.verdict ? "pass" : "fail";
    j.push_back(std::move(c));
  }
  return j;
}

DesireGrowthResult run_desire_growth(const std::vector<double>& windows, int seeds,
                                     const DegreeLaw& law_red,
                                     const DegreeLaw& law_blue,
                                     std::uint64_t master_seed, int jobs) {
  if (windows.empty()) throw std::invalid_argument("need at least one window");
  for (size_t i = 0; i < windows.size(); ++i) {
    if (!(windows[i] > 0.0)) throw std::invalid_argument("windows must be positive");
    if (i > 0 && windows[i] <= windows[i - 1])
      throw std::invalid_argument("windows must be strictly increasing");
  }
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  DesireGrowthResult out;
  out.counts.assign(windows.size(), std::vector<long long>(seeds, 0));
  Geometry g = Geometry::line(windows.back());

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int s = 0; s < seeds; ++s) {
    RngStream pos_red(master_seed, s, Stream::PositionsRed);
    RngStream pos_blue(master_seed, s, Stream::PositionsBlue);
    RngStream marks_red(master_seed, s, Stream::MarksRed);
    RngStream marks_blue(master_seed, s, Stream::MarksBlue);
    auto red = sample_poisson_line(1.0, g, Color::Red, pos_red);
    auto blue = sample_poisson_line(1.0, g, Color::Blue, pos_blue);
    assign_marks(red, law_red, marks_red);
    assign_marks(blue, law_blue, marks_blue);
    Configuration cfg =
        build_configuration(std::move(red), std::move(blue), g, Mode::TwoColor);
    Matching m = stable_match_greedy(cfg);
    for (size_t wi = 0; wi < windows.size(); ++wi)
      out.counts[wi][s] = desire_count(cfg, m, 0.0, windows[wi], Color::Blue);
  }

  for (size_t wi = 0; wi < windows.size(); ++wi) {
    auto sorted = out.counts[wi];
    std::sort(sorted.begin(), sorted.end());
    const size_t k = sorted.size();
    DesireGrowthResult::Row row;
    row.window = windows[wi];
    row.median = (sorted[(k - 1) / 2] + sorted[k / 2]) / 2.0;
    row.q1 = static_cast<double>(sorted[(k - 1) / 4]);
    row.q3 = static_cast<double>(sorted[(3 * (k - 1)) / 4]);
    out.rows.push_back(row);
  }
  return out;
}

void write_desire_growth_csv(const DesireGrowthResult& r, std::ostream& out) {
  out << "window,median,q1,q3\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%g,%g,%g,%g", row.window, row.median, row.q1,
                  row.q3);
    out << buf << '\n';
  }
}

ContrastResult run_color_contrast(int n, int replicates, std::uint64_t master_seed,
                                  int jobs) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  ContrastResult out;
  out.n = n;

  ExperimentSpec two;
  two.name = "twocolor";
  two.recipe.kind = Geometry::Kind::Cycle;
  two.recipe.n_red = n;
  two.recipe.n_blue = n;
  two.recipe.circumference = 2.0 * n;
  two.mode = Mode::TwoColor;
  two.law_red = DegreeLaw::constant(2);
  two.law_blue = DegreeLaw::constant(2);
  two.replicates = replicates;
  two.master_seed = derive_subseed(master_seed, 2, static_cast<std::uint64_t>(n));
  two.jobs = jobs;

  ExperimentSpec one = two;
  one.name = "onecolor";
  one.mode = Mode::OneColor;
  one.recipe.n_red = 2 * n;
  one.recipe.n_blue = 0;
  one.master_seed = derive_subseed(master_seed, 1, static_cast<std::uint64_t>(n));

  out.two_color = run_experiment(two);
  out.one_color = run_experiment(one);
  out.ratio = out.two_color.mean > 0.0
                  ? out.one_color.mean / out.two_color.mean
                  : std::numeric_limits<double>::infinity();
  return out;
}

void write_contrast_csv(const ContrastResult& r, std::ostream& out) {
  out << "mode,size,mean,std\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "twocolor,%d,%.4f,%.4f", r.n, r.two_color.mean,
                r.two_color.stddev);
  out << buf << '\n';
  std::snprintf(buf, sizeof buf, "onecolor,%d,%.4f,%.4f", r.n, r.one_color.mean,
                r.one_color.stddev);
  out << buf << '\n';
}

namespace {

// Distinct from the std::invalid_argument that std::stoi throws, so parser
// diagnostics keep their line numbers while stoi failures get wrapped.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace

SpecFile parse_spec_file(std::istream& in) {
  SpecFile file;
  ExperimentSpec& spec = file.spec;
  bool have_geometry = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto bad = [&](const std::string& what) {
      throw SpecError("spec line " + std::to_string(lineno) + ": " + what);
    };
    try {
      if (key == "name") spec.name = value;
      else if (key == "geometry") {
        if (value == "cycle") spec.recipe.kind = Geometry::Kind::Cycle;
        else if (value == "line") spec.recipe.kind = Geometry::Kind::Line;
        else bad("geometry must be cycle or line");
        have_geometry = true;
      } else if (key == "n_red") spec.recipe.n_red = std::stoi(value);
      else if (key == "n_blue") spec.recipe.n_blue = std::stoi(value);
      else if (key == "circumference") spec.recipe.circumference = std::stod(value);
      else if (key == "halfwidth") spec.recipe.halfwidth = std::stod(value);
      else if (key == "intensity_red") spec.recipe.intensity_red = std::stod(value);
      else if (key == "intensity_blue") spec.recipe.intensity_blue = std::stod(value);
      else if (key == "mode") {
        if (value == "onecolor") spec.mode = Mode::OneColor;
        else if (value == "twocolor") spec.mode = Mode::TwoColor;
        else bad("mode must be onecolor or twocolor");
      } else if (key == "law_red") spec.law_red = DegreeLaw::parse(value);
      else if (key == "law_blue") spec.law_blue = DegreeLaw::parse(value);
      else if (key == "replicates") spec.replicates = std::stoi(value);
      else if (key == "seed") spec.master_seed = std::stoull(value);
      else if (key == "jobs") spec.jobs = std::stoi(value);
      else if (key == "analyses") {
        spec.analyses.clear();
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
          if (!item.empty()) spec.analyses.push_back(item);
        }
      } else if (key == "out") file.out = value;
      else if (key == "format") {
        if (value != "csv" && value != "json") bad("format must be csv or json");
        file.format = value;
      } else bad("unknown key: " + key);
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception&) {
      bad("bad value for " + key);
    }
  }
  if (!have_geometry)
    throw std::invalid_argument("spec file lacks a geometry key");
  return file;
}

void write_experiment_replicates_csv(const ExperimentResult& r, std::ostream& out) {
  out << "row_label,size,rep,largest_fraction,components,unmatched_stubs\n";
  char buf[160];
  for (const auto& rep : r.replicates) {
    if (!rep.ok) continue;
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%d,%lld", r.spec.name.c_str(),
                  rep.points, rep.replicate, rep.largest_fraction,
                  rep.component_count, rep.unmatched_stubs);
    out << buf << '\n';
  }
}

void write_experiment_aggregate_csv(const ExperimentResult& r, std::ostream& out) {
  out << "row_label,replicates,mean,std\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%d,%.4f,%.4f", r.spec.name.c_str(), r.ok_count,
                r.mean, r.stddev);
  out << buf << '\n';
}

nlohmann::json experiment_json(const ExperimentResult& r) { return result_json(r); }

}  // namespace smm
