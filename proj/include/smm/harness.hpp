#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "smm/configuration.hpp"
#include "smm/degree_law.hpp"

namespace smm {

// How to lay out one replicate's point configuration. Cycle recipes place
// fixed point counts uniformly; line recipes draw Poisson processes with the
// given intensities on [-halfwidth, halfwidth].
struct GeometryRecipe {
  Geometry::Kind kind = Geometry::Kind::Cycle;
  int n_red = 0;
  int n_blue = 0;
  double circumference = 0.0;  // 0 picks n_red + n_blue (unit total intensity)
  double halfwidth = 0.0;
  double intensity_red = 1.0;
  double intensity_blue = 1.0;
};

struct ExperimentSpec {
  std::string name;
  GeometryRecipe recipe;
  Mode mode = Mode::TwoColor;
  DegreeLaw law_red = DegreeLaw::constant(2);
  DegreeLaw law_blue = DegreeLaw::constant(2);
  int replicates = 1;
  std::uint64_t master_seed = 0;
  int jobs = 1;
  // Extra per-replicate analyses: "roles" and/or "crossings" (JSON output
  // only; the largest component summary always runs).
  std::vector<std::string> analyses;

  void validate() const;  // throws std::invalid_argument
};

struct ReplicateResult {
  int replicate = 0;
  bool ok = false;
  std::string error;
  int points = 0;
  double largest_fraction = 0.0;
  int component_count = 0;
  long long unmatched_stubs = 0;
  double runtime_seconds = 0.0;
  std::array<long long, 4> roles{0, 0, 0, 0};
  long long crossing_pairs = -1;
};

// Replicates run independently (OpenMP, `jobs` at a time) and land in a
// slot per index, so every aggregate is identical at any parallelism level.
// mean/stddev cover the ok replicates, stddev with the n-1 denominator.
struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ReplicateResult> replicates;
  int ok_count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  bool stub_balance_warning = false;  // expected stub mass differs between colors
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// The reproduction targets: eight degree laws at three point scales, ten
// replicates each on a cycle holding n points per color on circumference 2n.
struct Table1Row {
  std::string label;
  DegreeLaw law;
  std::array<double, 3> reference_mean;  // indexed by canonical scale
  std::array<double, 3> reference_std;
};

const std::vector<Table1Row>& table1_rows();
const std::array<int, 3>& table1_sizes();

struct Table1Cell {
  std::string label;
  int size = 0;
  double reference_mean = 0.0;
  double reference_std = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
  ExperimentResult result;
};

// tolerance = max(5 * ref_std, 0.25 * ref_mean, 0.005); verdict holds when
// |mean - ref_mean| <= tolerance.
std::vector<Table1Cell> run_table1(const std::vector<int>& sizes,
                                   std::uint64_t master_seed, int replicates,
                                   int jobs);

// row_label,size,rep,largest_fraction,components,unmatched_stubs
// (full-precision fractions: aggregates recompute exactly from these rows)
void write_table1_replicates_csv(const std::vector<Table1Cell>& cells,
                                 std::ostream& out);
// row_label,size,mean,std,paper_mean,paper_std,verdict (4 decimal places)
void write_table1_aggregate_csv(const std::vector<Table1Cell>& cells,
                                std::ostream& out);
nlohmann::json table1_json(const std::vector<Table1Cell>& cells);

// Desire growth around the origin on a line window as wide as the largest
// requested halfwidth: per window, the count of blue points inside it that
// desire the origin, aggregated over seeds as median and quartiles.
struct DesireGrowthResult {
  struct Row {
    double window = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
  };
  std::vector<Row> rows;
  std::vector<std::vector<long long>> counts;  // per window, per seed
};

DesireGrowthResult run_desire_growth(const std::vector<double>& windows, int seeds,
                                     const DegreeLaw& law_red,
                                     const DegreeLaw& law_blue,
                                     std::uint64_t master_seed, int jobs);
void write_desire_growth_csv(const DesireGrowthResult& r, std::ostream& out);

// One-color versus two-color largest components at equal total intensity:
// 2n points of one color versus n per color, both on a cycle of
// circumference 2n, all degrees 2.
struct ContrastResult {
  int n = 0;
  ExperimentResult two_color;
  ExperimentResult one_color;
  double ratio = 0.0;  // one-color mean over two-color mean
};

ContrastResult run_color_contrast(int n, int replicates, std::uint64_t master_seed,
                                  int jobs);
void write_contrast_csv(const ContrastResult& r, std::ostream& out);

// Flat key=value experiment description; every key mirrors a CLI flag of the
// experiment subcommand. '#' starts a comment.
struct SpecFile {
  ExperimentSpec spec;
  std::string out;           // empty = stdout
  std::string format = "csv";
};

SpecFile parse_spec_file(std::istream& in);

// row_label,size,rep,... rows for one free-form experiment (same schema as
// the table rows, with the spec name as label).
void write_experiment_replicates_csv(const ExperimentResult& r, std::ostream& out);
void write_experiment_aggregate_csv(const ExperimentResult& r, std::ostream& out);
nlohmann::json experiment_json(const ExperimentResult& r);

}  // namespace smm
