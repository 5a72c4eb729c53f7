#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mgp/mcmc.hpp"

namespace mgp {

enum class BenchTask { SwissAee, CircleMspe, RateCheck, TheoryCheck };
enum class BenchModel { GpEb, GpFixedD, TwoGp, Cv };

std::string to_string(BenchTask t);
std::string to_string(BenchModel m);
BenchTask bench_task_from_string(const std::string& s);
BenchModel bench_model_from_string(const std::string& s);

struct ExperimentSpec {
  BenchTask task = BenchTask::SwissAee;
  std::vector<int> sample_sizes = {50, 100, 200, 400};
  int replicates = 20;
  BenchModel model = BenchModel::GpEb;
  McmcConfig mcmc;
  std::uint64_t seed = 0;
  std::string out_path;
  bool allow_partial = false;

  // data generation
  int ambient_dim = 100;
  double noise_sd = 0.1;
  int harmonics = 3;      // circle surrogate
  int circle_total = 72;  // circle-mspe pool size; sample_sizes are train sizes

  // model knobs
  double a0 = 1.0, b0 = 1.0;
  int fixed_d = 2;     // gp-fixed-d
  int circle_prior_d = 1;
  int d_max = 5;       // cv
  double test_fraction = 0.5;
  double tau = 0.0;    // <= 0: data-driven
  int thin = 10;
  int draws_per_a = 1;
  int n_neighbors = 0;  // 2gp graph; <= 0: default
  int d_tilde = 2;

  // rate-check
  double rate_s = 2.0;
  int rate_d = 2;
};

struct CellRecord {
  int n = 0;
  int replicate = 0;
  std::string model;
  double error = 0.0;
  bool failed = false;
  std::string message;
};

struct Aggregate {
  int n = 0;
  std::string model;
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct TheoryCheckResult {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<CellRecord> cells;
  std::vector<Aggregate> aggregates;
  std::optional<RateFit> rate_fit;
  double theory_slope = 0.0;  // rate-check task
  std::vector<TheoryCheckResult> checks;  // theory-check task
};

// Runs one cell per (sample size, replicate); cell seeds derive from
// the master seed so cells are order-independent. A cell failure
// aborts unless allow_partial, in which case it is recorded and
// excluded from aggregates. cell_override is a test hook replacing
// the generate-and-fit pipeline of a cell.
ExperimentReport run_experiment(
    const ExperimentSpec& spec,
    const std::function<double(const ExperimentSpec&, int, int, std::uint64_t)>&
        cell_override = {});

// Least-squares slope of log(mean error) on log(n).
RateFit fit_log_log(const std::vector<double>& ns,
                    const std::vector<double>& mean_errors);

// (fitted slope, theoretical slope -s/(2s+d)); requires >= 3 sizes
// with positive mean errors. No pass/fail at this layer.
std::pair<double, double> rate_check(
    const std::vector<std::pair<double, double>>& errors_by_n, int d, double s);

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);
std::string report_to_json(const ExperimentReport& report);
std::string report_cells_csv(const ExperimentReport& report);
std::string render_table(const ExperimentReport& report);

// Writes <out_path> (JSON) and <out_path>.cells.csv.
void write_report(const ExperimentReport& report, const std::string& out_path);

}  // namespace mgp
