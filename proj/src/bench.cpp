#include "mgp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mgp/cv.hpp"
#include "mgp/eigenmap.hpp"
#include "mgp/estimator.hpp"
#include "mgp/gp.hpp"
#include "mgp/intrinsic_dim.hpp"
#include "mgp/manifold_lab.hpp"
#include "mgp/rng.hpp"

namespace mgp {

using ordered_json = nlohmann::ordered_json;

std::string to_string(BenchTask t) {
  switch (t) {
    case BenchTask::SwissAee: return "swiss-aee";
    case BenchTask::CircleMspe: return "circle-mspe";
    case BenchTask::RateCheck: return "rate-check";
    case BenchTask::TheoryCheck: return "theory-check";
  }
  return "?";
}

std::string to_string(BenchModel m) {
  switch (m) {
    case BenchModel::GpEb: return "gp-eb";
    case BenchModel::GpFixedD: return "gp-fixed-d";
    case BenchModel::TwoGp: return "2gp";
    case BenchModel::Cv: return "cv";
  }
  return "?";
}

BenchTask bench_task_from_string(const std::string& s) {
  if (s == "swiss-aee") return BenchTask::SwissAee;
  if (s == "circle-mspe") return BenchTask::CircleMspe;
  if (s == "rate-check") return BenchTask::RateCheck;
  if (s == "theory-check") return BenchTask::TheoryCheck;
  throw std::invalid_argument("unknown bench task '" + s + "'");
}

BenchModel bench_model_from_string(const std::string& s) {
  if (s == "gp-eb") return BenchModel::GpEb;
  if (s == "gp-fixed-d") return BenchModel::GpFixedD;
  if (s == "2gp") return BenchModel::TwoGp;
  if (s == "cv") return BenchModel::Cv;
  throw std::invalid_argument("unknown bench model '" + s + "'");
}

namespace {

void validate_spec(const ExperimentSpec& spec) {
  if (spec.replicates < 1)
    throw std::invalid_argument("bench: replicates must be >= 1");
  if (spec.sample_sizes.empty())
    throw std::invalid_argument("bench: sample_sizes must be non-empty");
  for (std::size_t i = 1; i < spec.sample_sizes.size(); ++i)
    if (spec.sample_sizes[i] <= spec.sample_sizes[i - 1])
      throw std::invalid_argument("bench: sample_sizes must be strictly increasing");
}

double truth_mspe_sqrt(const Eigen::VectorXd& pred, const Eigen::VectorXd& f0) {
  return std::sqrt(mspe(pred, f0));
}

// one swiss-roll fit-and-score; shared by swiss-aee and rate-check
double swiss_cell(const ExperimentSpec& spec, int n, std::uint64_t cell_seed) {
  const SwissRollConfig gen{n, spec.ambient_dim, spec.noise_sd,
                            derive_seed(cell_seed, kSeedGenerator)};
  const LabeledManifoldData data = gen_swiss_roll(gen);
  const double tau_val = spec.tau > 0.0
                             ? spec.tau
                             : default_truncation(data.dataset.responses);

  if (spec.model == BenchModel::Cv) {
    CvConfig cv;
    cv.d_max = spec.d_max;
    cv.test_fraction = spec.test_fraction;
    cv.mcmc = spec.mcmc;
    cv.tau = spec.tau;
    cv.a0 = spec.a0;
    cv.b0 = spec.b0;
    cv.thin = spec.thin;
    cv.draws_per_a = spec.draws_per_a;
    cv.seed = derive_seed(cell_seed, kSeedChain);
    const CvResult res = cross_validate(data.dataset, cv);
    const Eigen::VectorXd f0_train =
        take_elements(data.f0_at_points, res.split.train_idx);
    return empirical_norm(res.final_fit.estimate_at_train, f0_train).value;
  }

  Dataset ds = data.dataset;
  BandwidthPrior prior{spec.a0, spec.b0, spec.fixed_d};
  if (spec.model == BenchModel::GpEb) {
    const auto est = estimate_dimension(
        ds.predictors, std::nullopt,
        static_cast<int>(std::min<Eigen::Index>(ds.n(), 100)),
        derive_seed(cell_seed, kSeedDimension));
    prior.d = est.d_hat_rounded;
  } else if (spec.model == BenchModel::TwoGp) {
    EigenmapConfig emap;
    emap.n_neighbors = spec.n_neighbors;
    emap.d_tilde = spec.d_tilde;
    emap.seed = derive_seed(cell_seed, kSeedDimension);
    const Embedding emb = laplacian_eigenmap(ds.predictors, emap);
    ds = Dataset(emb.coords, ds.responses, ds.source_seed);
    prior.d = spec.circle_prior_d;
  }

  McmcConfig mc = spec.mcmc;
  mc.seed = derive_seed(cell_seed, kSeedChain);
  const BandwidthChain chain = run_chain(ds, prior, mc);
  EstimateOptions opt;
  opt.thin = spec.thin;
  opt.draws_per_a = spec.draws_per_a;
  opt.seed = derive_seed(cell_seed, kSeedEstimator);
  const FitResult fit = estimate(ds, chain, Eigen::MatrixXd(0, ds.dim()),
                                 TruncationLevel(tau_val), opt);
  return empirical_norm(fit.estimate_at_train, data.f0_at_points).value;
}

// circle task: sqrt MSPE against f0 on the held-out rows for the
// vanilla GP, the transductive 2GP and the train-mean baseline
std::map<std::string, double> circle_cell(const ExperimentSpec& spec, int n_train,
                                          std::uint64_t cell_seed) {
  CircleManifoldConfig gen;
  gen.n = spec.circle_total;
  gen.ambient_dim = spec.ambient_dim;
  gen.embedding_harmonics = spec.harmonics;
  gen.noise_sd = spec.noise_sd;
  gen.seed = derive_seed(cell_seed, kSeedGenerator);
  const LabeledManifoldData data = gen_circle_manifold(gen);
  if (n_train < 1 || n_train >= spec.circle_total)
    throw std::invalid_argument("bench: circle train size out of range");

  const double test_fraction =
      static_cast<double>(spec.circle_total - n_train) /
      static_cast<double>(spec.circle_total);
  const SplitIndices sp = split(data.dataset, test_fraction,
                                derive_seed(cell_seed, kSeedSplit));
  const Dataset train = take_rows(data.dataset, sp.train_idx);
  const Eigen::MatrixXd test_x = take_rows(data.dataset.predictors, sp.test_idx);
  const Eigen::VectorXd f0_test = take_elements(data.f0_at_points, sp.test_idx);
  const double tau_val =
      spec.tau > 0.0 ? spec.tau : default_truncation(train.responses);

  std::map<std::string, double> errors;

  // mean-of-training-responses baseline
  {
    const double mean_y = train.responses.mean();
    const Eigen::VectorXd pred =
        Eigen::VectorXd::Constant(f0_test.size(), mean_y);
    errors["mean"] = truth_mspe_sqrt(pred, f0_test);
  }

  // vanilla GP in the ambient space
  {
    McmcConfig mc = spec.mcmc;
    mc.seed = derive_seed(cell_seed, kSeedChain);
    const BandwidthPrior prior{spec.a0, spec.b0, spec.circle_prior_d};
    const BandwidthChain chain = run_chain(train, prior, mc);
    EstimateOptions opt;
    opt.thin = spec.thin;
    opt.draws_per_a = spec.draws_per_a;
    opt.seed = derive_seed(cell_seed, kSeedEstimator);
    const FitResult fit =
        estimate(train, chain, test_x, TruncationLevel(tau_val), opt);
    errors["gp"] = truth_mspe_sqrt(fit.estimate_at_query, f0_test);
  }

  // 2GP: embed the whole pool, then split (the eigenmap has no
  // out-of-sample extension)
  {
    EigenmapConfig emap;
    emap.n_neighbors = spec.n_neighbors;
    emap.d_tilde = spec.d_tilde;
    emap.seed = derive_seed(cell_seed, kSeedDimension);
    const Embedding emb = laplacian_eigenmap(data.dataset.predictors, emap);
    const Dataset train2 =
        Dataset(take_rows(emb.coords, sp.train_idx),
                take_elements(data.dataset.responses, sp.train_idx));
    const Eigen::MatrixXd test2 = take_rows(emb.coords, sp.test_idx);
    McmcConfig mc = spec.mcmc;
    mc.seed = derive_seed(cell_seed, kSeedChain + 1);
    const BandwidthPrior prior{spec.a0, spec.b0, spec.circle_prior_d};
    const BandwidthChain chain = run_chain(train2, prior, mc);
    EstimateOptions opt;
    opt.thin = spec.thin;
    opt.draws_per_a = spec.draws_per_a;
    opt.seed = derive_seed(cell_seed, kSeedEstimator + 1);
    const FitResult fit =
        estimate(train2, chain, test2, TruncationLevel(tau_val), opt);
    errors["2gp"] = truth_mspe_sqrt(fit.estimate_at_query, f0_test);
  }

  return errors;
}

std::vector<TheoryCheckResult> theory_checks() {
  std::vector<TheoryCheckResult> checks;
  const auto add = [&](const std::string& name, double value, double expected,
                       double tol) {
    checks.push_back({name, value, expected, tol,
                      std::abs(value - expected) <= tol});
  };

  // distance equivalence on a dense circle grid
  {
    const int n = 10000;
    Eigen::VectorXd thetas(n);
    for (int i = 0; i < n; ++i) thetas(i) = 2.0 * kPi * i / n;
    const Eigen::MatrixXd pts = unit_circle_points(thetas);
    const auto eq = check_distance_equivalence(
        pts,
        [&](Eigen::Index i, Eigen::Index j) {
          return geodesic_distance_circle(thetas(i), thetas(j));
        },
        true);
    add("distance-equivalence-c1", eq.c1, 1.0, 0.01);
    add("distance-equivalence-c2", eq.c2, kPi / 2.0, 0.01 * kPi / 2.0);
    checks.push_back({"distance-equivalence-c1-lower-bound", eq.c1, 1.0, 1e-9,
                      eq.c1 >= 1.0 - 1e-9});
  }

  const auto sup_error = [](const CircleConvolution& conv,
                            const std::function<double(double)>& f) {
    double sup = 0.0;
    for (int i = 0; i < 128; ++i) {
      const double theta = 2.0 * kPi * i / 128.0;
      sup = std::max(sup, std::abs(conv(theta) - f(theta)));
    }
    return sup;
  };
  const auto one = [](double) { return 1.0; };
  const auto cosf = [](double t) { return std::cos(t); };

  // smoothing of the constant function: error O(a^-2) with a stable constant
  {
    const double c10 = sup_error(CircleConvolution(one, 10, 1024), one) * 100.0;
    const double c20 = sup_error(CircleConvolution(one, 20, 2048), one) * 400.0;
    const double c40 = sup_error(CircleConvolution(one, 40, 4096), one) * 1600.0;
    add("conv-one-constant-ratio-20-10", c20 / c10, 1.0, 0.5);
    add("conv-one-constant-ratio-40-20", c40 / c20, 1.0, 0.5);
  }

  // decay rate for the smooth truth
  {
    std::vector<double> as = {8, 16, 32, 64};
    std::vector<double> errs;
    for (double a : as)
      errs.push_back(sup_error(
          CircleConvolution(cosf, a, std::max(1024, static_cast<int>(64 * a))),
          cosf));
    const RateFit fit = fit_log_log(as, errs);
    add("conv-cos-decay-slope", fit.slope, -2.0, 0.3);
  }

  // linearity at matched quadrature
  {
    const auto g = [](double t) { return std::sin(2.0 * t) + 0.5; };
    const CircleConvolution cf(cosf, 16, 2048);
    const CircleConvolution cg(g, 16, 2048);
    const CircleConvolution mix(
        [&](double t) { return 2.0 * cosf(t) + 3.0 * g(t); }, 16, 2048);
    double dev = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double theta = 2.0 * kPi * i / 16.0;
      dev = std::max(dev,
                     std::abs(mix(theta) - 2.0 * cf(theta) - 3.0 * cg(theta)));
    }
    add("conv-linearity", dev, 0.0, 1e-12);
  }

  return checks;
}

}  // namespace

RateFit fit_log_log(const std::vector<double>& ns,
                    const std::vector<double>& mean_errors) {
  if (ns.size() != mean_errors.size() || ns.size() < 2)
    throw std::invalid_argument("fit_log_log: need >= 2 matched points");
  const auto m = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] > 0.0) || !(mean_errors[i] > 0.0))
      throw std::invalid_argument("fit_log_log: nonpositive input");
    const double x = std::log(ns[i]);
    const double y = std::log(mean_errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  RateFit fit;
  const double vx = sxx - sx * sx / m;
  const double vy = syy - sy * sy / m;
  const double cxy = sxy - sx * sy / m;
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
  return fit;
}

std::pair<double, double> rate_check(
    const std::vector<std::pair<double, double>>& errors_by_n, int d, double s) {
  if (errors_by_n.size() < 3)
    throw std::invalid_argument("rate_check: need >= 3 sample sizes");
  if (d < 1 || !(s > 0.0))
    throw std::invalid_argument("rate_check: need d >= 1 and s > 0");
  std::vector<double> ns, errs;
  for (const auto& [n, e] : errors_by_n) {
    ns.push_back(n);
    errs.push_back(e);
  }
  const RateFit fit = fit_log_log(ns, errs);
  const double theory = -s / (2.0 * s + static_cast<double>(d));
  return {fit.slope, theory};
}

ExperimentReport run_experiment(
    const ExperimentSpec& spec,
    const std::function<double(const ExperimentSpec&, int, int, std::uint64_t)>&
        cell_override) {
  validate_spec(spec);
  ExperimentReport report;
  report.spec = spec;

  if (spec.task == BenchTask::TheoryCheck) {
    report.checks = theory_checks();
    return report;
  }

  const std::string model_name = to_string(spec.model);
  for (std::size_t si = 0; si < spec.sample_sizes.size(); ++si) {
    const int n = spec.sample_sizes[si];
    for (int rep = 0; rep < spec.replicates; ++rep) {
      const std::uint64_t cell_seed = derive_seed(
          spec.seed, (static_cast<std::uint64_t>(si) << 32) |
                         static_cast<std::uint64_t>(rep));
      try {
        if (cell_override) {
          report.cells.push_back(
              {n, rep, model_name, cell_override(spec, n, rep, cell_seed),
               false, ""});
        } else if (spec.task == BenchTask::CircleMspe) {
          for (const auto& [model, err] : circle_cell(spec, n, cell_seed))
            report.cells.push_back({n, rep, model, err, false, ""});
        } else {
          report.cells.push_back(
              {n, rep, model_name, swiss_cell(spec, n, cell_seed), false, ""});
        }
      } catch (const std::exception& e) {
        if (!spec.allow_partial) throw;
        report.cells.push_back({n, rep, model_name, 0.0, true, e.what()});
      }
    }
  }

  // aggregates over non-failed cells, deterministic (n, model) order
  std::map<std::pair<int, std::string>, std::vector<double>> groups;
  for (const auto& c : report.cells)
    if (!c.failed) groups[{c.n, c.model}].push_back(c.error);
  for (const auto& [key, vals] : groups) {
    Aggregate agg;
    agg.n = key.first;
    agg.model = key.second;
    agg.count = static_cast<int>(vals.size());
    double sum = 0.0;
    for (double v : vals) sum += v;
    agg.mean = sum / static_cast<double>(vals.size());
    double ss = 0.0;
    for (double v : vals) ss += (v - agg.mean) * (v - agg.mean);
    agg.sd = vals.size() > 1
                 ? std::sqrt(ss / static_cast<double>(vals.size() - 1))
                 : 0.0;
    report.aggregates.push_back(agg);
  }

  if ((spec.task == BenchTask::SwissAee || spec.task == BenchTask::RateCheck) &&
      spec.sample_sizes.size() >= 3) {
    std::vector<double> ns, means;
    for (int n : spec.sample_sizes)
      for (const auto& agg : report.aggregates)
        if (agg.n == n && agg.model == model_name && agg.mean > 0.0) {
          ns.push_back(static_cast<double>(n));
          means.push_back(agg.mean);
        }
    if (ns.size() >= 3) report.rate_fit = fit_log_log(ns, means);
  }
  if (spec.task == BenchTask::RateCheck)
    report.theory_slope =
        -spec.rate_s / (2.0 * spec.rate_s + static_cast<double>(spec.rate_d));

  return report;
}

namespace {

ordered_json mcmc_to_json(const McmcConfig& mc) {
  ordered_json j;
  j["n_iter"] = mc.n_iter;
  j["burn_in"] = mc.burn_in;
  j["proposal_sd"] = mc.proposal_sd;
  j["noise_var"] = mc.noise_var;
  j["infer_noise"] = mc.infer_noise;
  j["noise_prior_shape"] = mc.noise_prior_shape;
  j["noise_prior_rate"] = mc.noise_prior_rate;
  return j;
}

ordered_json spec_to_json_obj(const ExperimentSpec& spec) {
  ordered_json j;
  j["task"] = to_string(spec.task);
  j["sample_sizes"] = spec.sample_sizes;
  j["replicates"] = spec.replicates;
  j["model"] = to_string(spec.model);
  j["mcmc"] = mcmc_to_json(spec.mcmc);
  j["seed"] = spec.seed;
  j["out_path"] = spec.out_path;
  j["allow_partial"] = spec.allow_partial;
  j["ambient_dim"] = spec.ambient_dim;
  j["noise_sd"] = spec.noise_sd;
  j["harmonics"] = spec.harmonics;
  j["circle_total"] = spec.circle_total;
  j["a0"] = spec.a0;
  j["b0"] = spec.b0;
  j["fixed_d"] = spec.fixed_d;
  j["circle_prior_d"] = spec.circle_prior_d;
  j["d_max"] = spec.d_max;
  j["test_fraction"] = spec.test_fraction;
  j["tau"] = spec.tau;
  j["thin"] = spec.thin;
  j["draws_per_a"] = spec.draws_per_a;
  j["n_neighbors"] = spec.n_neighbors;
  j["d_tilde"] = spec.d_tilde;
  j["rate_s"] = spec.rate_s;
  j["rate_d"] = spec.rate_d;
  return j;
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) {
  return spec_to_json_obj(spec).dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bench spec: invalid JSON: ") +
                                e.what());
  }
  static const std::set<std::string> known = {
      "task", "sample_sizes", "replicates", "model", "mcmc", "seed",
      "out_path", "allow_partial", "ambient_dim", "noise_sd", "harmonics",
      "circle_total", "a0", "b0", "fixed_d", "circle_prior_d", "d_max",
      "test_fraction", "tau", "thin", "draws_per_a", "n_neighbors", "d_tilde",
      "rate_s", "rate_d"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("bench spec: unknown key '" + key + "'");

  ExperimentSpec spec;
  if (j.contains("task")) spec.task = bench_task_from_string(j["task"]);
  if (j.contains("sample_sizes"))
    spec.sample_sizes = j["sample_sizes"].get<std::vector<int>>();
  if (j.contains("replicates")) spec.replicates = j["replicates"];
  if (j.contains("model")) spec.model = bench_model_from_string(j["model"]);
  if (j.contains("mcmc")) {
    const auto& m = j["mcmc"];
    static const std::set<std::string> known_mcmc = {
        "n_iter", "burn_in", "proposal_sd", "noise_var", "infer_noise",
        "noise_prior_shape", "noise_prior_rate"};
    for (const auto& [key, _] : m.items())
      if (!known_mcmc.count(key))
        throw std::invalid_argument("bench spec: unknown mcmc key '" + key + "'");
    if (m.contains("n_iter")) spec.mcmc.n_iter = m["n_iter"];
    if (m.contains("burn_in")) spec.mcmc.burn_in = m["burn_in"];
    if (m.contains("proposal_sd")) spec.mcmc.proposal_sd = m["proposal_sd"];
    if (m.contains("noise_var")) spec.mcmc.noise_var = m["noise_var"];
    if (m.contains("infer_noise")) spec.mcmc.infer_noise = m["infer_noise"];
    if (m.contains("noise_prior_shape"))
      spec.mcmc.noise_prior_shape = m["noise_prior_shape"];
    if (m.contains("noise_prior_rate"))
      spec.mcmc.noise_prior_rate = m["noise_prior_rate"];
  }
  if (j.contains("seed")) spec.seed = j["seed"];
  if (j.contains("out_path")) spec.out_path = j["out_path"];
  if (j.contains("allow_partial")) spec.allow_partial = j["allow_partial"];
  if (j.contains("ambient_dim")) spec.ambient_dim = j["ambient_dim"];
  if (j.contains("noise_sd")) spec.noise_sd = j["noise_sd"];
  if (j.contains("harmonics")) spec.harmonics = j["harmonics"];
  if (j.contains("circle_total")) spec.circle_total = j["circle_total"];
  if (j.contains("a0")) spec.a0 = j["a0"];
  if (j.contains("b0")) spec.b0 = j["b0"];
  if (j.contains("fixed_d")) spec.fixed_d = j["fixed_d"];
  if (j.contains("circle_prior_d")) spec.circle_prior_d = j["circle_prior_d"];
  if (j.contains("d_max")) spec.d_max = j["d_max"];
  if (j.contains("test_fraction")) spec.test_fraction = j["test_fraction"];
  if (j.contains("tau")) spec.tau = j["tau"];
  if (j.contains("thin")) spec.thin = j["thin"];
  if (j.contains("draws_per_a")) spec.draws_per_a = j["draws_per_a"];
  if (j.contains("n_neighbors")) spec.n_neighbors = j["n_neighbors"];
  if (j.contains("d_tilde")) spec.d_tilde = j["d_tilde"];
  if (j.contains("rate_s")) spec.rate_s = j["rate_s"];
  if (j.contains("rate_d")) spec.rate_d = j["rate_d"];
  return spec;
}

std::string report_to_json(const ExperimentReport& report) {
  ordered_json j;
  j["task"] = to_string(report.spec.task);
  j["config"] = spec_to_json_obj(report.spec);
  ordered_json cells = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json jc;
    jc["n"] = c.n;
    jc["replicate"] = c.replicate;
    jc["model"] = c.model;
    if (c.failed) {
      jc["failed"] = true;
      jc["message"] = c.message;
    } else {
      jc["error"] = c.error;
    }
    cells.push_back(jc);
  }
  j["cells"] = cells;
  ordered_json aggs = ordered_json::array();
  for (const auto& a : report.aggregates) {
    ordered_json ja;
    ja["n"] = a.n;
    ja["model"] = a.model;
    ja["mean"] = a.mean;
    ja["sd"] = a.sd;
    ja["count"] = a.count;
    aggs.push_back(ja);
  }
  j["aggregates"] = aggs;
  if (report.rate_fit) {
    ordered_json jr;
    jr["slope"] = report.rate_fit->slope;
    jr["intercept"] = report.rate_fit->intercept;
    jr["r2"] = report.rate_fit->r2;
    j["rate_fit"] = jr;
  }
  if (report.spec.task == BenchTask::RateCheck)
    j["theory_slope"] = report.theory_slope;
  if (!report.checks.empty()) {
    ordered_json jc = ordered_json::array();
    for (const auto& c : report.checks) {
      ordered_json e;
      e["name"] = c.name;
      e["value"] = c.value;
      e["expected"] = c.expected;
      e["tol"] = c.tol;
      e["pass"] = c.pass;
      jc.push_back(e);
    }
    j["checks"] = jc;
  }
  return j.dump(2);
}

std::string report_cells_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "n,replicate,model,error\n";
  for (const auto& c : report.cells) {
    if (c.failed) continue;
    os << c.n << "," << c.replicate << "," << c.model << ","
       << format_double(c.error) << "\n";
  }
  return os.str();
}

std::string render_table(const ExperimentReport& report) {
  std::ostringstream os;
  if (!report.checks.empty()) {
    os << std::left << std::setw(36) << "check" << std::setw(14) << "value"
       << std::setw(14) << "expected" << std::setw(12) << "tol"
       << "status\n";
    for (const auto& c : report.checks) {
      std::ostringstream v, e, t;
      v << std::setprecision(6) << c.value;
      e << std::setprecision(6) << c.expected;
      t << std::setprecision(3) << c.tol;
      os << std::left << std::setw(36) << c.name << std::setw(14) << v.str()
         << std::setw(14) << e.str() << std::setw(12) << t.str()
         << (c.pass ? "pass" : "FAIL") << "\n";
    }
    return os.str();
  }

  std::vector<std::string> models;
  for (const auto& a : report.aggregates)
    if (std::find(models.begin(), models.end(), a.model) == models.end())
      models.push_back(a.model);
  os << std::left << std::setw(12) << "model";
  for (int n : report.spec.sample_sizes) {
    std::ostringstream h;
    h << "n=" << n;
    os << std::setw(16) << h.str();
  }
  os << "\n";
  for (const auto& model : models) {
    os << std::left << std::setw(12) << model;
    for (int n : report.spec.sample_sizes) {
      std::string cell = "-";
      for (const auto& a : report.aggregates)
        if (a.n == n && a.model == model) {
          std::ostringstream c;
          c << std::fixed << std::setprecision(3) << a.mean << " ("
            << std::setprecision(3) << a.sd << ")";
          cell = c.str();
        }
      os << std::setw(16) << cell;
    }
    os << "\n";
  }
  if (report.rate_fit) {
    os << "log-log slope " << std::setprecision(4) << report.rate_fit->slope
       << " (r2 " << std::setprecision(3) << report.rate_fit->r2 << ")";
    if (report.spec.task == BenchTask::RateCheck)
      os << ", theory slope " << std::setprecision(4) << report.theory_slope;
    os << "\n";
  }
  return os.str();
}

void write_report(const ExperimentReport& report, const std::string& out_path) {
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
      throw std::invalid_argument("bench: cannot open '" + out_path + "'");
    out << report_to_json(report) << "\n";
  }
  {
    std::ofstream out(out_path + ".cells.csv", std::ios::binary);
    if (!out)
      throw std::invalid_argument("bench: cannot open '" + out_path +
                                  ".cells.csv'");
    out << report_cells_csv(report);
  }
}

}  // namespace mgp
