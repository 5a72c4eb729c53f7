// Command-line front end: generate synthetic manifold data, fit the
// bandwidth-adaptive GP regression, estimate intrinsic dimension,
// cross-validate the dimension, run the two-stage spectral pipeline,
// and drive benchmark/theory-check experiments.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mgp/bench.hpp"
#include "mgp/cv.hpp"
#include "mgp/eigenmap.hpp"
#include "mgp/estimator.hpp"
#include "mgp/intrinsic_dim.hpp"
#include "mgp/manifold_lab.hpp"
#include "mgp/rng.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "'");
  out << text;
}

void save_latent_csv(const mgp::LabeledManifoldData& data,
                     const std::vector<std::string>& names,
                     const std::string& path) {
  std::ostringstream os;
  for (const auto& n : names) os << n << ",";
  os << "f0\n";
  for (Eigen::Index i = 0; i < data.latent.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.latent.cols(); ++j)
      os << mgp::format_double(data.latent(i, j)) << ",";
    os << mgp::format_double(data.f0_at_points(i)) << "\n";
  }
  write_text(path, os.str());
}

mgp::Dataset standardized(const mgp::Dataset& ds) {
  Eigen::MatrixXd x = ds.predictors;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    x.col(j).array() -= mean;
    const double sd = std::sqrt(x.col(j).squaredNorm() /
                                static_cast<double>(x.rows() > 1 ? x.rows() - 1 : 1));
    if (sd > 0.0) x.col(j) /= sd;
  }
  return mgp::Dataset(std::move(x), ds.responses, ds.source_seed);
}

struct FitFlags {
  std::string train_path;
  std::string dim = "auto";
  bool infer_noise = false;
  bool standardize = false;
  int iters = 10000;
  int burnin = 5000;
  double tau = 0.0;
  double a0 = 1.0, b0 = 1.0;
  double noise_var = 0.01;
  double proposal_sd = 0.3;
  int thin = 10;
  int draws_per_a = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string chain_out;
};

int resolve_dim(const std::string& dim_flag, const mgp::Dataset& ds,
                std::uint64_t seed) {
  if (dim_flag == "auto") {
    const auto est = mgp::estimate_dimension(
        ds.predictors, std::nullopt,
        static_cast<int>(std::min<Eigen::Index>(ds.n(), 100)), seed);
    return est.d_hat_rounded;
  }
  int d = 0;
  try {
    std::size_t pos = 0;
    d = std::stoi(dim_flag, &pos);
    if (pos != dim_flag.size()) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("--dim expects an integer or 'auto', got '" +
                                dim_flag + "'");
  }
  if (d < 1) throw std::invalid_argument("--dim must be >= 1");
  return d;
}

void run_fit(const FitFlags& f) {
  mgp::Dataset ds = mgp::load_csv(f.train_path);
  if (f.standardize) ds = standardized(ds);

  const int dim = resolve_dim(f.dim, ds, f.seed);

  mgp::McmcConfig mc;
  mc.n_iter = f.iters;
  mc.burn_in = f.burnin;
  mc.proposal_sd = f.proposal_sd;
  mc.noise_var = f.noise_var;
  mc.infer_noise = f.infer_noise;
  mc.seed = mgp::derive_seed(f.seed, mgp::kSeedChain);
  const mgp::BandwidthPrior prior{f.a0, f.b0, dim};
  const mgp::BandwidthChain chain = mgp::run_chain(ds, prior, mc);
  if (!f.chain_out.empty()) mgp::dump_chain_csv(chain, f.chain_out);

  const double tau_val =
      f.tau > 0.0 ? f.tau : mgp::default_truncation(ds.responses);
  mgp::EstimateOptions opt;
  opt.thin = f.thin;
  opt.draws_per_a = f.draws_per_a;
  opt.seed = mgp::derive_seed(f.seed, mgp::kSeedEstimator);
  const mgp::FitResult fit =
      mgp::estimate(ds, chain, Eigen::MatrixXd(0, ds.dim()),
                    mgp::TruncationLevel(tau_val), opt);

  std::ostringstream os;
  os << "{\"dim_used\":" << dim
     << ",\"result\":" << mgp::fit_result_to_json(fit) << "}\n";
  write_text(f.out_path, os.str());
  std::cout << "fit: dim " << dim << ", mean a "
            << mgp::format_double(fit.chain_summary.mean_a) << ", accept rate "
            << mgp::format_double(fit.chain_summary.accept_rate) << ", wrote "
            << f.out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandwidth-adaptive Gaussian process regression on manifold data"};
  app.require_subcommand(1);

  // generate ------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "Generate synthetic manifold data");
  std::string g_manifold;
  int g_n = 100, g_ambient = 100, g_harmonics = 3;
  double g_noise = 0.1;
  std::uint64_t g_seed = 0;
  std::string g_out, g_spacing = "equal";
  gen->add_option("--manifold", g_manifold, "swiss-roll or circle")
      ->required()
      ->check(CLI::IsMember({"swiss-roll", "circle"}));
  gen->add_option("--n", g_n, "number of samples")->required();
  gen->add_option("--seed", g_seed, "PRNG seed")->required();
  gen->add_option("--ambient", g_ambient, "ambient dimension");
  gen->add_option("--noise", g_noise, "response noise sd");
  gen->add_option("--harmonics", g_harmonics, "circle embedding harmonics");
  gen->add_option("--spacing", g_spacing, "circle angles: equal or uniform")
      ->check(CLI::IsMember({"equal", "uniform"}));
  gen->add_option("--out", g_out, "output CSV path")->required();

  // fit -----------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit the truncated Bayes estimator");
  FitFlags f;
  fit->add_option("--train", f.train_path, "training CSV")->required();
  fit->add_option("--dim", f.dim, "intrinsic dimension (integer or 'auto')");
  fit->add_flag("--infer-noise", f.infer_noise, "sample sigma^2 as well");
  fit->add_flag("--standardize", f.standardize,
                "standardize predictor columns before fitting");
  fit->add_option("--iters", f.iters, "MCMC iterations");
  fit->add_option("--burnin", f.burnin, "burn-in iterations");
  fit->add_option("--tau", f.tau, "truncation level (default 2 max|y|)");
  fit->add_option("--a0", f.a0, "Gamma shape");
  fit->add_option("--b0", f.b0, "Gamma rate");
  fit->add_option("--noise-var", f.noise_var, "fixed sigma^2");
  fit->add_option("--proposal-sd", f.proposal_sd, "random-walk scale");
  fit->add_option("--thin", f.thin, "chain thinning for the estimator");
  fit->add_option("--draws-per-a", f.draws_per_a,
                  "function draws per bandwidth");
  fit->add_option("--seed", f.seed, "PRNG seed")->required();
  fit->add_option("--out", f.out_path, "output JSON path")->required();
  fit->add_option("--chain-out", f.chain_out, "optional chain dump CSV");

  // estimate-dim --------------------------------------------------
  auto* edim = app.add_subcommand("estimate-dim", "Estimate intrinsic dimension");
  std::string ed_data;
  int ed_k = 0, ed_queries = 0;
  bool ed_single = false;
  std::uint64_t ed_seed = 0;
  edim->add_option("--data", ed_data, "data CSV")->required();
  edim->add_option("--k", ed_k, "neighbor count (default ceil(sqrt(n)))");
  edim->add_option("--queries", ed_queries, "query points (default min(n,100))");
  edim->add_flag("--single-query", ed_single,
                 "use only the first row, as in the single-point estimator");
  edim->add_option("--seed", ed_seed, "PRNG seed")->required();

  // cv ------------------------------------------------------------
  auto* cv = app.add_subcommand("cv", "Cross-validated dimension selection");
  std::string cv_data, cv_out;
  int cv_dmax = 20, cv_iters = 10000, cv_burnin = 5000, cv_thin = 10,
      cv_splits = 1;
  double cv_frac = 0.5, cv_tau = 0.0, cv_a0 = 1.0, cv_b0 = 1.0,
         cv_noise = 0.01;
  bool cv_refit_full = false;
  std::uint64_t cv_seed = 0;
  cv->add_option("--data", cv_data, "data CSV")->required();
  cv->add_option("--dmax", cv_dmax, "largest candidate dimension");
  cv->add_option("--test-frac", cv_frac, "holdout fraction");
  cv->add_option("--iters", cv_iters, "MCMC iterations");
  cv->add_option("--burnin", cv_burnin, "burn-in iterations");
  cv->add_option("--thin", cv_thin, "chain thinning");
  cv->add_option("--splits", cv_splits, "repeated splits (averaged MSPE)");
  cv->add_option("--tau", cv_tau, "truncation level (default 2 max|y|)");
  cv->add_option("--a0", cv_a0, "Gamma shape");
  cv->add_option("--b0", cv_b0, "Gamma rate");
  cv->add_option("--noise-var", cv_noise, "fixed sigma^2");
  cv->add_flag("--refit-full", cv_refit_full,
               "refit the selected dimension on all points");
  cv->add_option("--seed", cv_seed, "PRNG seed")->required();
  cv->add_option("--out", cv_out, "output JSON for the final fit")->required();

  // two-stage -----------------------------------------------------
  auto* ts = app.add_subcommand("two-stage",
                                "Laplacian eigenmap followed by the GP fit");
  std::string ts_train, ts_out, ts_dim = "auto", ts_weights = "heat";
  int ts_dtilde = 2, ts_neighbors = 0, ts_iters = 10000, ts_burnin = 5000;
  double ts_tau = 0.0, ts_a0 = 1.0, ts_b0 = 1.0, ts_noise = 0.01,
         ts_heat_bw = 0.0;
  std::uint64_t ts_seed = 0;
  ts->add_option("--train", ts_train, "training CSV")->required();
  ts->add_option("--dtilde", ts_dtilde, "embedding dimension");
  ts->add_option("--neighbors", ts_neighbors,
                 "graph kNN (default max(5, ceil(log n)))");
  ts->add_option("--weights", ts_weights, "edge weights: heat or binary")
      ->check(CLI::IsMember({"heat", "binary"}));
  ts->add_option("--heat-bandwidth", ts_heat_bw,
                 "heat kernel bandwidth (default squared median edge length)");
  ts->add_option("--dim", ts_dim, "prior dimension on embedded data");
  ts->add_option("--iters", ts_iters, "MCMC iterations");
  ts->add_option("--burnin", ts_burnin, "burn-in iterations");
  ts->add_option("--tau", ts_tau, "truncation level (default 2 max|y|)");
  ts->add_option("--a0", ts_a0, "Gamma shape");
  ts->add_option("--b0", ts_b0, "Gamma rate");
  ts->add_option("--noise-var", ts_noise, "fixed sigma^2");
  ts->add_option("--seed", ts_seed, "PRNG seed")->required();
  ts->add_option("--out", ts_out, "output JSON path")->required();

  // bench ---------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run a benchmark experiment");
  std::string b_task, b_spec_path, b_out, b_model, b_sizes;
  std::optional<std::uint64_t> b_seed;
  std::optional<int> b_replicates;
  bool b_allow_partial = false;
  bench->add_option("--task", b_task,
                    "swiss-aee | circle-mspe | rate-check | theory-check");
  bench->add_option("--spec", b_spec_path, "JSON spec file");
  bench->add_option("--out", b_out, "report output path");
  bench->add_option("--seed", b_seed, "override master seed");
  bench->add_option("--replicates", b_replicates, "override replicate count");
  bench->add_option("--model", b_model, "override model");
  bench->add_option("--sizes", b_sizes, "override sample sizes, comma separated");
  bench->add_flag("--allow-partial", b_allow_partial,
                  "record cell failures instead of aborting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      mgp::LabeledManifoldData data = [&] {
        if (g_manifold == "swiss-roll") {
          if (g_ambient < 3)
            throw std::invalid_argument("swiss-roll needs --ambient >= 3");
          return mgp::gen_swiss_roll({g_n, g_ambient, g_noise, g_seed});
        }
        mgp::CircleManifoldConfig cfg;
        cfg.n = g_n;
        cfg.ambient_dim = g_ambient;
        cfg.embedding_harmonics = g_harmonics;
        cfg.noise_sd = g_noise;
        cfg.spacing = g_spacing == "equal" ? mgp::CircleSpacing::Equal
                                           : mgp::CircleSpacing::UniformRandom;
        cfg.seed = g_seed;
        return mgp::gen_circle_manifold(cfg);
      }();
      mgp::save_csv(data.dataset, g_out);
      save_latent_csv(data,
                      g_manifold == "swiss-roll"
                          ? std::vector<std::string>{"u", "v"}
                          : std::vector<std::string>{"theta"},
                      g_out + ".latent.csv");
      std::cout << "generated " << g_manifold << ": n " << g_n << ", D "
                << g_ambient << ", wrote " << g_out << "\n";
    } else if (*fit) {
      run_fit(f);
    } else if (*edim) {
      const mgp::Dataset ds = mgp::load_csv(ed_data);
      mgp::DimensionEstimate est;
      if (ed_single) {
        const int k = ed_k > 0 ? ed_k : mgp::default_neighbor_count(ds.n());
        est.d_hat_raw = mgp::dimension_at(ds.predictors, 0, k);
        est.d_hat_rounded =
            std::max(1, static_cast<int>(std::llround(est.d_hat_raw)));
        est.k_used = k;
        est.n_query_points = 1;
      } else {
        const int queries =
            ed_queries > 0
                ? ed_queries
                : static_cast<int>(std::min<Eigen::Index>(ds.n(), 100));
        est = mgp::estimate_dimension(
            ds.predictors,
            ed_k > 0 ? std::optional<int>(ed_k) : std::nullopt, queries,
            ed_seed);
      }
      std::cout << "{\"d_hat_raw\":" << mgp::format_double(est.d_hat_raw)
                << ",\"d_hat_rounded\":" << est.d_hat_rounded
                << ",\"k\":" << est.k_used
                << ",\"n_queries\":" << est.n_query_points << "}\n";
    } else if (*cv) {
      const mgp::Dataset ds = mgp::load_csv(cv_data);
      mgp::CvConfig cfg;
      cfg.d_max = cv_dmax;
      cfg.test_fraction = cv_frac;
      cfg.mcmc.n_iter = cv_iters;
      cfg.mcmc.burn_in = cv_burnin;
      cfg.mcmc.noise_var = cv_noise;
      cfg.tau = cv_tau;
      cfg.a0 = cv_a0;
      cfg.b0 = cv_b0;
      cfg.thin = cv_thin;
      cfg.n_splits = cv_splits;
      cfg.seed = cv_seed;
      cfg.refit_on_full = cv_refit_full;
      const mgp::CvResult res = mgp::cross_validate(ds, cfg);
      std::ostringstream os;
      os << "{\"mspe\":[";
      for (std::size_t i = 0; i < res.mspe_per_dim.size(); ++i) {
        if (i) os << ",";
        if (std::isinf(res.mspe_per_dim[i]))
          os << "\"inf\"";
        else
          os << mgp::format_double(res.mspe_per_dim[i]);
      }
      os << "],\"selected_dim\":" << res.selected_dim << "}";
      std::cout << os.str() << "\n";
      write_text(cv_out, "{\"selection\":" + os.str() + ",\"final_fit\":" +
                             mgp::fit_result_to_json(res.final_fit) + "}\n");
      for (const auto& d : res.diagnostics) std::cerr << "cv: " << d << "\n";
    } else if (*ts) {
      const mgp::Dataset ds = mgp::load_csv(ts_train);
      mgp::EigenmapConfig emap;
      emap.n_neighbors = ts_neighbors;
      emap.d_tilde = ts_dtilde;
      emap.weights = ts_weights == "heat" ? mgp::EdgeWeights::Heat
                                          : mgp::EdgeWeights::Binary;
      emap.heat_bandwidth = ts_heat_bw;
      emap.seed = mgp::derive_seed(ts_seed, mgp::kSeedDimension);

      mgp::McmcConfig mc;
      mc.n_iter = ts_iters;
      mc.burn_in = ts_burnin;
      mc.noise_var = ts_noise;
      mc.seed = mgp::derive_seed(ts_seed, mgp::kSeedChain);

      // the prior dimension may be estimated from the embedded coords
      mgp::Embedding emb = mgp::laplacian_eigenmap(ds.predictors, emap);
      const mgp::Dataset reduced(emb.coords, ds.responses, ds.source_seed);
      const int dim = resolve_dim(ts_dim, reduced, ts_seed);
      const double tau_val =
          ts_tau > 0.0 ? ts_tau : mgp::default_truncation(ds.responses);

      const mgp::BandwidthChain chain =
          mgp::run_chain(reduced, {ts_a0, ts_b0, dim}, mc);
      mgp::EstimateOptions opt;
      opt.seed = mgp::derive_seed(ts_seed, mgp::kSeedEstimator);
      const mgp::FitResult fitted =
          mgp::estimate(reduced, chain, Eigen::MatrixXd(0, reduced.dim()),
                        mgp::TruncationLevel(tau_val), opt);

      mgp::save_embedding_csv(emb, ts_out + ".embedding.csv");
      std::ostringstream os;
      os << "{\"dim_used\":" << dim << ",\"graph_connected\":"
         << (emb.graph_connected ? "true" : "false")
         << ",\"result\":" << mgp::fit_result_to_json(fitted) << "}\n";
      write_text(ts_out, os.str());
      std::cout << "two-stage: dtilde " << ts_dtilde << ", dim " << dim
                << ", wrote " << ts_out << "\n";
    } else if (*bench) {
      mgp::ExperimentSpec spec;
      if (!b_spec_path.empty()) {
        std::ifstream in(b_spec_path);
        if (!in)
          throw std::invalid_argument("cannot open spec '" + b_spec_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        spec = mgp::spec_from_json(ss.str());
      }
      if (!b_task.empty()) spec.task = mgp::bench_task_from_string(b_task);
      if (b_seed) spec.seed = *b_seed;
      if (b_replicates) spec.replicates = *b_replicates;
      if (!b_model.empty()) spec.model = mgp::bench_model_from_string(b_model);
      if (!b_sizes.empty()) {
        spec.sample_sizes.clear();
        std::stringstream ss(b_sizes);
        std::string tok;
        while (std::getline(ss, tok, ','))
          spec.sample_sizes.push_back(std::stoi(tok));
      }
      if (b_allow_partial) spec.allow_partial = true;
      if (!b_out.empty()) spec.out_path = b_out;
      if (spec.out_path.empty())
        throw std::invalid_argument("bench: need --out (or out_path in the spec)");

      const mgp::ExperimentReport report = mgp::run_experiment(spec);
      mgp::write_report(report, spec.out_path);
      std::cout << mgp::render_table(report);
      std::cout << "wrote " << spec.out_path << "\n";
      for (const auto& c : report.cells)
        if (c.failed)
          std::cerr << "bench: cell n=" << c.n << " rep=" << c.replicate
                    << " failed: " << c.message << "\n";
    }
  } catch (const mgp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
