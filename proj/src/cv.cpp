#include "mgp/cv.hpp"

#include <cmath>

#include "mgp/rng.hpp"

namespace mgp {

double mspe(const Eigen::VectorXd& estimates, const Eigen::VectorXd& test_y) {
  if (estimates.size() != test_y.size())
    throw std::invalid_argument("mspe: length mismatch (" +
                                std::to_string(estimates.size()) + " vs " +
                                std::to_string(test_y.size()) + ")");
  if (estimates.size() == 0) throw std::invalid_argument("mspe: empty vectors");
  return (estimates - test_y).squaredNorm() /
         static_cast<double>(estimates.size());
}

CvResult cross_validate(const Dataset& ds, const CvConfig& cfg) {
  if (cfg.d_max < 1) throw std::invalid_argument("cross_validate: d_max >= 1");
  if (cfg.n_splits < 1)
    throw std::invalid_argument("cross_validate: n_splits >= 1");

  const double inf = std::numeric_limits<double>::infinity();
  CvResult result;
  result.mspe_per_dim.assign(static_cast<std::size_t>(cfg.d_max), 0.0);
  std::vector<bool> failed(static_cast<std::size_t>(cfg.d_max), false);
  std::vector<FitResult> last_fits(static_cast<std::size_t>(cfg.d_max));

  for (int s = 0; s < cfg.n_splits; ++s) {
    const SplitIndices sp =
        split(ds, cfg.test_fraction, derive_seed(cfg.seed, kSeedSplit + s));
    const Dataset train = take_rows(ds, sp.train_idx);
    const Eigen::MatrixXd test_x = take_rows(ds.predictors, sp.test_idx);
    const Eigen::VectorXd test_y = take_elements(ds.responses, sp.test_idx);
    const bool last_split = s == cfg.n_splits - 1;
    if (last_split) {
      result.split = sp;
      result.candidate_test_estimates.assign(
          static_cast<std::size_t>(cfg.d_max), Eigen::VectorXd());
    }

    const double tau_val =
        cfg.tau > 0.0 ? cfg.tau : default_truncation(train.responses);

    for (int k = 1; k <= cfg.d_max; ++k) {
      const auto ki = static_cast<std::size_t>(k - 1);
      const std::uint64_t cand_seed =
          derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)),
                      static_cast<std::uint64_t>(k));
      try {
        Eigen::VectorXd pred;
        FitResult fit;
        if (cfg.fit_override) {
          pred = cfg.fit_override(k, train, test_x);
        } else {
          const BandwidthPrior prior{cfg.a0, cfg.b0, k};
          McmcConfig mc = cfg.mcmc;
          mc.seed = derive_seed(cand_seed, kSeedChain);
          const BandwidthChain chain = run_chain(train, prior, mc);
          EstimateOptions opt;
          opt.thin = cfg.thin;
          opt.draws_per_a = cfg.draws_per_a;
          opt.seed = derive_seed(cand_seed, kSeedEstimator);
          fit = estimate(train, chain, test_x, TruncationLevel(tau_val), opt);
          pred = fit.estimate_at_query;
        }
        result.mspe_per_dim[ki] += mspe(pred, test_y);
        if (last_split) {
          result.candidate_test_estimates[ki] = pred;
          last_fits[ki] = std::move(fit);
        }
      } catch (const std::exception& e) {
        failed[ki] = true;
        result.diagnostics.push_back("dim " + std::to_string(k) + " split " +
                                     std::to_string(s) + ": " + e.what());
      }
    }
  }

  bool any_ok = false;
  for (int k = 1; k <= cfg.d_max; ++k) {
    const auto ki = static_cast<std::size_t>(k - 1);
    if (failed[ki])
      result.mspe_per_dim[ki] = inf;
    else {
      result.mspe_per_dim[ki] /= static_cast<double>(cfg.n_splits);
      any_ok = true;
    }
  }
  if (!any_ok)
    throw NumericalError("cross_validate: every candidate dimension failed");

  // argmin with smallest-index tie break
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.mspe_per_dim.size(); ++i)
    if (result.mspe_per_dim[i] < result.mspe_per_dim[best]) best = i;
  result.selected_dim = static_cast<int>(best) + 1;

  if (!cfg.fit_override) {
    if (cfg.refit_on_full) {
      // extension beyond the holdout protocol: refit on all n+m points
      const BandwidthPrior prior{cfg.a0, cfg.b0, result.selected_dim};
      McmcConfig mc = cfg.mcmc;
      mc.seed = derive_seed(cfg.seed, kSeedChain);
      const BandwidthChain chain = run_chain(ds, prior, mc);
      EstimateOptions opt;
      opt.thin = cfg.thin;
      opt.draws_per_a = cfg.draws_per_a;
      opt.seed = derive_seed(cfg.seed, kSeedEstimator);
      const double tau_val =
          cfg.tau > 0.0 ? cfg.tau : default_truncation(ds.responses);
      result.final_fit = estimate(ds, chain, Eigen::MatrixXd(0, ds.dim()),
                                  TruncationLevel(tau_val), opt);
    } else {
      result.final_fit = std::move(last_fits[static_cast<std::size_t>(
          result.selected_dim - 1)]);
    }
  }
  return result;
}

}  // namespace mgp
