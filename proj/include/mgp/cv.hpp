#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mgp/dataset.hpp"
#include "mgp/estimator.hpp"
#include "mgp/mcmc.hpp"

namespace mgp {

struct CvConfig {
  int d_max = 20;
  double test_fraction = 0.5;
  McmcConfig mcmc;
  double tau = 0.0;  // <= 0: 2*max|y| of the training half
  double a0 = 1.0;
  double b0 = 1.0;
  int thin = 10;
  int draws_per_a = 1;
  int n_splits = 1;  // averaged MSPE over repeated splits when > 1
  std::uint64_t seed = 0;
  bool refit_on_full = false;  // extension: refit selected dim on all data
  // Test hook: replaces the per-candidate estimator with a fixed
  // prediction function of (dim, train data, test predictors).
  std::function<Eigen::VectorXd(int, const Dataset&,
                                const Eigen::Ref<const Eigen::MatrixXd>&)>
      fit_override;
};

struct CvResult {
  std::vector<double> mspe_per_dim;  // +inf sentinel for failed candidates
  int selected_dim = 1;
  FitResult final_fit;
  SplitIndices split;  // the last split used
  std::vector<Eigen::VectorXd> candidate_test_estimates;  // last split
  std::vector<std::string> diagnostics;
};

// m^{-1} sum_i (estimate_i - y_i)^2
double mspe(const Eigen::VectorXd& estimates, const Eigen::VectorXd& test_y);

// One holdout split; for every candidate dimension k = 1..d_max run
// the bandwidth chain under prior d = k on the training half, build
// the truncated estimator, score MSPE on the testing half, select the
// argmin (ties to the smallest k). A failed candidate scores +inf and
// a diagnostic instead of aborting the sweep.
CvResult cross_validate(const Dataset& ds, const CvConfig& cfg);

}  // namespace mgp
