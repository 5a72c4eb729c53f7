#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "mgp/dataset.hpp"
#include "mgp/mcmc.hpp"

namespace mgp {

// Truncation constant tau: clamp posterior samples to [-tau, tau].
// (The paper calls this bound A; renamed to avoid colliding with the
// bandwidth.)
struct TruncationLevel {
  double tau = 1.0;

  explicit TruncationLevel(double t);
  TruncationLevel() = default;
};

inline double truncate(double v, double tau) {
  return v > tau ? tau : (v < -tau ? -tau : v);
}

// Data-driven default bound: 2 * max|y| (1.0 for all-zero responses).
double default_truncation(const Eigen::VectorXd& y);

struct ChainSummary {
  double mean_a = 0.0;
  double sd_a = 0.0;
  double accept_rate = 0.0;
};

struct FitResult {
  Eigen::VectorXd estimate_at_train;
  Eigen::VectorXd estimate_at_query;
  int n_function_draws = 0;
  ChainSummary chain_summary;
  TruncationLevel truncation;
};

struct EstimateOptions {
  int draws_per_a = 1;
  int thin = 10;
  std::uint64_t seed = 0;
  // Observer for raw (pre-truncation) function draws over the
  // train-then-query point stack; used by sample-level checks.
  std::function<void(const Eigen::VectorXd&)> on_sample;
};

// Truncated Bayes estimate: for every thinned bandwidth draw, fit the
// GP, sample function values jointly at train + query points, clamp
// each sample at tau and average the clamped samples (the average of
// truncations, not the truncation of the average).
FitResult estimate(const Dataset& ds, const BandwidthChain& chain,
                   const Eigen::Ref<const Eigen::MatrixXd>& query_x,
                   TruncationLevel tau, const EstimateOptions& opt = {});

// ||estimate - truth||_n. The truth vector length selects which side
// of the fit is scored (train first, then query).
EmpiricalNorm evaluate(const FitResult& fit,
                       const Eigen::VectorXd& truth_at_points);

std::string fit_result_to_json(const FitResult& fit);

}  // namespace mgp
