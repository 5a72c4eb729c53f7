#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "mgp/dataset.hpp"
#include "mgp/mcmc.hpp"

namespace mgp {

struct DimensionEstimate {
  double d_hat_raw = 0.0;
  int d_hat_rounded = 1;
  int k_used = 2;
  int n_query_points = 0;
  std::vector<double> per_query_values;
  int n_skipped = 0;  // queries dropped for zero radii / zero log-ratio
};

// Distance from row query_idx to its k-th nearest other row, exact
// brute force, ties broken by smaller row index. Throws if the radius
// is zero (duplicate points; the log in the estimator would diverge).
double knn_radius(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Index query_idx, int k);

// Default neighbor count ceil(sqrt(n)).
int default_neighbor_count(Eigen::Index n);

// Single-query estimator log 2 / (log r^(k) - log r^(ceil(k/2))).
double dimension_at(const Eigen::Ref<const Eigen::MatrixXd>& x,
                    Eigen::Index query_idx, int k);

// Median of the single-query estimator over n_queries uniformly
// sampled rows (without replacement); d_hat_rounded = max(1, nearest
// integer). Degenerate queries are skipped with a diagnostic count;
// throws if every query degenerates.
DimensionEstimate estimate_dimension(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                     std::optional<int> k, int n_queries,
                                     std::uint64_t seed);

// Plug d_hat_rounded into the bandwidth prior (empirical Bayes).
BandwidthPrior empirical_bayes_prior(const Dataset& ds, double a0, double b0,
                                     int n_queries, std::uint64_t seed);

}  // namespace mgp
