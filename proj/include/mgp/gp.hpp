#pragma once

#include <Eigen/Core>

#include "mgp/dataset.hpp"
#include "mgp/kernel.hpp"
#include "mgp/rng.hpp"

namespace mgp {

// Conjugate GP regression state: lower Cholesky factor of
// K + (noise_var + jitter) I and alpha = (K + sigma^2 I)^{-1} y.
// Immutable after fit; posterior queries are read-only.
struct GPState {
  KernelParams params;
  double noise_var = 1.0;
  Eigen::MatrixXd train_x;
  Eigen::VectorXd train_y;
  Eigen::MatrixXd chol;  // lower triangular
  Eigen::VectorXd alpha;
  double jitter_used = 0.0;
};

struct GaussianPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Lower Cholesky factor of a symmetric matrix, escalating an additive
// diagonal jitter 1e-10 -> 1e-6 (x10 per retry, 5 retries) when the
// plain factorization fails. Throws NumericalError with the final
// jitter tried. jitter_out reports the jitter actually added.
Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& a,
                                     double base_jitter, double* jitter_out);

GPState fit_gp(const Dataset& ds, double a, double noise_var,
               double jitter = 0.0);

// Same fit from a precomputed squared-distance matrix; the MCMC loop
// and the estimator reuse one distance matrix across many bandwidths.
GPState fit_gp_prepared(const Eigen::MatrixXd& train_x,
                        const Eigen::VectorXd& train_y,
                        const Eigen::MatrixXd& sqdist, double a,
                        double noise_var, double jitter = 0.0);

GaussianPosterior posterior(const GPState& gp,
                            const Eigen::Ref<const Eigen::MatrixXd>& query_x);

// mean + L z with L a (jittered) factor of the posterior covariance.
Eigen::VectorXd sample_posterior(const GPState& gp,
                                 const Eigen::Ref<const Eigen::MatrixXd>& query_x,
                                 Rng& rng);

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov, Rng& rng);

// log N(y; 0, K_a + sigma^2 I) via the Cholesky factor.
double log_marginal_likelihood(const Dataset& ds, double a, double noise_var);
double log_marginal_likelihood_prepared(const Eigen::MatrixXd& sqdist,
                                        const Eigen::VectorXd& y, double a,
                                        double noise_var);

}  // namespace mgp
