#include "mgp/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace mgp {

Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& a,
                                     double base_jitter, double* jitter_out) {
  static constexpr double kLadder[] = {1e-10, 1e-9, 1e-8, 1e-7, 1e-6};
  const Eigen::Index n = a.rows();
  double jitter = base_jitter;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    jitter = attempt == 0 ? base_jitter : base_jitter + kLadder[attempt - 1];
    Eigen::MatrixXd m = a;
    if (jitter > 0.0) m.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd l = llt.matrixL();
      // LLT can report success on a semidefinite boundary case; a
      // non-positive pivot would poison every downstream solve.
      if ((l.diagonal().array() > 0.0).all() && l.allFinite()) {
        if (jitter_out) *jitter_out = jitter;
        return l;
      }
    }
  }
  throw NumericalError(
      "Cholesky factorization failed for " + std::to_string(n) + "x" +
      std::to_string(n) + " matrix (final jitter " + format_double(jitter) + ")");
}

GPState fit_gp_prepared(const Eigen::MatrixXd& train_x,
                        const Eigen::VectorXd& train_y,
                        const Eigen::MatrixXd& sqdist, double a,
                        double noise_var, double jitter) {
  if (!(noise_var >= 0.0) || !(jitter >= 0.0) || noise_var + jitter <= 0.0)
    throw std::invalid_argument("fit_gp: need noise_var + jitter > 0");
  GPState gp;
  gp.params = KernelParams(a);
  gp.noise_var = noise_var;
  gp.train_x = train_x;
  gp.train_y = train_y;
  Eigen::MatrixXd k = gram_from_sqdist(a, sqdist);
  k.diagonal().array() += noise_var;
  gp.chol = cholesky_with_jitter(k, jitter, &gp.jitter_used);
  gp.alpha = gp.chol.triangularView<Eigen::Lower>().solve(train_y);
  gp.chol.triangularView<Eigen::Lower>().transpose().solveInPlace(gp.alpha);
  return gp;
}

GPState fit_gp(const Dataset& ds, double a, double noise_var, double jitter) {
  return fit_gp_prepared(ds.predictors, ds.responses,
                         pairwise_sqdist(ds.predictors), a, noise_var, jitter);
}

GaussianPosterior posterior(const GPState& gp,
                            const Eigen::Ref<const Eigen::MatrixXd>& query_x) {
  if (query_x.cols() != gp.train_x.cols())
    throw std::invalid_argument("posterior: query dimension " +
                                std::to_string(query_x.cols()) +
                                " != training dimension " +
                                std::to_string(gp.train_x.cols()));
  const Eigen::MatrixXd ks = cross_gram(gp.params.a, gp.train_x, query_x);
  GaussianPosterior post;
  post.mean = ks.transpose() * gp.alpha;
  const Eigen::MatrixXd v = gp.chol.triangularView<Eigen::Lower>().solve(ks);
  post.cov = gram(gp.params.a, query_x) - v.transpose() * v;
  post.cov = 0.5 * (post.cov + post.cov.transpose()).eval();
  return post;
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov, Rng& rng) {
  const Eigen::MatrixXd l = cholesky_with_jitter(cov, 0.0, nullptr);
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return mean + l * z;
}

Eigen::VectorXd sample_posterior(const GPState& gp,
                                 const Eigen::Ref<const Eigen::MatrixXd>& query_x,
                                 Rng& rng) {
  const GaussianPosterior post = posterior(gp, query_x);
  return sample_mvn(post.mean, post.cov, rng);
}

double log_marginal_likelihood_prepared(const Eigen::MatrixXd& sqdist,
                                        const Eigen::VectorXd& y, double a,
                                        double noise_var) {
  Eigen::MatrixXd k = gram_from_sqdist(a, sqdist);
  k.diagonal().array() += noise_var;
  const Eigen::MatrixXd l = cholesky_with_jitter(k, 0.0, nullptr);
  Eigen::VectorXd alpha = l.triangularView<Eigen::Lower>().solve(y);
  const double quad = alpha.squaredNorm();  // y^T (K + s2 I)^{-1} y
  const double logdet = l.diagonal().array().log().sum();
  const auto n = static_cast<double>(y.size());
  return -0.5 * quad - logdet - 0.5 * n * std::log(2.0 * kPi);
}

double log_marginal_likelihood(const Dataset& ds, double a, double noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("log_marginal_likelihood: noise_var must be > 0");
  return log_marginal_likelihood_prepared(pairwise_sqdist(ds.predictors),
                                          ds.responses, a, noise_var);
}

}  // namespace mgp
