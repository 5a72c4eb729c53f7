#include "mgp/estimator.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mgp/gp.hpp"
#include "mgp/kernel.hpp"
#include "mgp/rng.hpp"

namespace mgp {

TruncationLevel::TruncationLevel(double t) : tau(t) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("TruncationLevel: tau must be positive");
}

double default_truncation(const Eigen::VectorXd& y) {
  const double m = y.size() > 0 ? y.cwiseAbs().maxCoeff() : 0.0;
  return m > 0.0 ? 2.0 * m : 1.0;
}

FitResult estimate(const Dataset& ds, const BandwidthChain& chain,
                   const Eigen::Ref<const Eigen::MatrixXd>& query_x,
                   TruncationLevel tau, const EstimateOptions& opt) {
  if (chain.draws_a.empty()) throw std::invalid_argument("estimate: empty chain");
  if (query_x.rows() > 0 && query_x.cols() != ds.dim())
    throw std::invalid_argument("estimate: query dimension mismatch");
  if (opt.draws_per_a < 1 || opt.thin < 1)
    throw std::invalid_argument("estimate: draws_per_a and thin must be >= 1");
  if (!(tau.tau > 0.0) || !std::isfinite(tau.tau))
    throw std::invalid_argument("estimate: tau must be positive");

  const Eigen::Index n = ds.n();
  const Eigen::Index q = query_x.rows();
  const Eigen::Index total = n + q;

  // one distance matrix over train + query; each retained bandwidth
  // only re-exponentiates it
  Eigen::MatrixXd all_x(total, ds.dim());
  all_x.topRows(n) = ds.predictors;
  if (q > 0) all_x.bottomRows(q) = query_x;
  const Eigen::MatrixXd sq_all = pairwise_sqdist(all_x);

  Rng rng(opt.seed);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(total);
  int n_draws = 0;

  for (std::size_t idx = 0; idx < chain.draws_a.size();
       idx += static_cast<std::size_t>(opt.thin)) {
    const double a = chain.draws_a[idx];
    const double noise_var = chain.draws_noise_var[idx];

    Eigen::MatrixXd k_all;
    Eigen::MatrixXd l_post;
    Eigen::VectorXd mean_all;
    try {
      k_all = gram_from_sqdist(a, sq_all);
      Eigen::MatrixXd k_tt = k_all.topLeftCorner(n, n);
      k_tt.diagonal().array() += noise_var;
      const Eigen::MatrixXd l = cholesky_with_jitter(k_tt, 0.0, nullptr);
      Eigen::VectorXd alpha = l.triangularView<Eigen::Lower>().solve(ds.responses);
      l.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
      mean_all = k_all.leftCols(n) * alpha;
      const Eigen::MatrixXd v =
          l.triangularView<Eigen::Lower>().solve(k_all.topRows(n));
      Eigen::MatrixXd cov_all = k_all - v.transpose() * v;
      cov_all = 0.5 * (cov_all + cov_all.transpose()).eval();
      l_post = cholesky_with_jitter(cov_all, 0.0, nullptr);
    } catch (const NumericalError& e) {
      throw NumericalError("estimate: bandwidth draw a = " + format_double(a) +
                           " failed: " + e.what());
    }

    for (int rep = 0; rep < opt.draws_per_a; ++rep) {
      Eigen::VectorXd z(total);
      for (Eigen::Index i = 0; i < total; ++i) z(i) = rng.normal();
      const Eigen::VectorXd draw = mean_all + l_post * z;
      if (opt.on_sample) opt.on_sample(draw);
      sum += draw.unaryExpr(
          [t = tau.tau](double v) { return truncate(v, t); });
      ++n_draws;
    }
  }

  FitResult fit;
  fit.truncation = tau;
  fit.n_function_draws = n_draws;
  // the average of clamped samples lies in [-tau, tau]; the final clamp
  // only removes accumulation dust so the range invariant holds exactly
  const Eigen::VectorXd avg =
      (sum / static_cast<double>(n_draws))
          .unaryExpr([t = tau.tau](double v) { return truncate(v, t); });
  fit.estimate_at_train = avg.head(n);
  fit.estimate_at_query = avg.tail(q);

  const auto m = static_cast<double>(chain.draws_a.size());
  const double mean_a =
      std::accumulate(chain.draws_a.begin(), chain.draws_a.end(), 0.0) / m;
  double ss = 0.0;
  for (double v : chain.draws_a) ss += (v - mean_a) * (v - mean_a);
  fit.chain_summary.mean_a = mean_a;
  fit.chain_summary.sd_a = m > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
  fit.chain_summary.accept_rate = chain.accept_rate;
  return fit;
}

EmpiricalNorm evaluate(const FitResult& fit,
                       const Eigen::VectorXd& truth_at_points) {
  if (truth_at_points.size() == fit.estimate_at_train.size())
    return empirical_norm(fit.estimate_at_train, truth_at_points);
  if (truth_at_points.size() == fit.estimate_at_query.size())
    return empirical_norm(fit.estimate_at_query, truth_at_points);
  throw std::invalid_argument(
      "evaluate: truth length " + std::to_string(truth_at_points.size()) +
      " matches neither train (" + std::to_string(fit.estimate_at_train.size()) +
      ") nor query (" + std::to_string(fit.estimate_at_query.size()) + ")");
}

namespace {

void append_vector(std::ostringstream& os, const Eigen::VectorXd& v) {
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << format_double(v(i));
  }
  os << "]";
}

}  // namespace

std::string fit_result_to_json(const FitResult& fit) {
  std::ostringstream os;
  os << "{\"estimate_train\":";
  append_vector(os, fit.estimate_at_train);
  os << ",\"estimate_query\":";
  append_vector(os, fit.estimate_at_query);
  os << ",\"chain\":{\"mean_a\":" << format_double(fit.chain_summary.mean_a)
     << ",\"sd_a\":" << format_double(fit.chain_summary.sd_a)
     << ",\"accept_rate\":" << format_double(fit.chain_summary.accept_rate)
     << "},\"n_function_draws\":" << fit.n_function_draws
     << ",\"tau\":" << format_double(fit.truncation.tau) << "}";
  return os.str();
}

}  // namespace mgp
