#include "mgp/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mgp/gp.hpp"
#include "mgp/kernel.hpp"
#include "mgp/rng.hpp"

namespace mgp {

double log_prior_density_a(const BandwidthPrior& prior, double a) {
  if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0) || prior.d < 1)
    throw std::invalid_argument("BandwidthPrior: need a0, b0 > 0 and d >= 1");
  if (!(a > 0.0))
    throw std::invalid_argument("log_prior_density_a: a must be > 0");
  const double d = static_cast<double>(prior.d);
  return (d * prior.a0 - 1.0) * std::log(a) - prior.b0 * std::pow(a, d) +
         std::log(d) + prior.a0 * std::log(prior.b0) - std::lgamma(prior.a0);
}

namespace {

// inverse-Gamma(shape, rate) log density in v, plus the log-v Jacobian
// for a move on log v.
double log_noise_target(double v, double shape, double rate) {
  return -(shape + 1.0) * std::log(v) - rate / v + std::log(v);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    return 0.5 * (v[mid - 1] + hi);
  }
  return hi;
}

double median_pairwise_distance(const Eigen::MatrixXd& sqdist) {
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(sqdist.rows()) *
            (sqdist.rows() - 1) / 2);
  for (Eigen::Index i = 0; i < sqdist.rows(); ++i)
    for (Eigen::Index j = i + 1; j < sqdist.cols(); ++j)
      d.push_back(std::sqrt(sqdist(i, j)));
  return median_of(std::move(d));
}

// Burn-in proposal-scale controller targeting the 0.25-0.40 band.
class ScaleAdapter {
 public:
  explicit ScaleAdapter(double sd) : sd_(sd) {}

  double sd() const { return sd_; }

  void observe(bool accepted, bool adapting) {
    if (!adapting) return;
    ++seen_;
    if (accepted) ++accepted_;
    if (seen_ == kWindow) {
      const double rate = static_cast<double>(accepted_) / kWindow;
      if (rate < 0.25) sd_ *= 0.8;
      if (rate > 0.40) sd_ *= 1.25;
      sd_ = std::clamp(sd_, 1e-4, 10.0);
      seen_ = accepted_ = 0;
    }
  }

 private:
  static constexpr int kWindow = 50;
  double sd_;
  int seen_ = 0;
  int accepted_ = 0;
};

}  // namespace

BandwidthChain run_chain(const Dataset& ds, const BandwidthPrior& prior,
                         const McmcConfig& cfg) {
  if (cfg.n_iter < 1)
    throw std::invalid_argument("run_chain: n_iter must be >= 1");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.n_iter)
    throw std::invalid_argument("run_chain: need 0 <= burn_in < n_iter");
  if (!(cfg.proposal_sd > 0.0))
    throw std::invalid_argument("run_chain: proposal_sd must be > 0");
  if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0) || prior.d < 1)
    throw std::invalid_argument("BandwidthPrior: need a0, b0 > 0 and d >= 1");
  if (!cfg.prior_only && !(cfg.noise_var > 0.0))
    throw std::invalid_argument("run_chain: noise_var must be > 0");

  Eigen::MatrixXd sqdist;
  if (!cfg.prior_only) {
    if (ds.n() < 2)
      throw std::invalid_argument("run_chain: degenerate dataset (n < 2)");
    sqdist = pairwise_sqdist(ds.predictors);
    if (sqdist.maxCoeff() <= 0.0)
      throw std::invalid_argument(
          "run_chain: degenerate dataset (all predictor rows identical)");
  }

  Rng rng(cfg.seed);

  // initialization: median heuristic for A, 0.1 * var(y) for an
  // inferred sigma^2 (prior mean of A^d when there is no data to look at)
  double a;
  if (cfg.prior_only) {
    a = std::pow(prior.a0 / prior.b0, 1.0 / static_cast<double>(prior.d));
  } else {
    const double med = median_pairwise_distance(sqdist);
    a = med > 0.0 ? 1.0 / med : 1.0;
  }
  double noise_var = cfg.noise_var;
  if (cfg.infer_noise && !cfg.prior_only) {
    const double mean_y = ds.responses.mean();
    const double var_y =
        (ds.responses.array() - mean_y).square().sum() /
        static_cast<double>(ds.n());
    noise_var = std::max(0.1 * var_y, 1e-4);
  }

  const auto marglik = [&](double a_val, double v) -> double {
    return cfg.prior_only
               ? 0.0
               : log_marginal_likelihood_prepared(sqdist, ds.responses, a_val, v);
  };

  double cur_lml;
  try {
    cur_lml = marglik(a, noise_var);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("run_chain: initial state failed: ") +
                         e.what());
  }
  // target on log A includes the change-of-variables term log a
  double cur_log_target = cur_lml + log_prior_density_a(prior, a) + std::log(a);
  if (cfg.infer_noise)
    cur_log_target +=
        log_noise_target(noise_var, cfg.noise_prior_shape, cfg.noise_prior_rate);

  ScaleAdapter a_scale(cfg.proposal_sd);
  ScaleAdapter v_scale(cfg.proposal_sd);

  BandwidthChain chain;
  const int kept = cfg.n_iter - cfg.burn_in;
  chain.draws_a.reserve(kept);
  chain.draws_noise_var.reserve(kept);
  chain.log_marglik_trace.reserve(kept);
  chain.accepted.reserve(kept);

  long long a_proposals = 0, a_failures = 0;
  int post_burn_accepts = 0;

  for (int iter = 0; iter < cfg.n_iter; ++iter) {
    const bool adapting = iter < cfg.burn_in;

    // bandwidth move
    bool accepted = false;
    {
      ++a_proposals;
      const double log_a_new = std::log(a) + a_scale.sd() * rng.normal();
      const double a_new = std::exp(log_a_new);
      const double u = rng.uniform01();
      if (a_new > 0.0 && std::isfinite(a_new)) {
        try {
          const double lml_new = marglik(a_new, noise_var);
          double target_new =
              lml_new + log_prior_density_a(prior, a_new) + log_a_new;
          if (cfg.infer_noise)
            target_new += log_noise_target(noise_var, cfg.noise_prior_shape,
                                           cfg.noise_prior_rate);
          if (std::isfinite(target_new) &&
              std::log(u) < target_new - cur_log_target) {
            a = a_new;
            cur_lml = lml_new;
            cur_log_target = target_new;
            accepted = true;
          }
        } catch (const NumericalError&) {
          ++a_failures;  // reject the proposal, keep the chain alive
        }
      }
      a_scale.observe(accepted, adapting);
    }

    // noise move
    if (cfg.infer_noise) {
      bool v_accepted = false;
      const double log_v_new = std::log(noise_var) + v_scale.sd() * rng.normal();
      const double v_new = std::exp(log_v_new);
      const double u = rng.uniform01();
      if (v_new > 0.0 && std::isfinite(v_new)) {
        try {
          const double lml_new = marglik(a, v_new);
          const double target_new =
              lml_new + log_prior_density_a(prior, a) + std::log(a) +
              log_noise_target(v_new, cfg.noise_prior_shape,
                               cfg.noise_prior_rate);
          if (std::isfinite(target_new) &&
              std::log(u) < target_new - cur_log_target) {
            noise_var = v_new;
            cur_lml = lml_new;
            cur_log_target = target_new;
            v_accepted = true;
          }
        } catch (const NumericalError&) {
        }
      }
      v_scale.observe(v_accepted, adapting);
    }

    if (iter >= cfg.burn_in) {
      chain.draws_a.push_back(a);
      chain.draws_noise_var.push_back(noise_var);
      chain.log_marglik_trace.push_back(cur_lml);
      chain.accepted.push_back(accepted ? 1 : 0);
      if (accepted) ++post_burn_accepts;
    }
  }

  if (a_failures == a_proposals)
    throw NumericalError(
        "run_chain: every bandwidth proposal failed to factorize (" +
        std::to_string(a_failures) + " of " + std::to_string(a_proposals) + ")");

  chain.accept_rate = static_cast<double>(post_burn_accepts) /
                      static_cast<double>(kept);
  return chain;
}

void dump_chain_csv(const BandwidthChain& chain, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("dump_chain_csv: cannot open '" + path + "'");
  out << "iter,a,noise_var,log_marglik,accepted\n";
  for (std::size_t i = 0; i < chain.draws_a.size(); ++i) {
    out << i << "," << format_double(chain.draws_a[i]) << ","
        << format_double(chain.draws_noise_var[i]) << ","
        << format_double(chain.log_marglik_trace[i]) << ","
        << static_cast<int>(chain.accepted[i]) << "\n";
  }
}

}  // namespace mgp
