#include "mgp/intrinsic_dim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgp/rng.hpp"

namespace mgp {

namespace {

// squared distances from one row to every other row; (dist, index)
// pairs sorted lexicographically implement the smaller-row-index tie
// rule.
std::vector<std::pair<double, Eigen::Index>> neighbor_sqdists(
    const Eigen::Ref<const Eigen::MatrixXd>& x, Eigen::Index query_idx) {
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd d2 =
      (x.rowwise() - x.row(query_idx)).rowwise().squaredNorm();
  std::vector<std::pair<double, Eigen::Index>> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != query_idx) out.emplace_back(d2(i), i);
  return out;
}

// k-th and ceil(k/2)-th nearest-neighbor radii in one pass.
std::pair<double, double> radius_pair(
    const Eigen::Ref<const Eigen::MatrixXd>& x, Eigen::Index query_idx, int k) {
  auto d = neighbor_sqdists(x, query_idx);
  const int k_half = (k + 1) / 2;
  std::partial_sort(d.begin(), d.begin() + k, d.end());
  return {std::sqrt(d[static_cast<std::size_t>(k) - 1].first),
          std::sqrt(d[static_cast<std::size_t>(k_half) - 1].first)};
}

void check_k(Eigen::Index n, int k) {
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("knn: k = " + std::to_string(k) +
                                " out of range [1, " + std::to_string(n - 1) +
                                "]");
}

}  // namespace

double knn_radius(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Index query_idx, int k) {
  const Eigen::Index n = x.rows();
  if (query_idx < 0 || query_idx >= n)
    throw std::invalid_argument("knn_radius: query index out of range");
  check_k(n, k);
  auto d = neighbor_sqdists(x, query_idx);
  std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
  const double r = std::sqrt(d[static_cast<std::size_t>(k) - 1].first);
  if (!(r > 0.0))
    throw std::invalid_argument(
        "knn_radius: zero radius at query " + std::to_string(query_idx) +
        " (duplicate points)");
  return r;
}

int default_neighbor_count(Eigen::Index n) {
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
}

double dimension_at(const Eigen::Ref<const Eigen::MatrixXd>& x,
                    Eigen::Index query_idx, int k) {
  const Eigen::Index n = x.rows();
  if (query_idx < 0 || query_idx >= n)
    throw std::invalid_argument("dimension_at: query index out of range");
  if (k < 2) throw std::invalid_argument("dimension_at: k must be >= 2");
  check_k(n, k);
  const auto [r_k, r_half] = radius_pair(x, query_idx, k);
  if (!(r_half > 0.0) || !(r_k > r_half))
    throw std::invalid_argument("dimension_at: degenerate radii at query " +
                                std::to_string(query_idx));
  // log of the radius ratio: same formula, and the ratio is exactly
  // scale-free in floating point
  return std::log(2.0) / std::log(r_k / r_half);
}

DimensionEstimate estimate_dimension(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                     std::optional<int> k, int n_queries,
                                     std::uint64_t seed) {
  const Eigen::Index n = x.rows();
  if (n < 8) throw std::invalid_argument("estimate_dimension: need n >= 8");
  if (n_queries < 1)
    throw std::invalid_argument("estimate_dimension: n_queries must be >= 1");
  const int k_used = k.value_or(default_neighbor_count(n));
  if (k_used < 2) throw std::invalid_argument("estimate_dimension: k must be >= 2");
  check_k(n, k_used);

  // uniform sample of query rows without replacement
  const auto n_q = std::min<Eigen::Index>(n_queries, n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  rng.shuffle(order);
  order.resize(static_cast<std::size_t>(n_q));

  DimensionEstimate est;
  est.k_used = k_used;
  est.n_query_points = static_cast<int>(n_q);
  for (Eigen::Index qi : order) {
    const auto [r_k, r_half] = radius_pair(x, qi, k_used);
    if (!(r_half > 0.0) || !(r_k > r_half)) {
      ++est.n_skipped;
      continue;
    }
    est.per_query_values.push_back(std::log(2.0) / std::log(r_k / r_half));
  }
  if (est.per_query_values.empty())
    throw std::invalid_argument(
        "estimate_dimension: all " + std::to_string(n_q) +
        " sampled queries degenerate (duplicate points?)");

  std::vector<double> vals = est.per_query_values;
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  double med = vals[mid];
  if (vals.size() % 2 == 0) {
    std::nth_element(vals.begin(), vals.begin() + (mid - 1), vals.begin() + mid);
    med = 0.5 * (vals[mid - 1] + med);
  }
  est.d_hat_raw = med;
  est.d_hat_rounded = std::max(1, static_cast<int>(std::llround(med)));
  return est;
}

BandwidthPrior empirical_bayes_prior(const Dataset& ds, double a0, double b0,
                                     int n_queries, std::uint64_t seed) {
  const auto est =
      estimate_dimension(ds.predictors, std::nullopt, n_queries, seed);
  return BandwidthPrior{a0, b0, est.d_hat_rounded};
}

}  // namespace mgp
