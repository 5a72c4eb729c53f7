#include "mgp/manifold_lab.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mgp/rng.hpp"

namespace mgp {

double swiss_roll_truth(double u, double v) {
  const double c = u / (3.0 * kPi) - (1.0 + 3.0 * kPi) / 2.0;
  return 4.0 * c * c + (kPi / 20.0) * v;
}

LabeledManifoldData gen_swiss_roll(const SwissRollConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen_swiss_roll: n must be >= 1");
  if (cfg.ambient_dim < 3)
    throw std::invalid_argument("gen_swiss_roll: ambient_dim must be >= 3");
  if (cfg.noise_sd < 0.0)
    throw std::invalid_argument("gen_swiss_roll: noise_sd must be >= 0");

  Rng rng(cfg.seed);

  // one random lift per dataset
  Eigen::MatrixXd omega(cfg.ambient_dim, 3);
  for (Eigen::Index i = 0; i < omega.rows(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j) omega(i, j) = rng.normal();

  Eigen::MatrixXd t(cfg.n, 3);
  Eigen::MatrixXd latent(cfg.n, 2);
  Eigen::VectorXd f0(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    const double u = rng.uniform(1.5 * kPi, 4.5 * kPi);
    const double v = rng.uniform(0.0, 20.0);
    latent(i, 0) = u;
    latent(i, 1) = v;
    t(i, 0) = u * std::cos(u);
    t(i, 1) = v;
    t(i, 2) = u * std::sin(u);
    f0(i) = swiss_roll_truth(u, v);
  }

  Eigen::VectorXd y = f0;
  for (int i = 0; i < cfg.n; ++i) y(i) += cfg.noise_sd * rng.normal();

  return LabeledManifoldData{
      Dataset(t * omega.transpose(), std::move(y), cfg.seed), std::move(latent),
      std::move(f0)};
}

namespace {

Eigen::MatrixXd circle_embedding_matrix(int ambient_dim, int harmonics,
                                        Rng& rng) {
  // columns: cos(h t), sin(h t) coefficients, h = 1..H, decaying 1/h
  Eigen::MatrixXd coef(ambient_dim, 2 * harmonics);
  for (Eigen::Index i = 0; i < coef.rows(); ++i)
    for (int h = 1; h <= harmonics; ++h) {
      coef(i, 2 * (h - 1)) = rng.normal() / h;
      coef(i, 2 * (h - 1) + 1) = rng.normal() / h;
    }
  return coef;
}

bool embedding_injective(const Eigen::MatrixXd& coef, int harmonics) {
  const int grid = std::max(720, 16 * harmonics);
  Eigen::VectorXd thetas(grid);
  for (int i = 0; i < grid; ++i) thetas(i) = 2.0 * kPi * i / grid;
  const Eigen::MatrixXd img =
      circle_harmonic_features(thetas, harmonics) * coef.transpose();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    scale = std::max(scale, img.row(i).squaredNorm());
  if (scale <= 0.0) return false;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = i + 1; j < img.rows(); ++j)
      if ((img.row(i) - img.row(j)).squaredNorm() <= 1e-12 * scale) return false;
  return true;
}

}  // namespace

Eigen::MatrixXd circle_harmonic_features(const Eigen::VectorXd& thetas,
                                         int harmonics) {
  if (harmonics < 1)
    throw std::invalid_argument("circle_harmonic_features: harmonics >= 1");
  Eigen::MatrixXd f(thetas.size(), 2 * harmonics);
  for (Eigen::Index i = 0; i < thetas.size(); ++i)
    for (int h = 1; h <= harmonics; ++h) {
      f(i, 2 * (h - 1)) = std::cos(h * thetas(i));
      f(i, 2 * (h - 1) + 1) = std::sin(h * thetas(i));
    }
  return f;
}

LabeledManifoldData gen_circle_manifold(const CircleManifoldConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen_circle_manifold: n must be >= 1");
  if (cfg.ambient_dim < 2)
    throw std::invalid_argument("gen_circle_manifold: ambient_dim must be >= 2");
  if (cfg.embedding_harmonics < 1)
    throw std::invalid_argument("gen_circle_manifold: harmonics must be >= 1");
  if (cfg.noise_sd < 0.0)
    throw std::invalid_argument("gen_circle_manifold: noise_sd must be >= 0");

  Rng rng(cfg.seed);

  Eigen::MatrixXd coef;
  bool ok = false;
  for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
    coef = circle_embedding_matrix(cfg.ambient_dim, cfg.embedding_harmonics, rng);
    ok = embedding_injective(coef, cfg.embedding_harmonics);
  }
  if (!ok)
    throw NumericalError(
        "gen_circle_manifold: failed to draw an injective embedding in 10 tries");

  Eigen::VectorXd thetas(cfg.n);
  if (cfg.spacing == CircleSpacing::Equal) {
    for (int i = 0; i < cfg.n; ++i)
      thetas(i) = 2.0 * kPi * i / static_cast<double>(cfg.n);
  } else {
    for (int i = 0; i < cfg.n; ++i) thetas(i) = rng.uniform(0.0, 2.0 * kPi);
  }

  Eigen::MatrixXd x =
      circle_harmonic_features(thetas, cfg.embedding_harmonics) *
      coef.transpose();
  Eigen::VectorXd f0 = thetas.array().cos();
  Eigen::VectorXd y = f0;
  for (int i = 0; i < cfg.n; ++i) y(i) += cfg.noise_sd * rng.normal();

  return LabeledManifoldData{Dataset(std::move(x), std::move(y), cfg.seed),
                             thetas, std::move(f0)};
}

double geodesic_distance_circle(double theta1, double theta2) {
  double d = std::fmod(std::abs(theta1 - theta2), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

Eigen::MatrixXd unit_circle_points(const Eigen::VectorXd& thetas) {
  Eigen::MatrixXd pts(thetas.size(), 2);
  pts.col(0) = thetas.array().cos();
  pts.col(1) = thetas.array().sin();
  return pts;
}

Eigen::MatrixXd embed_circle_isometric(const Eigen::VectorXd& thetas,
                                       int ambient_dim, std::uint64_t seed) {
  if (ambient_dim < 2)
    throw std::invalid_argument("embed_circle_isometric: ambient_dim >= 2");
  Rng rng(seed);
  Eigen::MatrixXd g(ambient_dim, 2);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < 2; ++j) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q =
      Eigen::MatrixXd(qr.householderQ()).leftCols(2);  // orthonormal 2-frame
  return unit_circle_points(thetas) * q.transpose();
}

DistanceEquivalence check_distance_equivalence(
    const Eigen::Ref<const Eigen::MatrixXd>& points,
    const std::function<double(Eigen::Index, Eigen::Index)>& geodesic,
    bool require_isometric) {
  const Eigen::Index n = points.rows();
  if (n < 2)
    throw std::invalid_argument("check_distance_equivalence: need >= 2 points");

  DistanceEquivalence out;
  out.c1 = std::numeric_limits<double>::infinity();
  out.c2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double chord = (points.row(i) - points.row(j)).norm();
      if (chord == 0.0) {
        ++out.n_skipped;
        continue;
      }
      const double ratio = geodesic(i, j) / chord;
      out.c1 = std::min(out.c1, ratio);
      out.c2 = std::max(out.c2, ratio);
      ++out.n_pairs;
    }
  }
  if (out.n_pairs == 0)
    throw std::invalid_argument(
        "check_distance_equivalence: all pairs coincident");
  if (require_isometric && !(out.c1 >= 1.0 - 1e-9))
    throw NumericalError(
        "check_distance_equivalence: isometric lower bound violated, c1 = " +
        format_double(out.c1));
  return out;
}

CircleConvolution::CircleConvolution(std::function<double(double)> f, double a,
                                     int quadrature_points)
    : a_(a) {
  if (!(a >= 1.0))
    throw std::invalid_argument("CircleConvolution: need a >= 1");
  if (quadrature_points < 256)
    throw std::invalid_argument("CircleConvolution: need >= 256 quadrature points");
  if (static_cast<double>(quadrature_points) < 64.0 * a)
    throw std::invalid_argument(
        "CircleConvolution: quadrature resolution insufficient for a = " +
        format_double(a) + " (need points >= 64 a)");
  node_theta_.resize(quadrature_points);
  node_f_.resize(quadrature_points);
  for (int i = 0; i < quadrature_points; ++i) {
    node_theta_(i) = 2.0 * kPi * i / static_cast<double>(quadrature_points);
    node_f_(i) = f(node_theta_(i));
  }
}

double CircleConvolution::operator()(double theta) const {
  // chord^2 between angles t and s on the unit circle: 4 sin^2((t-s)/2)
  const double h = 2.0 * kPi / static_cast<double>(node_theta_.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < node_theta_.size(); ++i) {
    const double s = std::sin(0.5 * (theta - node_theta_(i)));
    const double chord_sq = 4.0 * s * s;
    acc += std::exp(-0.5 * a_ * a_ * chord_sq) * node_f_(i);
  }
  return a_ / std::sqrt(2.0 * kPi) * acc * h;
}

}  // namespace mgp
