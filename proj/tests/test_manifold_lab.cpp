#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "mgp/intrinsic_dim.hpp"
#include "mgp/manifold_lab.hpp"
#include "oracles.hpp"

using namespace mgp;

TEST_SUITE("manifold-lab") {

TEST_CASE("swiss roll latent ranges and rank") {
  const auto data = gen_swiss_roll({200, 100, 0.1, 5});
  CHECK(data.dataset.n() == 200);
  CHECK(data.dataset.dim() == 100);
  for (int i = 0; i < 200; ++i) {
    CHECK(data.latent(i, 0) >= 1.5 * kPi);
    CHECK(data.latent(i, 0) <= 4.5 * kPi);
    CHECK(data.latent(i, 1) >= 0.0);
    CHECK(data.latent(i, 1) <= 20.0);
  }
  // X = T Omega^T has rank <= 3
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(data.dataset.predictors);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 3; i < sv.size(); ++i)
    CHECK(sv(i) <= 1e-10 * sv(0));
}

TEST_CASE("swiss roll noiseless responses equal the truth") {
  const auto data = gen_swiss_roll({50, 80, 0.0, 9});
  CHECK(data.dataset.responses == data.f0_at_points);
  for (int i = 0; i < 50; ++i)
    CHECK(data.f0_at_points(i) ==
          doctest::Approx(swiss_roll_truth(data.latent(i, 0), data.latent(i, 1)))
              .epsilon(1e-15));
}

TEST_CASE("swiss roll is reproducible and lift-isometric") {
  const auto d1 = gen_swiss_roll({60, 50, 0.1, 123});
  const auto d2 = gen_swiss_roll({60, 50, 0.1, 123});
  CHECK(d1.dataset.predictors == d2.dataset.predictors);
  CHECK(d1.dataset.responses == d2.dataset.responses);

  // ||X_i - X_j|| = ||Omega (T_i - T_j)||: rebuild T from the latent
  // coordinates and recover Omega by least squares
  const auto& data = d1;
  Eigen::MatrixXd t(60, 3);
  for (int i = 0; i < 60; ++i) {
    const double u = data.latent(i, 0), v = data.latent(i, 1);
    t.row(i) << u * std::cos(u), v, u * std::sin(u);
  }
  const Eigen::MatrixXd omega_t =
      t.colPivHouseholderQr().solve(data.dataset.predictors);
  for (int rep = 0; rep < 20; ++rep) {
    const int i = rep, j = 59 - rep;
    const double lhs =
        (data.dataset.predictors.row(i) - data.dataset.predictors.row(j)).norm();
    const double rhs = ((t.row(i) - t.row(j)) * omega_t).norm();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("circle manifold spacing, truth and periodicity") {
  CircleManifoldConfig cfg;
  cfg.n = 72;
  cfg.ambient_dim = 30;
  cfg.noise_sd = 0.0;
  cfg.seed = 3;
  const auto data = gen_circle_manifold(cfg);
  for (int i = 0; i + 1 < 72; ++i)
    CHECK(data.latent(i + 1, 0) - data.latent(i, 0) ==
          doctest::Approx(2.0 * kPi / 72.0).epsilon(1e-12));
  CHECK(data.dataset.responses(0) == 1.0);  // cos 0, noiseless
  for (int i = 0; i < 72; ++i)
    CHECK(data.f0_at_points(i) ==
          doctest::Approx(std::cos(data.latent(i, 0))).epsilon(1e-15));
}

TEST_CASE("circle embedding features are 2pi-periodic") {
  // the embedding is linear in these features, so feature equality at
  // theta and theta + 2pi carries over to the ambient points
  Rng rng(8);
  Eigen::VectorXd t(12), t_shift(12);
  for (int i = 0; i < 12; ++i) {
    t(i) = rng.uniform(0.0, 2.0 * kPi);
    t_shift(i) = t(i) + 2.0 * kPi;
  }
  const Eigen::MatrixXd f = circle_harmonic_features(t, 4);
  const Eigen::MatrixXd fs = circle_harmonic_features(t_shift, 4);
  CHECK((f - fs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("generated circle data has intrinsic dimension one") {
  int hits = 0;
  for (int rep = 0; rep < 20; ++rep) {
    CircleManifoldConfig cfg;
    cfg.n = 500;
    cfg.ambient_dim = 40;
    cfg.spacing = CircleSpacing::UniformRandom;
    cfg.seed = 900 + rep;
    const auto data = gen_circle_manifold(cfg);
    if (estimate_dimension(data.dataset.predictors, std::nullopt, 100,
                           950 + rep)
            .d_hat_rounded == 1)
      ++hits;
  }
  CHECK(hits >= 18);
}

TEST_CASE("geodesic distance on the circle") {
  CHECK(geodesic_distance_circle(0.0, kPi) == doctest::Approx(kPi));
  CHECK(geodesic_distance_circle(1.3, 1.3) == 0.0);
  CHECK(geodesic_distance_circle(0.0, kPi / 2.0) == doctest::Approx(kPi / 2.0));
  CHECK(geodesic_distance_circle(0.1, 2.0 * kPi - 0.1) ==
        doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("distance equivalence constants on circle grids") {
  // a single pair at angular distance pi/2: both constants equal the
  // arc/chord ratio (pi/2)/sqrt(2)
  Eigen::VectorXd two(2);
  two << 0.0, kPi / 2.0;
  const auto pair = check_distance_equivalence(
      unit_circle_points(two),
      [&](Eigen::Index i, Eigen::Index j) {
        return geodesic_distance_circle(two(i), two(j));
      },
      true);
  CHECK(pair.c1 == doctest::Approx((kPi / 2.0) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(pair.c2 == pair.c1);

  const int n = 2000;
  Eigen::VectorXd thetas(n);
  for (int i = 0; i < n; ++i) thetas(i) = 2.0 * kPi * i / n;
  const auto eq = check_distance_equivalence(
      unit_circle_points(thetas),
      [&](Eigen::Index i, Eigen::Index j) {
        return geodesic_distance_circle(thetas(i), thetas(j));
      },
      true);
  CHECK(eq.c1 >= 1.0 - 1e-9);
  CHECK(eq.c1 <= 1.0 + 1e-5);
  CHECK(eq.c2 == doctest::Approx(kPi / 2.0).epsilon(1e-6));
  CHECK(eq.n_pairs == static_cast<Eigen::Index>(n) * (n - 1) / 2);
}

TEST_CASE("coincident points are skipped") {
  Eigen::MatrixXd pts(3, 2);
  pts << 1, 0, 1, 0, 0, 1;
  const auto eq = check_distance_equivalence(
      pts, [](Eigen::Index, Eigen::Index) { return 1.0; });
  CHECK(eq.n_skipped == 1);
  CHECK(eq.n_pairs == 2);
}

TEST_CASE("convolution of the constant function decays at second order") {
  const auto one = [](double) { return 1.0; };
  const CircleConvolution i10(one, 10.0, 1024);
  const CircleConvolution i20(one, 20.0, 2048);
  const double e10 = std::abs(i10(0.7) - 1.0);
  const double e20 = std::abs(i20(0.7) - 1.0);
  CHECK(e10 <= 2.0 / (10.0 * 10.0));
  CHECK(e20 <= 2.0 / (20.0 * 20.0));
  // same constant at both scales
  CHECK(e10 * 100.0 == doctest::Approx(e20 * 400.0).epsilon(0.5));
}

TEST_CASE("convolution error for cos shrinks fourfold when a doubles") {
  const auto f = [](double t) { return std::cos(t); };
  const auto sup_err = [&](double a) {
    const CircleConvolution conv(f, a, 4096);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double t = 2.0 * kPi * i / 64.0;
      worst = std::max(worst, std::abs(conv(t) - f(t)));
    }
    return worst;
  };
  const double ratio = sup_err(16.0) / sup_err(32.0);
  CHECK(ratio >= 4.0 * 0.7);
  CHECK(ratio <= 4.0 * 1.3);
}

TEST_CASE("convolution decay slope is -2 over a in {8,16,32,64}") {
  const auto f = [](double t) { return std::cos(t); };
  std::vector<double> log_a, log_err;
  for (double a : {8.0, 16.0, 32.0, 64.0}) {
    const CircleConvolution conv(f, a, std::max(1024, static_cast<int>(a * 64)));
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double t = 2.0 * kPi * i / 64.0;
      worst = std::max(worst, std::abs(conv(t) - f(t)));
    }
    log_a.push_back(std::log(a));
    log_err.push_back(std::log(worst));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    sx += log_a[i];
    sy += log_err[i];
    sxx += log_a[i] * log_a[i];
    sxy += log_a[i] * log_err[i];
  }
  const double slope = (sxy - sx * sy / 4.0) / (sxx - sx * sx / 4.0);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("convolution is linear at matched quadrature") {
  const auto f = [](double t) { return std::cos(t); };
  const auto g = [](double t) { return std::sin(2.0 * t) - 0.3; };
  const CircleConvolution cf(f, 12.0, 1024);
  const CircleConvolution cg(g, 12.0, 1024);
  const CircleConvolution mix([&](double t) { return 2.5 * f(t) - 1.5 * g(t); },
                              12.0, 1024);
  for (int i = 0; i < 8; ++i) {
    const double t = 2.0 * kPi * i / 8.0;
    CHECK(mix(t) ==
          doctest::Approx(2.5 * cf(t) - 1.5 * cg(t)).epsilon(1e-12));
  }
}

TEST_CASE("convolution rejects insufficient quadrature") {
  const auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(CircleConvolution(one, 0.5, 1024), std::invalid_argument);
  CHECK_THROWS_AS(CircleConvolution(one, 10.0, 128), std::invalid_argument);
  CHECK_THROWS_WITH_AS(CircleConvolution(one, 100.0, 1024),
                       doctest::Contains("resolution"), std::invalid_argument);
}

}  // TEST_SUITE
