#include <doctest.h>

#include <cmath>

#include "mgp/eigenmap.hpp"
#include "mgp/kernel.hpp"
#include "mgp/manifold_lab.hpp"
#include "oracles.hpp"

using namespace mgp;

namespace {

// sign-aligned column comparison
double aligned_max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const double same = (a.col(c) - b.col(c)).cwiseAbs().maxCoeff();
    const double flip = (a.col(c) + b.col(c)).cwiseAbs().maxCoeff();
    worst = std::max(worst, std::min(same, flip));
  }
  return worst;
}

}  // namespace

TEST_SUITE("two-stage-reduction") {

TEST_CASE("two separated clusters are reported disconnected") {
  Rng rng(71);
  Eigen::MatrixXd x(16, 2);
  for (int i = 0; i < 8; ++i) x.row(i) << rng.normal(), rng.normal();
  for (int i = 8; i < 16; ++i)
    x.row(i) << 1000.0 + rng.normal(), 1000.0 + rng.normal();

  EigenmapConfig cfg;
  cfg.n_neighbors = 3;
  cfg.d_tilde = 2;
  cfg.weights = EdgeWeights::Binary;
  const Embedding emb = laplacian_eigenmap(x, cfg);
  CHECK(!emb.graph_connected);
  // eigenvalue 0 has multiplicity 2; after skipping the first trivial
  // vector one zero remains in the returned spectrum
  CHECK(emb.eigenvalues(0) <= 1e-10);
  CHECK(emb.eigenvalues(0) >= -1e-10);
  CHECK(emb.eigenvalues(1) > 1e-6);

  // but d_tilde beyond the largest component's capacity is refused
  cfg.d_tilde = 9;
  CHECK_THROWS_WITH_AS(laplacian_eigenmap(x, cfg),
                       doctest::Contains("raise n_neighbors"),
                       std::invalid_argument);
}

TEST_CASE("circle data embeds onto a round circle") {
  Rng rng(72);
  Eigen::VectorXd thetas(400);
  for (int i = 0; i < 400; ++i) thetas(i) = rng.uniform(0.0, 2.0 * kPi);
  const Eigen::MatrixXd x = embed_circle_isometric(thetas, 20, 73);

  EigenmapConfig cfg;
  cfg.d_tilde = 2;
  const Embedding emb = laplacian_eigenmap(x, cfg);
  CHECK(emb.graph_connected);

  Eigen::VectorXd radii(400);
  for (int i = 0; i < 400; ++i) radii(i) = emb.coords.row(i).norm();
  const double mean_r = radii.mean();
  const double sd_r = std::sqrt((radii.array() - mean_r).square().sum() / 399.0);
  CHECK(sd_r / mean_r < 0.1);  // coefficient of variation
}

TEST_CASE("eigen residuals are tight for every returned pair") {
  Rng rng(74);
  const Eigen::MatrixXd x = oracles::random_matrix(60, 3, rng);
  EigenmapConfig cfg;
  cfg.d_tilde = 4;
  cfg.n_neighbors = 6;
  const Embedding emb = laplacian_eigenmap(x, cfg);

  // rebuild the Laplacian exactly as the module does
  const Eigen::MatrixXd sq = pairwise_sqdist(x);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(60, 60);
  for (Eigen::Index i = 0; i < 60; ++i) {
    std::vector<std::pair<double, Eigen::Index>> cand;
    for (Eigen::Index j = 0; j < 60; ++j)
      if (j != i) cand.emplace_back(sq(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + 6, cand.end());
    for (int m = 0; m < 6; ++m) w(i, cand[m].second) = 1.0;
  }
  std::vector<double> lengths;
  for (Eigen::Index i = 0; i < 60; ++i)
    for (Eigen::Index j = i + 1; j < 60; ++j)
      if (w(i, j) != 0.0 || w(j, i) != 0.0) lengths.push_back(std::sqrt(sq(i, j)));
  std::sort(lengths.begin(), lengths.end());
  const double med = lengths.size() % 2 == 1
                         ? lengths[lengths.size() / 2]
                         : 0.5 * (lengths[lengths.size() / 2 - 1] +
                                  lengths[lengths.size() / 2]);
  const double t = 16.0 * med * med;
  Eigen::MatrixXd heat = Eigen::MatrixXd::Zero(60, 60);
  for (Eigen::Index i = 0; i < 60; ++i)
    for (Eigen::Index j = 0; j < 60; ++j)
      if (w(i, j) != 0.0 || w(j, i) != 0.0)
        heat(i, j) = std::exp(-sq(i, j) / t);
  const Eigen::VectorXd dinv = heat.rowwise().sum().array().rsqrt();
  Eigen::MatrixXd lap = -(dinv.asDiagonal() * heat * dinv.asDiagonal());
  lap.diagonal().array() += 1.0;
  lap = 0.5 * (lap + lap.transpose()).eval();

  for (Eigen::Index c = 0; c < emb.coords.cols(); ++c) {
    const Eigen::VectorXd v = emb.coords.col(c);
    CHECK((lap * v - emb.eigenvalues(c) * v).cwiseAbs().maxCoeff() <= 1e-8);
  }
  // ascending, nonnegative spectrum
  for (Eigen::Index c = 1; c < emb.eigenvalues.size(); ++c)
    CHECK(emb.eigenvalues(c) >= emb.eigenvalues(c - 1));
  CHECK(emb.eigenvalues(0) >= -1e-10);
}

TEST_CASE("row permutation permutes the embedding") {
  Rng rng(75);
  const Eigen::MatrixXd x = oracles::random_matrix(40, 3, rng, 2.0);
  std::vector<Eigen::Index> perm(40);
  for (int i = 0; i < 40; ++i) perm[static_cast<std::size_t>(i)] = (11 * i) % 40;
  const Eigen::MatrixXd xp = take_rows(x, perm);

  EigenmapConfig cfg;
  cfg.d_tilde = 2;
  cfg.n_neighbors = 6;
  const Embedding e1 = laplacian_eigenmap(x, cfg);
  const Embedding e2 = laplacian_eigenmap(xp, cfg);
  const Eigen::MatrixXd expected = take_rows(e1.coords, perm);
  CHECK(aligned_max_diff(expected, e2.coords) <= 1e-8);
}

TEST_CASE("rigid motion leaves the embedding unchanged up to sign") {
  Rng rng(76);
  const Eigen::MatrixXd x = oracles::random_matrix(50, 4, rng, 2.0);
  const Eigen::MatrixXd g = oracles::random_matrix(4, 4, rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd moved = x * Eigen::MatrixXd(qr.householderQ()).transpose();
  moved.rowwise() += Eigen::RowVectorXd::Constant(4, -1.5);

  EigenmapConfig cfg;
  cfg.d_tilde = 2;
  cfg.n_neighbors = 6;
  const Embedding e1 = laplacian_eigenmap(x, cfg);
  const Embedding e2 = laplacian_eigenmap(moved, cfg);
  CHECK(aligned_max_diff(e1.coords, e2.coords) <= 1e-8);
  CHECK((e1.eigenvalues - e2.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("preconditions") {
  Rng rng(77);
  const Eigen::MatrixXd x = oracles::random_matrix(5, 2, rng);
  EigenmapConfig cfg;
  cfg.d_tilde = 4;
  CHECK_THROWS_AS(laplacian_eigenmap(x, cfg), std::invalid_argument);
  cfg.d_tilde = 0;
  CHECK_THROWS_AS(laplacian_eigenmap(x, cfg), std::invalid_argument);
  cfg.d_tilde = 2;
  cfg.n_neighbors = 10;
  CHECK_THROWS_AS(laplacian_eigenmap(x, cfg), std::invalid_argument);
}

TEST_CASE("identity regime: embedded fit tracks the vanilla fit" *
          doctest::test_suite("slow")) {
  // low-D data, d_tilde = D, a dense graph: both pipelines should
  // recover an easy smooth function to similar accuracy
  Rng rng(78);
  const int n = 80;
  Eigen::MatrixXd x = oracles::random_matrix(n, 2, rng);
  Eigen::VectorXd f0(n), y(n);
  for (int i = 0; i < n; ++i) {
    f0(i) = x(i, 0) + x(i, 1);
    y(i) = f0(i) + 0.05 * rng.normal();
  }
  const Dataset ds(x, y);

  McmcConfig mc;
  mc.n_iter = 800;
  mc.burn_in = 300;
  mc.noise_var = 0.0025;
  mc.seed = 11;
  const TruncationLevel tau(default_truncation(y));

  const BandwidthChain vanilla_chain = run_chain(ds, {1, 1, 2}, mc);
  EstimateOptions opt;
  opt.thin = 10;
  opt.seed = 13;
  const FitResult vanilla =
      estimate(ds, vanilla_chain, Eigen::MatrixXd(0, 2), tau, opt);

  EigenmapConfig emap;
  emap.d_tilde = 2;
  emap.n_neighbors = n - 1;  // dense graph
  const FitResult reduced = two_stage_fit(ds, emap, {1, 1, 2}, mc, tau);

  const double err_vanilla = empirical_norm(vanilla.estimate_at_train, f0).value;
  const double err_reduced = empirical_norm(reduced.estimate_at_train, f0).value;
  CHECK(err_vanilla < 0.1);
  CHECK(err_reduced < 3.0 * err_vanilla + 0.05);
}

TEST_CASE("2GP on the circle surrogate beats the mean predictor" *
          doctest::test_suite("slow")) {
  CircleManifoldConfig gen;
  gen.n = 72;
  gen.ambient_dim = 60;
  gen.seed = 91;
  const LabeledManifoldData data = gen_circle_manifold(gen);
  const SplitIndices sp = split(data.dataset, 0.5, 4);
  const Dataset half = take_rows(data.dataset, sp.train_idx);  // n = 36

  McmcConfig mc;
  mc.n_iter = 1000;
  mc.burn_in = 400;
  mc.noise_var = 0.01;
  mc.seed = 21;
  EigenmapConfig emap;
  emap.d_tilde = 2;
  Embedding emb;
  const FitResult fit = two_stage_fit(half, emap, {1, 1, 1}, mc,
                                      TruncationLevel(2.0), &emb);
  const Eigen::VectorXd f0_half = take_elements(data.f0_at_points, sp.train_idx);
  const double err = empirical_norm(fit.estimate_at_train, f0_half).value;
  const Eigen::VectorXd mean_pred = Eigen::VectorXd::Constant(
      f0_half.size(), half.responses.mean());
  const double err_mean = empirical_norm(mean_pred, f0_half).value;
  CHECK(std::isfinite(err));
  CHECK(err < err_mean);
  CHECK(emb.coords.rows() == 36);
}

}  // TEST_SUITE
