#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>

#include "mgp/dataset.hpp"

namespace mgp {

struct SwissRollConfig {
  int n = 100;
  int ambient_dim = 100;  // >= 3
  double noise_sd = 0.1;
  std::uint64_t seed = 0;
};

enum class CircleSpacing { Equal, UniformRandom };

struct CircleManifoldConfig {
  int n = 72;
  int ambient_dim = 100;  // >= 2
  int embedding_harmonics = 3;
  double noise_sd = 0.1;
  CircleSpacing spacing = CircleSpacing::Equal;
  std::uint64_t seed = 0;
};

struct LabeledManifoldData {
  Dataset dataset;
  Eigen::MatrixXd latent;      // n x d true coordinates: (U,V) or theta
  Eigen::VectorXd f0_at_points;  // noiseless truth
};

// Swiss roll: T = (U cos U, V, U sin U) with U ~ Unif(3pi/2, 9pi/2),
// V ~ Unif(0, 20); lifted by X = Omega T with Omega ~ iid N(0,1),
// drawn once per dataset. The truth is the noiseless part of the
// response formula: f0 = 4 (U/(3pi) - (1+3pi)/2)^2 + (pi/20) V.
LabeledManifoldData gen_swiss_roll(const SwissRollConfig& cfg);

double swiss_roll_truth(double u, double v);

// Circle surrogate: theta on [0, 2pi) (equally spaced or uniform),
// embedded by a seeded random trigonometric map (harmonics up to the
// configured order, coefficients decaying 1/h), injectivity checked
// numerically at generation with up to 10 coefficient resamples.
// Truth f0(theta) = cos theta.
LabeledManifoldData gen_circle_manifold(const CircleManifoldConfig& cfg);

// Trigonometric feature block [cos(h t), sin(h t)] for h = 1..H; the
// circle embedding is a linear map of these features.
Eigen::MatrixXd circle_harmonic_features(const Eigen::VectorXd& thetas,
                                         int harmonics);

// Arc-length distance on the unit circle.
double geodesic_distance_circle(double theta1, double theta2);

// Points (cos theta, sin theta) as rows.
Eigen::MatrixXd unit_circle_points(const Eigen::VectorXd& thetas);

// Round unit circle isometrically embedded in R^ambient_dim via a
// seeded random orthonormal 2-frame.
Eigen::MatrixXd embed_circle_isometric(const Eigen::VectorXd& thetas,
                                       int ambient_dim, std::uint64_t seed);

struct DistanceEquivalence {
  double c1 = 0.0;  // min over pairs of geodesic / Euclidean
  double c2 = 0.0;  // max
  Eigen::Index n_pairs = 0;
  Eigen::Index n_skipped = 0;  // coincident pairs
};

// Empirical constants of C1 ||x-y|| <= d_M(x,y) <= C2 ||x-y||.
// With require_isometric the isometric-embedding bound c1 >= 1 - 1e-9
// is enforced (geodesics dominate chords).
DistanceEquivalence check_distance_equivalence(
    const Eigen::Ref<const Eigen::MatrixXd>& points,
    const std::function<double(Eigen::Index, Eigen::Index)>& geodesic,
    bool require_isometric = false);

// Kernel-smoothing operator on the unit circle:
//   I_a(f)(x) = (a/sqrt(2pi)) \int exp(-a^2 ||x-y||^2 / 2) f(y) dV(y)
// (note the /2 in this exponent), evaluated by trapezoidal quadrature
// over the periodic domain. Requires a >= 1, quadrature_points >= 256
// and quadrature_points >= 64 a.
class CircleConvolution {
 public:
  CircleConvolution(std::function<double(double)> f, double a,
                    int quadrature_points);

  double operator()(double theta) const;

 private:
  Eigen::VectorXd node_theta_;
  Eigen::VectorXd node_f_;
  double a_;
};

}  // namespace mgp
