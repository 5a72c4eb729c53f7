#include "mgp/kernel.hpp"

#include <cmath>

namespace mgp {

namespace {

void check_bandwidth(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("kernel: a must be positive and finite, got " +
                                std::to_string(a));
}

}  // namespace

KernelParams::KernelParams(double a_in) : a(a_in) { check_bandwidth(a); }

double kernel(double a, const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_bandwidth(a);
  if (x.size() != y.size())
    throw std::invalid_argument("kernel: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("kernel: non-finite input");
  return std::exp(-a * a * (x - y).squaredNorm());
}

Eigen::MatrixXd pairwise_sqdist(const Eigen::Ref<const Eigen::MatrixXd>& x) {
  if (!x.allFinite())
    throw std::invalid_argument("pairwise_sqdist: non-finite entries");
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = -2.0 * (x * x.transpose());
  d2.colwise() += sq;
  d2.rowwise() += sq.transpose();
  // mirror the upper triangle; forces exact symmetry and a zero diagonal
  for (Eigen::Index i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = d2(i, j) > 0.0 ? d2(i, j) : 0.0;
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

Eigen::MatrixXd cross_sqdist(const Eigen::Ref<const Eigen::MatrixXd>& x,
                             const Eigen::Ref<const Eigen::MatrixXd>& y) {
  if (x.cols() != y.cols())
    throw std::invalid_argument("cross_sqdist: dimension mismatch");
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("cross_sqdist: non-finite entries");
  Eigen::MatrixXd d2 = -2.0 * (x * y.transpose());
  d2.colwise() += x.rowwise().squaredNorm();
  d2.rowwise() += y.rowwise().squaredNorm().transpose();
  return d2.cwiseMax(0.0);
}

Eigen::MatrixXd gram_from_sqdist(double a,
                                 const Eigen::Ref<const Eigen::MatrixXd>& sq) {
  check_bandwidth(a);
  return (-a * a * sq.array()).exp().matrix();
}

Eigen::MatrixXd gram(double a, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  return gram_from_sqdist(a, pairwise_sqdist(x));
}

Eigen::MatrixXd cross_gram(double a, const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& y) {
  return gram_from_sqdist(a, cross_sqdist(x, y));
}

}  // namespace mgp
