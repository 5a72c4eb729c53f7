#pragma once

#include <Eigen/Core>

#include "mgp/common.hpp"

namespace mgp {

// Inverse bandwidth of the squared exponential kernel
// K^a(x,y) = exp(-a^2 ||x-y||^2).
struct KernelParams {
  double a = 1.0;

  explicit KernelParams(double a_in);
  KernelParams() = default;
};

double kernel(double a, const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& y);

// Pairwise squared Euclidean distances, exactly symmetric with a zero
// diagonal. Cost O(n^2 D) via one GEMM.
Eigen::MatrixXd pairwise_sqdist(const Eigen::Ref<const Eigen::MatrixXd>& x);
Eigen::MatrixXd cross_sqdist(const Eigen::Ref<const Eigen::MatrixXd>& x,
                             const Eigen::Ref<const Eigen::MatrixXd>& y);

Eigen::MatrixXd gram(double a, const Eigen::Ref<const Eigen::MatrixXd>& x);
Eigen::MatrixXd gram_from_sqdist(double a,
                                 const Eigen::Ref<const Eigen::MatrixXd>& sq);
Eigen::MatrixXd cross_gram(double a, const Eigen::Ref<const Eigen::MatrixXd>& x,
                           const Eigen::Ref<const Eigen::MatrixXd>& y);

}  // namespace mgp
