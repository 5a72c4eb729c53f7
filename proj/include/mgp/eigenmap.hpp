#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "mgp/dataset.hpp"
#include "mgp/estimator.hpp"
#include "mgp/mcmc.hpp"

namespace mgp {

enum class EdgeWeights { Heat, Binary };

struct EigenmapConfig {
  int n_neighbors = 0;  // <= 0: max(10, ceil(2 log n))
  int d_tilde = 2;
  EdgeWeights weights = EdgeWeights::Heat;
  double heat_bandwidth = 0.0;  // <= 0: (4 * median kNN edge length)^2
  std::uint64_t seed = 0;
};

struct Embedding {
  Eigen::MatrixXd coords;      // n x d_tilde
  Eigen::VectorXd eigenvalues;  // ascending, the d_tilde retained values
  bool graph_connected = true;
};

// Symmetric-kNN graph (edge if either endpoint lists the other),
// symmetric normalized Laplacian L = I - D^{-1/2} W D^{-1/2}; the
// embedding uses eigenvectors 2..d_tilde+1, skipping the trivial one.
// Transductive: there is no out-of-sample extension, so prediction at
// new points requires embedding them jointly with the training rows.
Embedding laplacian_eigenmap(const Eigen::Ref<const Eigen::MatrixXd>& x,
                             const EigenmapConfig& cfg);

// CSV dump with header e1,...,ed_tilde aligned with input row order.
void save_embedding_csv(const Embedding& emb, const std::string& path);

// Two-stage pipeline: embed the predictors, then run the bandwidth
// chain and the truncated estimator on the embedded dataset. The fit
// is produced at the embedded training points only (transductive).
FitResult two_stage_fit(const Dataset& ds, const EigenmapConfig& emap,
                        const BandwidthPrior& prior, const McmcConfig& mcmc,
                        TruncationLevel tau, Embedding* embedding_out = nullptr);

}  // namespace mgp
