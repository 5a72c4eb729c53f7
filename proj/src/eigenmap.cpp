#include "mgp/eigenmap.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <vector>

#include "mgp/kernel.hpp"
#include "mgp/rng.hpp"

namespace mgp {

namespace {

struct UnionFind {
  std::vector<Eigen::Index> parent;

  explicit UnionFind(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  }
  Eigen::Index find(Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    parent[static_cast<std::size_t>(find(a))] = find(b);
  }
};

// largest |entry| positive, earliest index wins ties; keeps output
// stable across runs and platforms
void canonicalize_sign(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double v = std::abs(m(r, c));
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    if (m(arg, c) < 0.0) m.col(c) = -m.col(c);
  }
}

}  // namespace

Embedding laplacian_eigenmap(const Eigen::Ref<const Eigen::MatrixXd>& x,
                             const EigenmapConfig& cfg) {
  const Eigen::Index n = x.rows();
  if (cfg.d_tilde < 1)
    throw std::invalid_argument("laplacian_eigenmap: d_tilde must be >= 1");
  if (n <= cfg.d_tilde + 1)
    throw std::invalid_argument("laplacian_eigenmap: need n > d_tilde + 1");
  const int k = cfg.n_neighbors > 0
                    ? cfg.n_neighbors
                    : std::max(10, static_cast<int>(std::ceil(
                                       2.0 * std::log(static_cast<double>(n)))));
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("laplacian_eigenmap: n_neighbors out of range");

  const Eigen::MatrixXd sq = pairwise_sqdist(x);

  // kNN lists; union-symmetrized adjacency
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<double, Eigen::Index>> cand;
  std::vector<double> edge_sq;
  for (Eigen::Index i = 0; i < n; ++i) {
    cand.clear();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(sq(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int m = 0; m < k; ++m) {
      const Eigen::Index j = cand[static_cast<std::size_t>(m)].second;
      if (w(i, j) == 0.0 && w(j, i) == 0.0) edge_sq.push_back(sq(i, j));
      w(i, j) = 1.0;
      w(j, i) = 1.0;
    }
  }

  if (cfg.weights == EdgeWeights::Heat) {
    double t = cfg.heat_bandwidth;
    if (t <= 0.0) {
      std::vector<double> lengths(edge_sq.size());
      for (std::size_t e = 0; e < edge_sq.size(); ++e)
        lengths[e] = std::sqrt(edge_sq[e]);
      const std::size_t mid = lengths.size() / 2;
      std::nth_element(lengths.begin(), lengths.begin() + mid, lengths.end());
      double med = lengths[mid];
      if (lengths.size() % 2 == 0) {
        std::nth_element(lengths.begin(), lengths.begin() + (mid - 1),
                         lengths.begin() + mid);
        med = 0.5 * (lengths[mid - 1] + med);
      }
      // (4 * median edge)^2: the bare squared median over-sharpens the
      // weights under irregular spacing and localizes the spectrum
      t = 16.0 * med * med;
    }
    if (t <= 0.0)
      throw std::invalid_argument("laplacian_eigenmap: degenerate heat bandwidth");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (w(i, j) != 0.0) w(i, j) = std::exp(-sq(i, j) / t);
  }

  UnionFind uf(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (w(i, j) != 0.0) uf.unite(i, j);
  std::vector<Eigen::Index> comp_size(static_cast<std::size_t>(n), 0);
  Eigen::Index largest = 0;
  bool connected = true;
  {
    const Eigen::Index root0 = uf.find(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index r = uf.find(i);
      if (r != root0) connected = false;
      largest = std::max(largest, ++comp_size[static_cast<std::size_t>(r)]);
    }
  }
  if (!connected && cfg.d_tilde > largest - 1)
    throw std::invalid_argument(
        "laplacian_eigenmap: graph disconnected (largest component " +
        std::to_string(largest) + " of " + std::to_string(n) +
        " cannot carry d_tilde = " + std::to_string(cfg.d_tilde) +
        " nontrivial directions); raise n_neighbors");

  const Eigen::VectorXd deg = w.rowwise().sum();
  const Eigen::VectorXd dinv_sqrt = deg.array().rsqrt();
  Eigen::MatrixXd lap =
      -(dinv_sqrt.asDiagonal() * w * dinv_sqrt.asDiagonal());
  lap.diagonal().array() += 1.0;
  lap = 0.5 * (lap + lap.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw NumericalError("laplacian_eigenmap: eigensolver failed");

  Embedding emb;
  emb.graph_connected = connected;
  emb.eigenvalues = solver.eigenvalues().segment(1, cfg.d_tilde);
  emb.coords = solver.eigenvectors().middleCols(1, cfg.d_tilde);
  canonicalize_sign(emb.coords);
  return emb;
}

void save_embedding_csv(const Embedding& emb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("save_embedding_csv: cannot open '" + path + "'");
  for (Eigen::Index j = 0; j < emb.coords.cols(); ++j) {
    if (j) out << ",";
    out << "e" << (j + 1);
  }
  out << "\n";
  for (Eigen::Index i = 0; i < emb.coords.rows(); ++i) {
    for (Eigen::Index j = 0; j < emb.coords.cols(); ++j) {
      if (j) out << ",";
      out << format_double(emb.coords(i, j));
    }
    out << "\n";
  }
}

FitResult two_stage_fit(const Dataset& ds, const EigenmapConfig& emap,
                        const BandwidthPrior& prior, const McmcConfig& mcmc,
                        TruncationLevel tau, Embedding* embedding_out) {
  Embedding emb = laplacian_eigenmap(ds.predictors, emap);
  const Dataset reduced(emb.coords, ds.responses, ds.source_seed);
  if (embedding_out) *embedding_out = emb;

  const BandwidthChain chain = run_chain(reduced, prior, mcmc);
  EstimateOptions opt;
  opt.seed = derive_seed(mcmc.seed, kSeedEstimator);
  return estimate(reduced, chain, Eigen::MatrixXd(0, reduced.dim()), tau, opt);
}

}  // namespace mgp
