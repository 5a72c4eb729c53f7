#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgp/common.hpp"

namespace mgp {

// Regression sample: predictor rows X_i in R^D and responses Y_i.
// Immutable after construction; invariants checked by the constructor.
struct Dataset {
  Eigen::MatrixXd predictors;  // n x D
  Eigen::VectorXd responses;   // n
  std::optional<std::uint64_t> source_seed;

  Dataset(Eigen::MatrixXd x, Eigen::VectorXd y,
          std::optional<std::uint64_t> seed = std::nullopt);

  Eigen::Index n() const { return predictors.rows(); }
  Eigen::Index dim() const { return predictors.cols(); }
};

struct SplitIndices {
  std::vector<Eigen::Index> train_idx;
  std::vector<Eigen::Index> test_idx;
  std::uint64_t seed = 0;
};

struct EmpiricalNorm {
  double value = 0.0;
};

// CSV with header x1,...,xD,y; UTF-8, LF, '.' decimal separator.
// Cells are written with 17 significant digits, so a round trip is
// bit-faithful for doubles.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

// Seeded Fisher-Yates holdout split; |test| = round(test_fraction * n),
// both sides non-empty. Returned indices are sorted ascending.
SplitIndices split(const Dataset& ds, double test_fraction, std::uint64_t seed);

// sqrt( mean_i (f_i - g_i)^2 )
EmpiricalNorm empirical_norm(const Eigen::VectorXd& f_vals,
                             const Eigen::VectorXd& g_vals);

// Row-gather helpers shared by the split consumers.
Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m,
                          const std::vector<Eigen::Index>& rows);
Eigen::VectorXd take_elements(const Eigen::VectorXd& v,
                              const std::vector<Eigen::Index>& rows);
Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& rows);

}  // namespace mgp
