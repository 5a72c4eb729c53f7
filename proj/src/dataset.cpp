#include "mgp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mgp/rng.hpp"

namespace mgp {

Dataset::Dataset(Eigen::MatrixXd x, Eigen::VectorXd y,
                 std::optional<std::uint64_t> seed)
    : predictors(std::move(x)), responses(std::move(y)), source_seed(seed) {
  if (predictors.rows() < 1 || predictors.cols() < 1)
    throw std::invalid_argument("Dataset: need n >= 1 and D >= 1");
  if (predictors.rows() != responses.size())
    throw std::invalid_argument("Dataset: predictor rows (" +
                                std::to_string(predictors.rows()) +
                                ") != response length (" +
                                std::to_string(responses.size()) + ")");
  if (!predictors.allFinite())
    throw std::invalid_argument("Dataset: non-finite predictor entry");
  if (!responses.allFinite())
    throw std::invalid_argument("Dataset: non-finite response entry");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("load_csv: '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_line(line);
  if (header.size() < 2)
    throw std::invalid_argument("load_csv: header must be x1,...,xD,y");
  const std::size_t dim = header.size() - 1;
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[j] != "x" + std::to_string(j + 1))
      throw std::invalid_argument("load_csv: header column " +
                                  std::to_string(j + 1) + " is '" + header[j] +
                                  "', expected 'x" + std::to_string(j + 1) + "'");
  }
  if (header.back() != "y")
    throw std::invalid_argument("load_csv: last header column must be 'y'");

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument(
          "load_csv: row " + std::to_string(line_no) + " has " +
          std::to_string(cells.size()) + " cells, expected " +
          std::to_string(header.size()));
    std::vector<double> vals(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_double(cells[j], vals[j]) || !std::isfinite(vals[j]))
        throw std::invalid_argument("load_csv: row " + std::to_string(line_no) +
                                    " column " + std::to_string(j + 1) +
                                    ": cannot parse '" + cells[j] + "'");
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::invalid_argument("load_csv: empty dataset");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(dim));
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j)
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    y(static_cast<Eigen::Index>(i)) = rows[i][dim];
  }
  return Dataset(std::move(x), std::move(y));
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF on all platforms
  if (!out) throw std::invalid_argument("save_csv: cannot open '" + path + "'");
  for (Eigen::Index j = 0; j < ds.dim(); ++j) out << "x" << (j + 1) << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    for (Eigen::Index j = 0; j < ds.dim(); ++j)
      out << format_double(ds.predictors(i, j)) << ",";
    out << format_double(ds.responses(i)) << "\n";
  }
  if (!out) throw std::invalid_argument("save_csv: write failed for '" + path + "'");
}

SplitIndices split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  const Eigen::Index n = ds.n();
  if (n < 2) throw std::invalid_argument("split: need n >= 2");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("split: test_fraction must be in (0,1)");
  const auto m = static_cast<Eigen::Index>(
      std::llround(test_fraction * static_cast<double>(n)));
  if (m < 1 || m > n - 1)
    throw std::invalid_argument("split: fraction " +
                                std::to_string(test_fraction) +
                                " leaves an empty side at n = " +
                                std::to_string(n));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  rng.shuffle(order);

  SplitIndices out;
  out.seed = seed;
  out.test_idx.assign(order.begin(), order.begin() + m);
  out.train_idx.assign(order.begin() + m, order.end());
  std::sort(out.test_idx.begin(), out.test_idx.end());
  std::sort(out.train_idx.begin(), out.train_idx.end());
  return out;
}

EmpiricalNorm empirical_norm(const Eigen::VectorXd& f_vals,
                             const Eigen::VectorXd& g_vals) {
  if (f_vals.size() != g_vals.size())
    throw std::invalid_argument("empirical_norm: length mismatch (" +
                                std::to_string(f_vals.size()) + " vs " +
                                std::to_string(g_vals.size()) + ")");
  if (f_vals.size() == 0)
    throw std::invalid_argument("empirical_norm: empty vectors");
  const double ms =
      (f_vals - g_vals).squaredNorm() / static_cast<double>(f_vals.size());
  return EmpiricalNorm{std::sqrt(ms)};
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m,
                          const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

Eigen::VectorXd take_elements(const Eigen::VectorXd& v,
                              const std::vector<Eigen::Index>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v(rows[i]);
  return out;
}

Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
  return Dataset(take_rows(ds.predictors, rows),
                 take_elements(ds.responses, rows), ds.source_seed);
}

}  // namespace mgp
