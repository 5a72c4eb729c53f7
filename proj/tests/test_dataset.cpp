#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "mgp/dataset.hpp"
#include "oracles.hpp"

using namespace mgp;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("/tmp/mgp_test_" + name + "_" + std::to_string(::getpid()) + ".csv") {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("load_csv parses a 2-row 1-d file") {
  TempFile f("basic");
  std::ofstream(f.path) << "x1,y\n0.0,1.0\n1.0,2.0\n";
  const Dataset ds = load_csv(f.path);
  CHECK(ds.n() == 2);
  CHECK(ds.dim() == 1);
  CHECK(ds.responses(0) == 1.0);
  CHECK(ds.responses(1) == 2.0);
  CHECK(ds.predictors(1, 0) == 1.0);
}

TEST_CASE("load_csv diagnostics") {
  CHECK_THROWS_WITH_AS(load_csv("/tmp/mgp_no_such_file.csv"),
                       doctest::Contains("cannot open"), std::invalid_argument);

  TempFile empty("empty");
  std::ofstream(empty.path) << "x1,x2,y\n";
  CHECK_THROWS_WITH_AS(load_csv(empty.path), doctest::Contains("empty dataset"),
                       std::invalid_argument);

  TempFile ragged("ragged");
  std::ofstream(ragged.path) << "x1,y\n1.0,2.0\n1.0\n";
  CHECK_THROWS_WITH_AS(load_csv(ragged.path), doctest::Contains("row 3"),
                       std::invalid_argument);

  TempFile bad("badcell");
  std::ofstream(bad.path) << "x1,y\n1.0,abc\n";
  CHECK_THROWS_WITH_AS(load_csv(bad.path), doctest::Contains("column 2"),
                       std::invalid_argument);

  TempFile hdr("badheader");
  std::ofstream(hdr.path) << "a,b\n1.0,2.0\n";
  CHECK_THROWS_AS(load_csv(hdr.path), std::invalid_argument);
}

TEST_CASE("csv round trip reproduces doubles exactly") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.bounded(12));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.bounded(5));
    const Dataset ds(oracles::random_matrix(n, d, rng, 10.0),
                     oracles::random_vector(n, rng, 100.0));
    TempFile f("roundtrip");
    save_csv(ds, f.path);
    const Dataset back = load_csv(f.path);
    REQUIRE(back.n() == ds.n());
    REQUIRE(back.dim() == ds.dim());
    CHECK(back.predictors == ds.predictors);
    CHECK(back.responses == ds.responses);
  }
}

TEST_CASE("dataset invariants are enforced") {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 1.0;
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  CHECK_THROWS_AS(Dataset(x, y), std::invalid_argument);

  Eigen::VectorXd y2(2);
  y2 << 1, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Dataset(x, y2), std::invalid_argument);
}

TEST_CASE("split partitions deterministically") {
  Rng rng(3);
  const Dataset ds(oracles::random_matrix(10, 2, rng),
                   oracles::random_vector(10, rng));

  const SplitIndices sp = split(ds, 0.5, 42);
  CHECK(sp.train_idx.size() == 5);
  CHECK(sp.test_idx.size() == 5);

  std::set<Eigen::Index> all(sp.train_idx.begin(), sp.train_idx.end());
  all.insert(sp.test_idx.begin(), sp.test_idx.end());
  CHECK(all.size() == 10);
  CHECK(*all.begin() == 0);
  CHECK(*all.rbegin() == 9);

  const SplitIndices sp2 = split(ds, 0.5, 42);
  CHECK(sp2.train_idx == sp.train_idx);
  CHECK(sp2.test_idx == sp.test_idx);

  const SplitIndices sp3 = split(ds, 0.5, 43);
  CHECK(sp3.train_idx != sp.train_idx);
}

TEST_CASE("split matches the 72-sample holdout sizes") {
  Rng rng(5);
  const Dataset ds(oracles::random_matrix(72, 3, rng),
                   oracles::random_vector(72, rng));
  const SplitIndices sp = split(ds, 0.75, 1);
  CHECK(sp.train_idx.size() == 18);
  CHECK(sp.test_idx.size() == 54);
}

TEST_CASE("split rejects degenerate requests") {
  Rng rng(9);
  const Dataset one(oracles::random_matrix(1, 1, rng),
                    oracles::random_vector(1, rng));
  CHECK_THROWS_AS(split(one, 0.5, 0), std::invalid_argument);

  const Dataset ds(oracles::random_matrix(4, 1, rng),
                   oracles::random_vector(4, rng));
  CHECK_THROWS_AS(split(ds, 0.05, 0), std::invalid_argument);
  CHECK_THROWS_AS(split(ds, 0.99, 0), std::invalid_argument);
}

TEST_CASE("empirical norm examples") {
  Eigen::VectorXd f(2), g(2);
  f << 1, 1;
  g << 0, 0;
  CHECK(empirical_norm(f, g).value == doctest::Approx(1.0));
  CHECK(empirical_norm(f, f).value == 0.0);

  f << 3, 0;
  g << 0, 4;
  CHECK(empirical_norm(f, g).value == doctest::Approx(std::sqrt(12.5)));

  Eigen::VectorXd h(3);
  CHECK_THROWS_AS(empirical_norm(f, h), std::invalid_argument);
  CHECK_THROWS_AS(empirical_norm(Eigen::VectorXd(), Eigen::VectorXd()),
                  std::invalid_argument);
}

TEST_CASE("empirical norm triangle inequality on random triples") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.bounded(20));
    const Eigen::VectorXd a = oracles::random_vector(n, rng);
    const Eigen::VectorXd b = oracles::random_vector(n, rng);
    const Eigen::VectorXd c = oracles::random_vector(n, rng);
    CHECK(empirical_norm(a, c).value <=
          empirical_norm(a, b).value + empirical_norm(b, c).value + 1e-12);
  }
}

}  // TEST_SUITE
