#include <doctest.h>

#include <numeric>

#include "distkit/rng.hpp"
#include "distkit/univariate.hpp"

using namespace distkit;

TEST_CASE("equal seeds give equal streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("different seeds diverge within 10 draws") {
  Rng a(42), b(43);
  bool differ = false;
  for (int i = 0; i < 10; ++i) differ = differ || a.next() != b.next();
  CHECK(differ);
}

TEST_CASE("uniform01 stays in [0, 1) and uniform_open01 in (0, 1)") {
  Rng r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    CHECK((u >= 0.0 && u < 1.0));
    const double v = r.uniform_open01();
    CHECK((v > 0.0 && v < 1.0));
  }
}

TEST_CASE("Markov chain: identity is absorbing") {
  MarkovChain mc(1, Eigen::Matrix3d::Identity());
  Rng r(3);
  for (int i = 0; i < 50; ++i) CHECK(mc.rand(r) == 1);
}

TEST_CASE("Markov chain: swap matrix alternates") {
  Eigen::Matrix2d m;
  m << 0, 1, 1, 0;
  MarkovChain mc(1, m);
  Rng r(3);
  for (int i = 0; i < 20; ++i) {
    CHECK(mc.rand(r) == 2);
    CHECK(mc.rand(r) == 1);
  }
}

TEST_CASE("Markov chain: symmetric chain visits state 1 half the time") {
  Eigen::Matrix2d m = Eigen::Matrix2d::Constant(0.5);
  MarkovChain mc(1, m);
  Rng r(42);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += mc.rand(r) == 1;
  CHECK(std::abs(ones / double(n) - 0.5) < 0.01);
}

TEST_CASE("Markov chain state stays in 1..N") {
  Eigen::Matrix3d m;
  m << 0.1, 0.6, 0.3, 0.0, 0.0, 1.0, 0.5, 0.25, 0.25;
  MarkovChain mc(2, m);
  Rng r(9);
  for (int i = 0; i < 10000; ++i) {
    const int s = mc.rand(r);
    CHECK((s >= 1 && s <= 3));
    CHECK(s == mc.state());
  }
}

TEST_CASE("Markov chain construction errors") {
  auto code_of = [](int s, const Eigen::MatrixXd& m) {
    try {
      MarkovChain mc(s, m);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  Eigen::MatrixXd bad_row(2, 2);
  bad_row << 0.5, 0.4, 0.5, 0.5;
  CHECK(code_of(1, bad_row) == ErrorCode::DegenerateRow);
  CHECK(code_of(3, Eigen::MatrixXd::Identity(2, 2)) == ErrorCode::IndexOutOfRange);
  CHECK(code_of(1, Eigen::MatrixXd::Identity(2, 3)) == ErrorCode::DimensionMismatch);
  Eigen::MatrixXd negative(2, 2);
  negative << 1.5, -0.5, 0.5, 0.5;
  CHECK(code_of(1, negative) == ErrorCode::InvalidParameter);
}

TEST_CASE("sample_many") {
  Rng r(42);
  CHECK(sample_many(Normal(0, 1), r, 0).empty());

  auto g = sample_many(Gamma(10, 2), r, 100);
  CHECK(g.size() == 100);
  for (double x : g) CHECK(x > 0.0);

  auto xs = sample_many(Normal(50, 10), r, 1000);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / 1000.0;
  CHECK(std::abs(mean - 50.0) < 1.0);

  Rng a(5), b(5);
  const Poisson p(4.0);
  auto batch = sample_many(p, a, 50);
  for (double x : batch) CHECK(x == p.rand(b));
}
