#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "distkit/mixture.hpp"
#include "distkit/nonparam.hpp"
#include "distkit/rng.hpp"
#include "distkit/univariate.hpp"
#include "oracles.hpp"

using namespace distkit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::vector<double> draws(const UnivariateDistribution& d, std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  std::vector<double> x(n);
  for (double& v : x) v = d.rand(r);
  return x;
}

}  // namespace

TEST_CASE("ecdf counting") {
  const std::vector<double> x{1, 2, 3};
  const Ecdf e = ecdf(x);
  CHECK(ecdf_eval(e, 2.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(ecdf_eval(e, 0.5) == 0.0);
  CHECK(ecdf_eval(e, 3.0) == 1.0);
  CHECK(ecdf_eval(e, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const std::vector<double> w{1, 1, 2};
  CHECK(ecdf_eval(ecdf(x, w), 2.5) == 0.5);
  CHECK(code_of([] { ecdf(std::vector<double>{}); }) == ErrorCode::EmptyData);
}

TEST_CASE("ecdf is a valid cdf close to the truth") {
  const auto x = draws(Uniform(0, 1), 10000, 42);
  const Ecdf e = ecdf(x);
  double prev = 0.0, dmax = 0.0;
  for (int i = -10; i <= 1010; ++i) {
    const double t = i / 1000.0;
    const double F = e(t);
    CHECK(F >= prev);
    CHECK((F >= 0.0 && F <= 1.0));
    prev = F;
  }
  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    dmax = std::max(dmax, std::abs(e(sorted[i]) - sorted[i]));
    CHECK(e(sorted[i]) == doctest::Approx((i + 1) / 10000.0).epsilon(1e-12));
  }
  CHECK(dmax < oracle::ks_critical(10000, 0.001));
}

TEST_CASE("histogram closed sides") {
  const std::vector<double> x{0.1, 0.5, 0.9};
  BinSpec spec;
  spec.edges = std::vector<double>{0, 0.5, 1};
  CHECK(histogram_fit(x, spec).counts == std::vector<double>{2, 1});
  CHECK(histogram_fit(x, spec, Closed::Left).counts == std::vector<double>{1, 2});
  const std::vector<double> far{5, 6};
  const Histogram h = histogram_fit(far, spec);
  CHECK(h.counts == std::vector<double>{0, 0});
  CHECK(h.total == 0.0);
}

TEST_CASE("histogram with a bin count covers every point") {
  const auto x = draws(Normal(0, 1), 1000, 3);
  BinSpec spec;
  spec.nbins = 7;
  for (Closed c : {Closed::Right, Closed::Left}) {
    const Histogram h = histogram_fit(x, spec, c);
    CHECK(h.nbins() == 7);
    CHECK(h.edges.size() == 8);
    double s = 0;
    for (double v : h.counts) s += v;
    CHECK(s == 1000.0);
    CHECK(h.total == 1000.0);
    CHECK(h.edges.front() == *std::min_element(x.begin(), x.end()));
    CHECK(h.edges.back() == *std::max_element(x.begin(), x.end()));
  }
}

TEST_CASE("histogram invariants: permutation and weight additivity") {
  auto x = draws(Exponential(1), 300, 4);
  BinSpec spec;
  spec.edges = std::vector<double>{0, 0.25, 0.5, 1, 2, 4};
  const Histogram a = histogram_fit(x, spec);
  std::reverse(x.begin(), x.end());
  CHECK(histogram_fit(x, spec).counts == a.counts);

  Rng r(1);
  std::vector<double> w1(x.size()), w2(x.size()), w12(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    w1[i] = std::floor(4 * r.uniform01());
    w2[i] = std::floor(4 * r.uniform01());
    w12[i] = w1[i] + w2[i];
  }
  const auto h1 = histogram_fit(x, spec, Closed::Right, w1);
  const auto h2 = histogram_fit(x, spec, Closed::Right, w2);
  const auto h12 = histogram_fit(x, spec, Closed::Right, w12);
  for (std::size_t b = 0; b < h12.nbins(); ++b) CHECK(h12.counts[b] == h1.counts[b] + h2.counts[b]);
}

TEST_CASE("histogram errors") {
  const std::vector<double> x{1, 2};
  BinSpec spec;
  spec.edges = std::vector<double>{0, 1, 1};
  CHECK(code_of([&] { histogram_fit(x, spec); }) == ErrorCode::BadEdges);
  spec.edges = std::vector<double>{0};
  CHECK(code_of([&] { histogram_fit(x, spec); }) == ErrorCode::BadEdges);
  BinSpec zero;
  zero.nbins = 0;
  CHECK(code_of([&] { histogram_fit(x, zero); }) == ErrorCode::BadEdges);
}

TEST_CASE("silverman bandwidth") {
  const auto x = draws(Normal(0, 1), 1000, 42);
  const double h = silverman_bandwidth(x);
  CHECK(std::abs(h - 0.9 * std::pow(1000.0, -0.2)) < 0.02);
  auto scaled = x;
  for (double& v : scaled) v *= 3.5;
  CHECK(silverman_bandwidth(scaled) == doctest::Approx(3.5 * h).epsilon(1e-13));
  const std::vector<double> c{2, 2, 2, 2};
  CHECK(code_of([&] { silverman_bandwidth(c); }) == ErrorCode::DegenerateData);
  CHECK(code_of([] { silverman_bandwidth(std::vector<double>{1.0}); }) == ErrorCode::DegenerateData);
}

TEST_CASE("type-7 quantiles") {
  const std::vector<double> s{1, 2, 3, 4};
  CHECK(sorted_quantile(s, 0.25) == 1.75);
  CHECK(sorted_quantile(s, 0.5) == 2.5);
  CHECK(sorted_quantile(s, 1.0) == 4.0);
}

TEST_CASE("kde of a single point reproduces the kernel") {
  const std::vector<double> x{0.0};
  KdeOptions o;
  o.bandwidth = 1.0;
  const KdeEstimate k = kde(x, o);
  CHECK(k.x.size() == 2048);
  CHECK(k.bandwidth == 1.0);
  double worst = 0;
  for (std::size_t i = 0; i < k.x.size(); ++i) {
    const double z = k.x[i];
    worst = std::max(worst, std::abs(k.density[i] - std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("kde FFT path matches direct summation over the binned data") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto x = draws(Gamma(3, 1), 200, seed);
    KdeOptions o;
    o.bandwidth = 0.3;
    const KdeEstimate k = kde(x, o);
    const auto direct = oracle::binned_direct_kde(x, k.x, 0.3);
    double sup = 0;
    for (std::size_t i = 0; i < direct.size(); ++i) sup = std::max(sup, std::abs(direct[i] - k.density[i]));
    CHECK(sup < 1e-8);
  }
  const auto y = draws(Normal(0, 1), 500, 9);
  const KdeEstimate k = kde(y);
  const auto direct = oracle::binned_direct_kde(y, k.x, k.bandwidth);
  double sup = 0;
  for (std::size_t i = 0; i < direct.size(); ++i) sup = std::max(sup, std::abs(direct[i] - k.density[i]));
  CHECK(sup < 1e-8);
}

TEST_CASE("kde estimates integrate to one and stay non-negative") {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const auto x = draws(Gamma(2, 1), 500, seed);
    for (double h : {0.05, 0.3, 2.0}) {
      KdeOptions o;
      o.bandwidth = h;
      const KdeEstimate k = kde(x, o);
      CHECK(std::abs(oracle::trapezoid(k.x, k.density) - 1.0) < 1e-3);
      for (double v : k.density) CHECK(v >= 0.0);
    }
  }
  // Heavy tails stretch the grid until the spacing exceeds the bandwidth.
  // The node sum still carries unit mass; the trapezoid rule then halves
  // whatever sits on the two end nodes.
  const auto c = draws(Cauchy(0, 1), 400, 5);
  for (double h : {0.05, 0.3, 2.0}) {
    KdeOptions o;
    o.bandwidth = h;
    const KdeEstimate k = kde(c, o);
    const double step = k.x[1] - k.x[0];
    double riemann = 0;
    for (double v : k.density) riemann += v * step;
    CHECK(std::abs(riemann - 1.0) < 1e-3);
    if (step < h) CHECK(std::abs(oracle::trapezoid(k.x, k.density) - 1.0) < 1e-3);
    for (double v : k.density) CHECK(v >= 0.0);
  }
  KdeOptions tri;
  tri.kernel = std::make_shared<Triangular>(-0.5, 0.5);
  const KdeEstimate t = kde(draws(Normal(0, 1), 1000, 6), tri);
  CHECK(std::abs(oracle::trapezoid(t.x, t.density) - 1.0) < 1e-3);
  for (double v : t.density) CHECK(v >= 0.0);
}

TEST_CASE("smaller bandwidth wins on the LogNormal plus Uniform mixture") {
  auto mix = std::make_shared<UnivariateMixture>(
      std::vector<UnivariatePtr>{std::make_shared<LogNormal>(0, 1), std::make_shared<Uniform>(2, 3)},
      std::vector<double>{0.5, 0.5});
  const auto x = draws(*mix, 5000, 42);
  auto l1 = [&](double h) {
    KdeOptions o;
    o.bandwidth = h;
    const KdeEstimate k = kde(x, o);
    double s = 0;
    const int m = 8000;
    for (int i = 0; i < m; ++i) {
      const double t = 8.0 * (i + 0.5) / m;
      s += std::abs(kde_eval(k, t) - mix->pdf(t)) * 8.0 / m;
    }
    return s;
  };
  CHECK(l1(0.1) < l1(0.5));
}

TEST_CASE("triangular kernel of matched spread stays close to the Gaussian") {
  const auto x = draws(Normal(0, 1), 2000, 8);
  KdeOptions g;
  g.bandwidth = 0.3;
  KdeOptions t;
  const double half = 0.3 * std::sqrt(6.0);  // sd of Triangular(-a, a) is a / sqrt(6)
  t.kernel = std::make_shared<Triangular>(-half, half);
  const KdeEstimate kg = kde(x, g), kt = kde(x, t);
  double sup = 0;
  for (int i = 0; i <= 400; ++i) {
    const double z = -4 + 8.0 * i / 400;
    sup = std::max(sup, std::abs(kde_eval(kg, z) - kde_eval(kt, z)));
  }
  CHECK(sup < 0.05);
}

TEST_CASE("kde errors") {
  const std::vector<double> x{1, 2, 3};
  KdeOptions bad;
  bad.bandwidth = -1;
  CHECK(code_of([&] { kde(x, bad); }) == ErrorCode::BadBandwidth);
  bad.bandwidth = 0;
  CHECK(code_of([&] { kde(x, bad); }) == ErrorCode::BadBandwidth);
  KdeOptions nocf;
  nocf.kernel = std::make_shared<LogNormal>(0, 1);
  CHECK(code_of([&] { kde(x, nocf); }) == ErrorCode::NoCharacteristicFunction);
  CHECK(code_of([] { kde(std::vector<double>{}); }) == ErrorCode::EmptyData);
}

TEST_CASE("kde_eval interpolation") {
  const auto x = draws(Normal(0, 1), 100, 2);
  const KdeEstimate k = kde(x);
  CHECK(kde_eval(k, k.x[100]) == k.density[100]);
  CHECK(kde_eval(k, 0.5 * (k.x[700] + k.x[701])) ==
        doctest::Approx(0.5 * (k.density[700] + k.density[701])).epsilon(1e-12));
  CHECK(kde_eval(k, k.x.front() - 1.0) == 0.0);
  CHECK(kde_eval(k, k.x.back() + 1.0) == 0.0);
}

TEST_CASE("kde2d of a single point is the product kernel") {
  const std::vector<double> x{0.0}, y{1.0};
  Kde2dOptions o;
  o.bandwidth_x = 1.0;
  o.bandwidth_y = 0.5;
  const Kde2dEstimate k = kde2d(x, y, o);
  double worst = 0;
  for (std::size_t i = 0; i < k.x.size(); i += 7)
    for (std::size_t j = 0; j < k.y.size(); j += 5) {
      const double zx = k.x[i], zy = (k.y[j] - 1.0) / 0.5;
      const double expected = std::exp(-0.5 * (zx * zx + zy * zy)) / (2 * M_PI * 0.5);
      worst = std::max(worst, std::abs(k.density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("kde2d on independent normals") {
  const auto x = draws(Normal(0, 1), 5000, 10);
  const auto y = draws(Normal(0, 1), 5000, 11);
  const Kde2dEstimate k = kde2d(x, y);
  Eigen::Index i = 0, j = 0;
  k.density.maxCoeff(&i, &j);
  CHECK(std::hypot(k.x[static_cast<std::size_t>(i)], k.y[static_cast<std::size_t>(j)]) < 0.2);
  double total = 0;
  const double dx = k.x[1] - k.x[0], dy = k.y[1] - k.y[0];
  for (Eigen::Index a = 0; a < k.density.rows(); ++a)
    for (Eigen::Index b = 0; b < k.density.cols(); ++b) total += k.density(a, b) * dx * dy;
  CHECK(std::abs(total - 1.0) < 1e-2);
  CHECK(kde2d_eval(k, k.x[10], k.y[20]) == k.density(10, 20));
  CHECK(kde2d_eval(k, 100.0, 0.0) == 0.0);
}
