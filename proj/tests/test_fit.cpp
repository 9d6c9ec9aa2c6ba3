#include <doctest.h>

#include <cmath>
#include <numeric>

#include "distkit/fit.hpp"
#include "distkit/rng.hpp"

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

TEST_CASE("Normal MLE on 1000 draws from Normal(50, 10)") {
  const auto x = draws(Normal(50, 10), 1000, 42);
  const Normal f = fit_normal(x);
  CHECK(std::abs(f.mu() - 50.0) <= 1.0);
  CHECK(std::abs(f.sigma() - 10.0) <= 0.75);
  // Biased estimator, computed independently.
  const long double m = std::accumulate(x.begin(), x.end(), 0.0L) / 1000.0L;
  long double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  CHECK(f.mu() == doctest::Approx(static_cast<double>(m)).epsilon(1e-14));
  CHECK(f.sigma() == doctest::Approx(static_cast<double>(std::sqrt(ss / 1000.0L))).epsilon(1e-13));
}

TEST_CASE("closed-form worked examples") {
  const std::vector<double> e{1, 2, 3};
  CHECK(fit_exponential(e).scale() == 2.0);
  const std::vector<double> u{0.2, 0.5, 0.9};
  CHECK(fit_uniform(u).a() == 0.2);
  CHECK(fit_uniform(u).b() == 0.9);
  const std::vector<double> p{0, 1, 2, 5};
  CHECK(fit_poisson(p).lambda() == 2.0);
  const std::vector<double> b{0, 1, 1, 1};
  CHECK(fit_bernoulli(b).p() == 0.75);
  const std::vector<double> c{1, 3, 3, 2};
  CHECK(fit_categorical(c).probs() == std::vector<double>{0.25, 0.25, 0.5});
  const std::vector<double> ln{std::exp(1.0), std::exp(3.0)};
  CHECK(fit_lognormal(ln).mu() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fit_lognormal(ln).sigma() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("partial-information Normal fits") {
  const std::vector<double> x{1, 3};
  CHECK(fit_normal_fixed_mu(x, 2.0).sigma() == 1.0);
  CHECK(fit_normal_fixed_sigma(x, 1.0).mu() == 2.0);
  const auto y = draws(Normal(3, 2), 200, 1);
  const Normal free = fit_normal(y);
  CHECK(fit_normal_fixed_mu(y, free.mu()).sigma() == doctest::Approx(free.sigma()).epsilon(1e-14));

  FitRequest req{"Normal", x, {}, std::nullopt, {{"mu", 2.0}}};
  auto d = std::dynamic_pointer_cast<const Normal>(fit_mle(req));
  CHECK(d->sigma() == 1.0);
  req.fixed = {{"mu", 1.0}, {"sigma", 1.0}};
  CHECK(code_of([&] { fit_mle(req); }) == ErrorCode::InvalidParameter);
  req.fixed = {{"rate", 1.0}};
  CHECK(code_of([&] { fit_mle(req); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("fit errors") {
  const std::vector<double> same{4, 4, 4};
  CHECK(code_of([&] { fit_normal(same); }) == ErrorCode::DegenerateData);
  CHECK(code_of([&] { fit_uniform(same); }) == ErrorCode::DegenerateData);
  const std::vector<double> one{0.4};
  CHECK(code_of([&] { fit_uniform(one); }) == ErrorCode::DegenerateData);
  const std::vector<double> nonpos{1.0, 0.0, 2.0};
  CHECK(code_of([&] { fit_lognormal(nonpos); }) == ErrorCode::NonPositive);
  CHECK(code_of([&] { fit_exponential(nonpos); }) == ErrorCode::NonPositive);
  const std::vector<double> zeros{0, 0};
  CHECK(code_of([&] { fit_poisson(zeros); }) == ErrorCode::DegenerateData);
  const std::vector<double> frac{1.5, 2};
  CHECK(code_of([&] { fit_poisson(frac); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { fit_normal(std::vector<double>{}); }) == ErrorCode::EmptyData);
  const std::vector<double> w{0, 0, 0};
  CHECK(code_of([&] { fit_normal(nonpos, w); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { fit_mle(FitRequest{"Gamma", {1, 2}}); }) == ErrorCode::Unsupported);
}

TEST_CASE("integer weights reproduce the replicated-data fit") {
  const std::vector<double> x{0.3, 1.7, 2.2, 4.0, 5.5};
  const std::vector<double> w{1, 3, 2, 1, 4};
  std::vector<double> rep;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int k = 0; k < static_cast<int>(w[i]); ++k) rep.push_back(x[i]);

  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); };
  CHECK(near(fit_normal(x, w).mu(), fit_normal(rep).mu()));
  CHECK(near(fit_normal(x, w).sigma(), fit_normal(rep).sigma()));
  CHECK(near(fit_lognormal(x, w).mu(), fit_lognormal(rep).mu()));
  CHECK(near(fit_lognormal(x, w).sigma(), fit_lognormal(rep).sigma()));
  CHECK(near(fit_exponential(x, w).scale(), fit_exponential(rep).scale()));

  const std::vector<double> k{0, 2, 3, 1, 7};
  std::vector<double> krep;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (int j = 0; j < static_cast<int>(w[i]); ++j) krep.push_back(k[i]);
  CHECK(near(fit_poisson(k, w).lambda(), fit_poisson(krep).lambda()));

  Eigen::MatrixXd m(5, 2), mrep(static_cast<Eigen::Index>(rep.size()), 2);
  for (int i = 0; i < 5; ++i) m.row(i) << x[i], x[i] * x[i] - 2 * k[i];
  Eigen::Index r = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < static_cast<int>(w[i]); ++j) mrep.row(r++) = m.row(i);
  const MvNormal a = fit_mvnormal(m, w), b = fit_mvnormal(mrep);
  CHECK((a.mean() - b.mean()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a.cov() - b.cov()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("MvNormal MLE against direct formulas") {
  Eigen::Matrix2d s;
  s << 2.0, 0.5, 0.5, 1.0;
  MvNormal truth(Eigen::Vector2d(1, -1), s);
  Rng r(4);
  Eigen::MatrixXd x(300, 2);
  for (int i = 0; i < 300; ++i) x.row(i) = truth.rand(r).transpose();
  const MvNormal f = fit_mvnormal(x);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (int i = 0; i < 300; ++i) mean += x.row(i).transpose();
  mean /= 300.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 300; ++i) cov += (x.row(i).transpose() - mean) * (x.row(i).transpose() - mean).transpose();
  cov /= 300.0;
  CHECK((f.mean() - mean).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((f.cov() - cov).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd collinear(3, 2);
  collinear << 1, 2, 2, 4, 3, 6;
  CHECK(code_of([&] { fit_mvnormal(collinear); }) == ErrorCode::DegenerateData);
}

TEST_CASE("loglikelihood") {
  const std::vector<double> in{0.1, 0.5, 1.0};
  CHECK(loglikelihood(Uniform(0, 1), in) == 0.0);
  const std::vector<double> zero{0.0};
  CHECK(loglikelihood(Normal(0, 1), zero) == doctest::Approx(-0.9189385332).epsilon(1e-10));
  const auto x = draws(Normal(0, 1), 20, 2);
  const std::vector<double> ones(20, 1.0);
  CHECK(loglikelihood(Normal(0.3, 1.2), x, ones) == loglikelihood(Normal(0.3, 1.2), x));
  const std::vector<double> out{0.5, 2.0};
  CHECK(loglikelihood(Uniform(0, 1), out) == -kInf);
}

TEST_CASE("numeric gradient") {
  auto quad = [](std::span<const double> p) { return 0.5 * (p[0] * p[0] + p[1] * p[1]); };
  const std::vector<double> p{1.0, 2.0};
  const auto g = numeric_gradient(quad, p);
  CHECK(std::abs(g[0] - 1.0) < 1e-8);
  CHECK(std::abs(g[1] - 2.0) < 1e-8);
  const auto z = numeric_gradient([](std::span<const double>) { return 3.0; }, p);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
  CHECK(code_of([&] {
          numeric_gradient([](std::span<const double> q) { return std::log(q[0] - 1.0); }, p);
        }) == ErrorCode::NonFinite);

  // Analytic Normal score: d/dmu = sum (x - mu) / s^2, d/ds = -n/s + sum (x - mu)^2 / s^3.
  Rng r(5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = draws(Normal(2, 3), 50, 100 + rep);
    const double mu = 4 * r.uniform01(), s = 1 + 3 * r.uniform01();
    double gm = 0, gs = -50.0 / s;
    for (double v : x) {
      gm += (v - mu) / (s * s);
      gs += (v - mu) * (v - mu) / (s * s * s);
    }
    auto ll = [&](std::span<const double> q) { return loglikelihood(Normal(q[0], q[1]), x); };
    const std::vector<double> at{mu, s};
    const auto ng = numeric_gradient(ll, at);
    CHECK(std::abs(ng[0] - gm) < 1e-6 * std::max(1.0, std::abs(gm)));
    CHECK(std::abs(ng[1] - gs) < 1e-6 * std::max(1.0, std::abs(gs)));
  }
}

TEST_CASE("closed-form fits are stationary and locally optimal") {
  struct Case {
    std::string name;
    DistributionPtr fitted;
    std::vector<double> data;
  };
  std::vector<Case> cases;
  auto add = [&](const std::string& fam, const UnivariateDistribution& truth, std::size_t n) {
    auto x = draws(truth, n, 77);
    cases.push_back({fam, fit_mle(FitRequest{fam, x}), x});
  };
  add("Normal", Normal(50, 10), 1000);
  add("LogNormal", LogNormal(0.5, 0.6), 500);
  add("Exponential", Exponential(2), 500);
  add("Poisson", Poisson(4), 500);
  add("Bernoulli", Bernoulli(0.3), 500);

  for (const auto& c : cases) {
    INFO(c.name);
    const auto& d = static_cast<const UnivariateDistribution&>(*c.fitted);
    const auto params = d.params().params;
    auto ll = [&](std::span<const double> q) {
      try {
        return loglikelihood(*reconstruct({c.name, std::vector<double>(q.begin(), q.end())}), c.data);
      } catch (const Error&) {
        return -kInf;
      }
    };
    const double l = ll(params);
    const auto g = numeric_gradient(ll, params);
    for (double gi : g) CHECK(std::abs(gi) <= 1e-5 * (1.0 + std::abs(l)));
    for (std::size_t i = 0; i < params.size(); ++i)
      for (double f : {0.99, 1.01}) {
        auto q = params;
        q[i] *= f;
        CHECK(ll(q) <= l);
      }
  }
}

TEST_CASE("gradient ascent on a Normal x Normal product reaches the closed form") {
  Rng r(21);
  const int n = 178;
  Eigen::MatrixXd data(n, 2);
  for (int i = 0; i < n; ++i) data.row(i) << Normal(13, 0.8).rand(r), Normal(2.3, 1.1).rand(r);
  const ProductSpec spec = make_product_spec({"Normal", "Normal"});
  GradientAscentConfig cfg;
  cfg.scale_indices = spec.scale_indices;
  cfg.init = std::vector<double>{12.0, 1.0, 2.0, 1.0};
  const auto res = gradient_ascent_mle(spec.builder, data, cfg, r);

  for (int j = 0; j < 2; ++j) {
    std::vector<double> col(data.col(j).data(), data.col(j).data() + n);
    const Normal f = fit_normal(col);
    CHECK(std::abs(res.params[2 * j] - f.mu()) < 1e-3);
    CHECK(std::abs(res.params[2 * j + 1] - f.sigma()) < 1e-3);
  }
  CHECK(res.iterations < cfg.max_iter);
  CHECK(res.loglike_trace.back() >= res.loglike_trace.front());
}

TEST_CASE("gradient ascent returns the start when already stationary") {
  Rng r(2);
  const int n = 100;
  Eigen::MatrixXd data(n, 1);
  for (int i = 0; i < n; ++i) data(i, 0) = Normal(1, 2).rand(r);
  std::vector<double> col(data.data(), data.data() + n);
  const Normal f = fit_normal(col);
  const ProductSpec spec = make_product_spec({"Normal"});
  GradientAscentConfig cfg;
  cfg.scale_indices = spec.scale_indices;
  cfg.grad_tol = 1e-3;
  cfg.init = std::vector<double>{f.mu(), f.sigma()};
  const auto res = gradient_ascent_mle(spec.builder, data, cfg, r);
  CHECK(res.iterations == 0);
  CHECK(res.params == *cfg.init);
}

TEST_CASE("gradient ascent reflects negative scales") {
  Rng r(6);
  const int n = 200;
  Eigen::MatrixXd data(n, 1);
  for (int i = 0; i < n; ++i) data(i, 0) = Normal(0, 0.5).rand(r);
  const ProductSpec spec = make_product_spec({"Normal"});
  GradientAscentConfig cfg;
  cfg.scale_indices = spec.scale_indices;
  cfg.rho0 = 1.0;
  cfg.init = std::vector<double>{3.0, 3.0};
  const auto res = gradient_ascent_mle(spec.builder, data, cfg, r);
  CHECK(res.params[1] > 0.0);
  CHECK(std::isfinite(res.loglike_trace.back()));
}

TEST_CASE("default product start follows the randomized box") {
  Rng r(1);
  for (int i = 0; i < 100; ++i) {
    const auto p = default_product_init(r);
    CHECK((p[0] >= 10 && p[0] < 13));
    CHECK((p[1] >= 1 && p[1] < 2));
    CHECK((p[2] >= 2 && p[2] < 5));
    CHECK((p[3] >= 1 && p[3] < 2));
  }
}
