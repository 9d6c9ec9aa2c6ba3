#include <doctest.h>

#include <cmath>

#include "distkit/core.hpp"
#include "distkit/mixture.hpp"
#include "distkit/multivariate.hpp"
#include "distkit/univariate.hpp"
#include "oracles.hpp"

using namespace distkit;

TEST_CASE("variate form and value support tags") {
  CHECK(Normal(0, 1).variate_form() == VariateForm::Univariate);
  CHECK(Poisson(3).variate_form() == VariateForm::Univariate);
  CHECK(MvNormal(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity()).variate_form() == VariateForm::Multivariate);
  CHECK(Uniform(0, 1).value_support() == ValueSupport::Continuous);
  CHECK(Bernoulli(0.5).value_support() == ValueSupport::Discrete);
  UnivariateMixture m({std::make_shared<Normal>(0, 1), std::make_shared<Normal>(1, 2)}, {0.5, 0.5});
  CHECK(m.value_support() == ValueSupport::Continuous);
  CHECK(to_string(VariateForm::MatrixVariate) == "MatrixVariate");
  CHECK(to_string(ValueSupport::Discrete) == "Discrete");
}

TEST_CASE("params extracts the descriptor") {
  CHECK(Normal(50, 10).params() == DistributionDescriptor{"Normal", {50, 10}});
  CHECK(Uniform(2, 3).params() == DistributionDescriptor{"Uniform", {2, 3}});
  CHECK(Gamma(10, 2).params() == DistributionDescriptor{"Gamma", {10, 2}});
  CHECK(Triangular(-0.5, 0.5).params() == DistributionDescriptor{"Triangular", {-0.5, 0.5, 0.0}});
}

TEST_CASE("reconstruct round trip and errors") {
  auto n = reconstruct({"Normal", {0, 1}});
  CHECK(n->family() == "Normal");
  CHECK(n->pdf(0.0) == Normal(0, 1).pdf(0.0));
  auto c = reconstruct({"Categorical", {0.5, 0.5}});
  CHECK(c->pdf(1.0) == 0.5);
  CHECK(reconstruct({"Triangular", {-1, 1}})->params().params == std::vector<double>{-1, 1, 0});

  auto code_of = [](const DistributionDescriptor& d) {
    try {
      reconstruct(d);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of({"Normal", {0, -1}}) == ErrorCode::InvalidParameter);
  CHECK(code_of({"Normal", {0}}) == ErrorCode::InvalidParameter);
  CHECK(code_of({"Beta", {1, 1}}) == ErrorCode::UnknownFamily);
  CHECK(code_of({"Categorical", {0.6, 0.5}}) == ErrorCode::NotASimplex);
  CHECK(family_arity("Gamma") == 2);
  CHECK(family_arity("Categorical") == 0);
}

TEST_CASE("round trip is exact on 100-point grids for every case") {
  for (const auto& fc : oracle::family_cases()) {
    INFO(fc.label);
    auto again = reconstruct(fc.d->params());
    const double lo = fc.d->quantile(0.001), hi = fc.d->quantile(0.999);
    for (int i = 0; i < 100; ++i) {
      const double x = lo + (hi - lo) * i / 99.0;
      CHECK(again->pdf(x) == fc.d->pdf(x));
      CHECK(again->cdf(x) == fc.d->cdf(x));
    }
  }
}

TEST_CASE("sample_fallback equals quantile of the same uniform") {
  Rng a(7), b(7);
  for (const auto& fc : oracle::family_cases()) {
    INFO(fc.label);
    const double x = sample_fallback(*fc.d, a);
    const double u = b.uniform01();
    CHECK(x == fc.d->quantile(u));
  }
}

TEST_CASE("sample_fallback worked examples") {
  auto with_u = [](const UnivariateDistribution& d, double u) { return d.quantile(u); };
  CHECK(with_u(Uniform(0, 1), 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(with_u(Exponential(1), 0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(with_u(Normal(0, 1), 0.5) == 0.0);
}

TEST_CASE("logpdf_fallback") {
  CHECK(logpdf_fallback(Uniform(0, 1), 0.5) == 0.0);
  CHECK(logpdf_fallback(Uniform(0, 1), 2.0) == -std::numeric_limits<double>::infinity());
  CHECK(logpdf_fallback(Normal(0, 1), 0.0) == doctest::Approx(-0.9189385332046727).epsilon(1e-14));
}

TEST_CASE("quantile rejects p outside [0, 1]") {
  for (double p : {-0.1, 1.1, std::nan("")}) {
    try {
      Normal(0, 1).quantile(p);
      FAIL("expected DomainError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DomainError);
    }
  }
}

TEST_CASE("cf is exactly one at t = 0 and Unsupported without a closed form") {
  for (const auto& fc : oracle::family_cases()) {
    if (!fc.d->has_cf()) continue;
    CHECK(fc.d->cf(0.0) == std::complex<double>(1.0, 0.0));
  }
  try {
    LogNormal(0, 1).cf(1.0);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("support bounds and integer view") {
  CHECK(Uniform(2, 3).support().lower == 2.0);
  CHECK(Normal(0, 1).support().upper == kInf);
  CHECK(Poisson(2).integer_support()->first == 0);
  CHECK(Bernoulli(0.4).integer_support()->last == 1);
  CHECK(Categorical({0.2, 0.8}).integer_support()->last == 2);
  CHECK_FALSE(Normal(0, 1).integer_support().has_value());
}
