#pragma once

#include <vector>

#include "distkit/core.hpp"

namespace distkit {

// Continuous uniform on the closed interval [a, b], a < b.
class Uniform final : public UnivariateDistribution {
 public:
  Uniform(double a = 0.0, double b = 1.0);

  std::string family() const override { return "Uniform"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override { return 0.5 * (a_ + b_); }
  std::optional<double> var() const override { return (b_ - a_) * (b_ - a_) / 12.0; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {a_, b_}; }
  DistributionDescriptor params() const override { return {"Uniform", {a_, b_}}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double a_, b_;
};

class Normal final : public UnivariateDistribution {
 public:
  Normal(double mu = 0.0, double sigma = 1.0);

  std::string family() const override { return "Normal"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  // Inverse transform on an open-interval uniform.
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override { return mu_; }
  std::optional<double> var() const override { return sigma_ * sigma_; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {}; }
  DistributionDescriptor params() const override { return {"Normal", {mu_, sigma_}}; }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double mu_, sigma_;
};

// exp(Normal(mu, sigma)); mu and sigma are log-scale parameters.
class LogNormal final : public UnivariateDistribution {
 public:
  LogNormal(double mu = 0.0, double sigma = 1.0);

  std::string family() const override { return "LogNormal"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override;
  std::optional<double> var() const override;
  SupportBounds support() const override { return {0.0, kInf}; }
  DistributionDescriptor params() const override { return {"LogNormal", {mu_, sigma_}}; }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 protected:
  double quantile_impl(double p) const override;

 private:
  double mu_, sigma_;
};

// Shape k, scale theta. Sampled with Marsaglia-Tsang rejection.
class Gamma final : public UnivariateDistribution {
 public:
  Gamma(double shape = 1.0, double scale = 1.0);

  std::string family() const override { return "Gamma"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override { return shape_ * scale_; }
  std::optional<double> var() const override { return shape_ * scale_ * scale_; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {0.0, kInf}; }
  DistributionDescriptor params() const override { return {"Gamma", {shape_, scale_}}; }

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

 protected:
  // Bracketed Newton with bisection fallback.
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double shape_, scale_;
  double log_norm_;  // lgamma(k) + k ln(theta)
};

class Exponential final : public UnivariateDistribution {
 public:
  explicit Exponential(double scale = 1.0);

  std::string family() const override { return "Exponential"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  std::optional<double> mean() const override { return scale_; }
  std::optional<double> var() const override { return scale_ * scale_; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {0.0, kInf}; }
  DistributionDescriptor params() const override { return {"Exponential", {scale_}}; }

  double scale() const noexcept { return scale_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double scale_;
};

// Location x0, scale gamma. Has no mean and no variance.
class Cauchy final : public UnivariateDistribution {
 public:
  Cauchy(double x0 = 0.0, double gamma = 1.0);

  std::string family() const override { return "Cauchy"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  std::optional<double> mean() const override { return std::nullopt; }
  std::optional<double> var() const override { return std::nullopt; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {}; }
  DistributionDescriptor params() const override { return {"Cauchy", {x0_, gamma_}}; }

  double location() const noexcept { return x0_; }
  double scale() const noexcept { return gamma_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double x0_, gamma_;
};

// Lower limit a, upper limit b, mode c with a <= c <= b and a < b.
class Triangular final : public UnivariateDistribution {
 public:
  Triangular(double a, double b);
  Triangular(double a, double b, double c);

  std::string family() const override { return "Triangular"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  std::optional<double> mean() const override { return (a_ + b_ + c_) / 3.0; }
  std::optional<double> var() const override;
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {a_, b_}; }
  DistributionDescriptor params() const override { return {"Triangular", {a_, b_, c_}}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double a_, b_, c_;
};

// Sequential-search inversion for lambda <= 30, Hormann's PTRS above.
class Poisson final : public UnivariateDistribution {
 public:
  explicit Poisson(double lambda = 1.0);

  std::string family() const override { return "Poisson"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Discrete; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override { return lambda_; }
  std::optional<double> var() const override { return lambda_; }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {0.0, kInf}; }
  std::optional<IntegerRange> integer_support() const override { return IntegerRange{0}; }
  DistributionDescriptor params() const override { return {"Poisson", {lambda_}}; }

  double lambda() const noexcept { return lambda_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double lambda_;
};

class Bernoulli final : public UnivariateDistribution {
 public:
  explicit Bernoulli(double p = 0.5);

  std::string family() const override { return "Bernoulli"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Discrete; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override { return p_; }
  std::optional<double> var() const override { return p_ * (1.0 - p_); }
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override { return {0.0, 1.0}; }
  std::optional<IntegerRange> integer_support() const override { return IntegerRange{0, 1}; }
  DistributionDescriptor params() const override { return {"Bernoulli", {p_}}; }

  double p() const noexcept { return p_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  double p_;
};

// Discrete over 1..K with weights on the unit simplex.
class Categorical final : public UnivariateDistribution {
 public:
  explicit Categorical(std::vector<double> probs);

  std::string family() const override { return "Categorical"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Discrete; }
  double pdf(double x) const override;
  double logpdf(double x) const override;
  double cdf(double x) const override;
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override;
  std::optional<double> var() const override;
  bool has_cf() const noexcept override { return true; }
  SupportBounds support() const override;
  std::optional<IntegerRange> integer_support() const override;
  DistributionDescriptor params() const override { return {"Categorical", probs_}; }

  std::size_t ncategories() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

}  // namespace distkit
