#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distkit/error.hpp"
#include "distkit/rng.hpp"
#include "distkit/traits.hpp"

namespace distkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed extended-real interval [lower, upper] outside of which the density
// is exactly zero.
struct SupportBounds {
  double lower = -kInf;
  double upper = kInf;

  bool contains(double x) const noexcept { return x >= lower && x <= upper; }
};

// Integer view of a discrete support; `last` is INT64_MAX when unbounded.
struct IntegerRange {
  std::int64_t first = 0;
  std::int64_t last = std::numeric_limits<std::int64_t>::max();
};

// Family name plus its ordered parameter vector. Feeding it back through
// reconstruct() yields a distribution with identical behavior.
struct DistributionDescriptor {
  std::string family;
  std::vector<double> params;

  bool operator==(const DistributionDescriptor&) const = default;
};

class Distribution : public Sampleable {
 public:
  virtual std::string family() const = 0;
};

class UnivariateDistribution : public Distribution {
 public:
  VariateForm variate_form() const noexcept final { return VariateForm::Univariate; }

  // Density for continuous families, mass for discrete ones.
  virtual double pdf(double x) const = 0;
  // Families override this with a stable closed form.
  virtual double logpdf(double x) const;
  // P(X <= x), right-continuous at atoms.
  virtual double cdf(double x) const = 0;

  // Continuous: cdf(quantile(p)) == p. Discrete: smallest support point
  // with cdf >= p. Throws DomainError for p outside [0, 1].
  double quantile(double p) const;

  // Defaults to inverse-transform sampling.
  virtual double rand(Rng& rng) const;

  // Empty when the moment does not exist (Cauchy).
  virtual std::optional<double> mean() const = 0;
  virtual std::optional<double> var() const = 0;

  virtual bool has_cf() const noexcept { return false; }
  // E[exp(itX)]. Exactly 1 at t = 0. Throws Unsupported without a closed form.
  std::complex<double> cf(double t) const;

  virtual SupportBounds support() const = 0;
  virtual std::optional<IntegerRange> integer_support() const { return std::nullopt; }

  virtual DistributionDescriptor params() const = 0;

 protected:
  virtual double quantile_impl(double p) const = 0;
  virtual std::complex<double> cf_impl(double t) const;
};

class MultivariateDistribution : public Distribution {
 public:
  VariateForm variate_form() const noexcept final { return VariateForm::Multivariate; }

  virtual std::size_t dim() const noexcept = 0;
  virtual double logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;
  virtual double pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  virtual Eigen::VectorXd rand(Rng& rng) const = 0;
};

using DistributionPtr = std::shared_ptr<const Distribution>;
using UnivariatePtr = std::shared_ptr<const UnivariateDistribution>;
using MultivariatePtr = std::shared_ptr<const MultivariateDistribution>;

// quantile(d, u) for the next u in [0, 1) from rng.
double sample_fallback(const UnivariateDistribution& d, Rng& rng);

// ln(pdf(d, x)); -inf where the density vanishes.
double logpdf_fallback(const UnivariateDistribution& d, double x);

// Rebuilds a univariate family from its descriptor. Throws UnknownFamily or
// InvalidParameter.
UnivariatePtr reconstruct(const DistributionDescriptor& desc);

// Arity of a univariate family, or 0 for variadic families (Categorical).
std::size_t family_arity(const std::string& family);

}  // namespace distkit
