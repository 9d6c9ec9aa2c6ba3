#include "distkit/univariate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "distkit/special.hpp"

namespace distkit {

namespace {

using special::kPi;
using cplx = std::complex<double>;

void require(bool ok, const std::string& family, const std::string& constraint) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, family + ": requires " + constraint);
}

bool finite(double x) { return std::isfinite(x); }

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

double standard_normal(Rng& rng) { return special::normal_quantile(rng.uniform_open01()); }

// sin(x) / x, accurate near 0.
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

// ---------------------------------------------------------------- Uniform

Uniform::Uniform(double a, double b) : a_(a), b_(b) {
  require(finite(a) && finite(b) && a < b, "Uniform", "finite a < b");
}

double Uniform::pdf(double x) const { return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0; }

double Uniform::logpdf(double x) const { return (x >= a_ && x <= b_) ? -std::log(b_ - a_) : -kInf; }

double Uniform::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  return (x - a_) / (b_ - a_);
}

double Uniform::quantile_impl(double p) const {
  if (p == 1.0) return b_;
  return a_ + p * (b_ - a_);
}

double Uniform::rand(Rng& rng) const { return quantile_impl(rng.uniform01()); }

std::complex<double> Uniform::cf_impl(double t) const {
  const double mid = 0.5 * (a_ + b_);
  const double half = 0.5 * (b_ - a_);
  return std::polar(sinc(t * half), t * mid);
}

// ---------------------------------------------------------------- Normal

Normal::Normal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(finite(mu), "Normal", "finite mu");
  require(finite(sigma) && sigma > 0.0, "Normal", "sigma > 0");
}

double Normal::pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return special::kInvSqrt2Pi / sigma_ * std::exp(-0.5 * z * z);
}

double Normal::logpdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return -0.5 * z * z - std::log(sigma_) - special::kLogSqrt2Pi;
}

double Normal::cdf(double x) const { return special::normal_cdf((x - mu_) / sigma_); }

double Normal::quantile_impl(double p) const { return mu_ + sigma_ * special::normal_quantile(p); }

double Normal::rand(Rng& rng) const { return mu_ + sigma_ * standard_normal(rng); }

std::complex<double> Normal::cf_impl(double t) const {
  return std::polar(std::exp(-0.5 * sigma_ * sigma_ * t * t), mu_ * t);
}

// ---------------------------------------------------------------- LogNormal

LogNormal::LogNormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(finite(mu), "LogNormal", "finite mu");
  require(finite(sigma) && sigma > 0.0, "LogNormal", "sigma > 0");
}

double LogNormal::pdf(double x) const {
  if (!(x > 0.0) || std::isinf(x)) return 0.0;
  return std::exp(logpdf(x));
}

double LogNormal::logpdf(double x) const {
  if (!(x > 0.0) || std::isinf(x)) return -kInf;
  const double lx = std::log(x);
  const double z = (lx - mu_) / sigma_;
  return -0.5 * z * z - std::log(sigma_) - special::kLogSqrt2Pi - lx;
}

double LogNormal::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  return special::normal_cdf((std::log(x) - mu_) / sigma_);
}

double LogNormal::quantile_impl(double p) const {
  return std::exp(mu_ + sigma_ * special::normal_quantile(p));
}

double LogNormal::rand(Rng& rng) const { return std::exp(mu_ + sigma_ * standard_normal(rng)); }

std::optional<double> LogNormal::mean() const { return std::exp(mu_ + 0.5 * sigma_ * sigma_); }

std::optional<double> LogNormal::var() const {
  const double s2 = sigma_ * sigma_;
  return std::expm1(s2) * std::exp(2.0 * mu_ + s2);
}

// ---------------------------------------------------------------- Gamma

Gamma::Gamma(double shape, double scale) : shape_(shape), scale_(scale) {
  require(finite(shape) && shape > 0.0, "Gamma", "shape > 0");
  require(finite(scale) && scale > 0.0, "Gamma", "scale > 0");
  log_norm_ = std::lgamma(shape_) + shape_ * std::log(scale_);
}

double Gamma::pdf(double x) const {
  if (x < 0.0 || std::isinf(x)) return 0.0;
  if (x == 0.0) {
    if (shape_ < 1.0) return kInf;
    return shape_ == 1.0 ? 1.0 / scale_ : 0.0;
  }
  return std::exp(logpdf(x));
}

double Gamma::logpdf(double x) const {
  if (x < 0.0 || std::isinf(x)) return -kInf;
  if (x == 0.0) {
    if (shape_ < 1.0) return kInf;
    return shape_ == 1.0 ? -std::log(scale_) : -kInf;
  }
  return (shape_ - 1.0) * std::log(x) - x / scale_ - log_norm_;
}

double Gamma::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return special::gamma_p(shape_, x / scale_);
}

double Gamma::quantile_impl(double p) const {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return kInf;

  // Work on the unit-scale variable y = x / scale.
  const double k = shape_;
  const double z = special::normal_quantile(p);
  double y = k * std::pow(1.0 - 1.0 / (9.0 * k) + z / (3.0 * std::sqrt(k)), 3);
  if (!(y > 0.0)) y = std::pow(p * std::tgamma(k + 1.0), 1.0 / k);
  if (!(y > 0.0) || !std::isfinite(y)) y = k;

  double lo = 0.0;
  double hi = kInf;
  const double log_gamma_k = std::lgamma(k);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = special::gamma_p(k, y) - p;
    if (f == 0.0) break;
    if (f < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    const double dens = std::exp((k - 1.0) * std::log(y) - y - log_gamma_k);
    double next = (dens > 0.0 && std::isfinite(dens)) ? y - f / dens : kInf;
    if (!(next > lo && next < hi)) next = std::isinf(hi) ? 2.0 * y : 0.5 * (lo + hi);
    const double step = std::abs(next - y);
    y = next;
    if (step <= 1e-13 * y || (std::isfinite(hi) && hi - lo <= 1e-15 * hi)) break;
  }
  return y * scale_;
}

double Gamma::rand(Rng& rng) const {
  // Marsaglia & Tsang; shapes below one are boosted through U^(1/k).
  double k = shape_;
  double boost = 1.0;
  if (k < 1.0) {
    boost = std::pow(rng.uniform_open01(), 1.0 / k);
    k += 1.0;
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = standard_normal(rng);
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open01();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v * scale_ * boost;
  }
}

std::complex<double> Gamma::cf_impl(double t) const {
  return std::exp(-shape_ * std::log(cplx(1.0, -scale_ * t)));
}

// ---------------------------------------------------------------- Exponential

Exponential::Exponential(double scale) : scale_(scale) {
  require(finite(scale) && scale > 0.0, "Exponential", "scale > 0");
}

double Exponential::pdf(double x) const {
  return (x >= 0.0 && !std::isinf(x)) ? std::exp(-x / scale_) / scale_ : 0.0;
}

double Exponential::logpdf(double x) const {
  return (x >= 0.0 && !std::isinf(x)) ? -x / scale_ - std::log(scale_) : -kInf;
}

double Exponential::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / scale_); }

double Exponential::quantile_impl(double p) const { return -scale_ * std::log1p(-p); }

std::complex<double> Exponential::cf_impl(double t) const { return 1.0 / cplx(1.0, -scale_ * t); }

// ---------------------------------------------------------------- Cauchy

Cauchy::Cauchy(double x0, double gamma) : x0_(x0), gamma_(gamma) {
  require(finite(x0), "Cauchy", "finite x0");
  require(finite(gamma) && gamma > 0.0, "Cauchy", "gamma > 0");
}

double Cauchy::pdf(double x) const {
  const double z = (x - x0_) / gamma_;
  return 1.0 / (kPi * gamma_ * (1.0 + z * z));
}

double Cauchy::logpdf(double x) const {
  const double z = (x - x0_) / gamma_;
  return -std::log(kPi * gamma_) - std::log1p(z * z);
}

double Cauchy::cdf(double x) const { return 0.5 + std::atan((x - x0_) / gamma_) / kPi; }

double Cauchy::quantile_impl(double p) const {
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  return x0_ + gamma_ * std::tan(kPi * (p - 0.5));
}

std::complex<double> Cauchy::cf_impl(double t) const {
  return std::polar(std::exp(-gamma_ * std::abs(t)), x0_ * t);
}

// ---------------------------------------------------------------- Triangular

Triangular::Triangular(double a, double b) : Triangular(a, b, 0.5 * (a + b)) {}

Triangular::Triangular(double a, double b, double c) : a_(a), b_(b), c_(c) {
  require(finite(a) && finite(b) && finite(c) && a < b && a <= c && c <= b, "Triangular",
          "a <= c <= b with a < b");
}

double Triangular::pdf(double x) const {
  if (x < a_ || x > b_) return 0.0;
  const double w = b_ - a_;
  if (x < c_) return 2.0 * (x - a_) / (w * (c_ - a_));
  if (x == c_) return 2.0 / w;
  return 2.0 * (b_ - x) / (w * (b_ - c_));
}

double Triangular::logpdf(double x) const { return std::log(pdf(x)); }

double Triangular::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  const double w = b_ - a_;
  if (x <= c_) return (x - a_) * (x - a_) / (w * (c_ - a_));
  return 1.0 - (b_ - x) * (b_ - x) / (w * (b_ - c_));
}

double Triangular::quantile_impl(double p) const {
  const double w = b_ - a_;
  const double pc = (c_ - a_) / w;
  if (p <= pc) return a_ + std::sqrt(p * w * (c_ - a_));
  return b_ - std::sqrt((1.0 - p) * w * (b_ - c_));
}

std::optional<double> Triangular::var() const {
  return (a_ * a_ + b_ * b_ + c_ * c_ - a_ * b_ - a_ * c_ - b_ * c_) / 18.0;
}

std::complex<double> Triangular::cf_impl(double t) const {
  // The density is piecewise linear; integrate exp(itx) against each piece
  // after centering on the mean.
  const double mu = (a_ + b_ + c_) / 3.0;
  const double w = b_ - a_;
  const double peak = 2.0 / w;
  struct Segment {
    double x0, x1, y0, y1;
  };
  std::array<Segment, 2> segments{Segment{a_ - mu, c_ - mu, 0.0, peak},
                                  Segment{c_ - mu, b_ - mu, peak, 0.0}};

  cplx centered{0.0, 0.0};
  if (std::abs(t) * w < 0.1) {
    // Taylor series sum (it)^n E[(X - mu)^n] / n!; moments of each piece
    // alpha + beta x integrated exactly.
    constexpr int order = 10;
    std::array<double, order + 1> moments{};
    for (const auto& s : segments) {
      if (s.x1 <= s.x0) continue;
      const double beta = (s.y1 - s.y0) / (s.x1 - s.x0);
      const double alpha = s.y0 - beta * s.x0;
      for (int n = 0; n <= order; ++n) {
        moments[n] += alpha * (std::pow(s.x1, n + 1) - std::pow(s.x0, n + 1)) / (n + 1) +
                      beta * (std::pow(s.x1, n + 2) - std::pow(s.x0, n + 2)) / (n + 2);
      }
    }
    cplx it_pow{1.0, 0.0};
    double factorial = 1.0;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) {
        it_pow *= cplx(0.0, t);
        factorial *= n;
      }
      centered += it_pow * (moments[n] / factorial);
    }
  } else {
    // integral of (y0 + s (x - x0)) e^{itx} over [x0, x1]
    //   = (y1 E1 - y0 E0) / (it) + s (E1 - E0) / t^2
    const cplx it{0.0, t};
    for (const auto& s : segments) {
      if (s.x1 <= s.x0) continue;
      const double slope = (s.y1 - s.y0) / (s.x1 - s.x0);
      const cplx e0 = std::polar(1.0, t * s.x0);
      const cplx e1 = std::polar(1.0, t * s.x1);
      centered += (s.y1 * e1 - s.y0 * e0) / it + slope * (e1 - e0) / (t * t);
    }
  }
  return std::polar(1.0, t * mu) * centered;
}

// ---------------------------------------------------------------- Poisson

Poisson::Poisson(double lambda) : lambda_(lambda) {
  require(finite(lambda) && lambda > 0.0, "Poisson", "lambda > 0");
}

double Poisson::pdf(double x) const {
  if (!(x >= 0.0) || !is_integer(x)) return 0.0;
  return std::exp(logpdf(x));
}

double Poisson::logpdf(double x) const {
  if (!(x >= 0.0) || !is_integer(x)) return -kInf;
  return x * std::log(lambda_) - lambda_ - std::lgamma(x + 1.0);
}

double Poisson::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return special::gamma_q(std::floor(x) + 1.0, lambda_);
}

double Poisson::quantile_impl(double p) const {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return kInf;
  // Start near the normal approximation, then walk to the smallest k with
  // cdf(k) >= p.
  double k = std::max(0.0, std::floor(lambda_ + std::sqrt(lambda_) * special::normal_quantile(p)));
  while (cdf(k) < p) k += 1.0;
  while (k > 0.0 && cdf(k - 1.0) >= p) k -= 1.0;
  return k;
}

double Poisson::rand(Rng& rng) const {
  if (lambda_ <= 30.0) {
    const double u = rng.uniform01();
    double k = 0.0;
    double term = std::exp(-lambda_);
    double cum = term;
    while (u > cum) {
      k += 1.0;
      term *= lambda_ / k;
      const double next = cum + term;
      if (next == cum) break;  // u beyond the representable upper tail
      cum = next;
    }
    return k;
  }
  // Transformed rejection with squeeze (Hormann 1993).
  const double slam = std::sqrt(lambda_);
  const double loglam = std::log(lambda_);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda_ + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda_ + k * loglam - std::lgamma(k + 1.0))
      return k;
  }
}

std::complex<double> Poisson::cf_impl(double t) const {
  return std::exp(lambda_ * (std::polar(1.0, t) - 1.0));
}

// ---------------------------------------------------------------- Bernoulli

Bernoulli::Bernoulli(double p) : p_(p) { require(p >= 0.0 && p <= 1.0, "Bernoulli", "0 <= p <= 1"); }

double Bernoulli::pdf(double x) const {
  if (x == 0.0) return 1.0 - p_;
  if (x == 1.0) return p_;
  return 0.0;
}

double Bernoulli::logpdf(double x) const { return std::log(pdf(x)); }

double Bernoulli::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x < 1.0) return 1.0 - p_;
  return 1.0;
}

double Bernoulli::quantile_impl(double p) const { return p <= 1.0 - p_ ? 0.0 : 1.0; }

double Bernoulli::rand(Rng& rng) const { return rng.uniform01() < p_ ? 1.0 : 0.0; }

std::complex<double> Bernoulli::cf_impl(double t) const {
  return (1.0 - p_) + p_ * std::polar(1.0, t);
}

// ---------------------------------------------------------------- Categorical

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
  require(!probs_.empty(), "Categorical", "at least one category");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0)
      throw Error(ErrorCode::NotASimplex, "Categorical: probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "Categorical: probabilities sum to " << total << ", not 1";
    throw Error(ErrorCode::NotASimplex, msg.str());
  }
  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

double Categorical::pdf(double x) const {
  if (!is_integer(x) || x < 1.0 || x > static_cast<double>(probs_.size())) return 0.0;
  return probs_[static_cast<std::size_t>(x) - 1];
}

double Categorical::logpdf(double x) const { return std::log(pdf(x)); }

double Categorical::cdf(double x) const {
  if (x < 1.0) return 0.0;
  if (x >= static_cast<double>(probs_.size())) return 1.0;
  return cumulative_[static_cast<std::size_t>(std::floor(x)) - 1];
}

double Categorical::quantile_impl(double p) const {
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
  if (it == cumulative_.end()) return static_cast<double>(probs_.size());
  return static_cast<double>(it - cumulative_.begin() + 1);
}

double Categorical::rand(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return static_cast<double>(probs_.size());
  return static_cast<double>(it - cumulative_.begin() + 1);
}

std::optional<double> Categorical::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) m += static_cast<double>(k + 1) * probs_[k];
  return m;
}

std::optional<double> Categorical::var() const {
  const double m = *mean();
  double v = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    const double d = static_cast<double>(k + 1) - m;
    v += d * d * probs_[k];
  }
  return v;
}

SupportBounds Categorical::support() const { return {1.0, static_cast<double>(probs_.size())}; }

std::optional<IntegerRange> Categorical::integer_support() const {
  return IntegerRange{1, static_cast<std::int64_t>(probs_.size())};
}

std::complex<double> Categorical::cf_impl(double t) const {
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < probs_.size(); ++k)
    s += probs_[k] * std::polar(1.0, t * static_cast<double>(k + 1));
  return s;
}

}  // namespace distkit
