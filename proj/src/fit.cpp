#include "distkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace distkit {

namespace {

void check_data(std::span<const double> x, std::span<const double> w) {
  if (x.empty()) throw Error(ErrorCode::EmptyData, "no observations to fit");
  for (double v : x)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "observations must be finite");
  if (w.empty()) return;
  if (w.size() != x.size())
    throw Error(ErrorCode::DimensionMismatch, "weights and observations differ in length");
  bool any_positive = false;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::InvalidParameter, "weights must be finite and non-negative");
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::InvalidParameter, "at least one weight must be positive");
}

double weight_at(std::span<const double> w, std::size_t i) { return w.empty() ? 1.0 : w[i]; }

struct Moments {
  double total = 0.0;
  double mean = 0.0;
};

Moments weighted_mean(std::span<const double> x, std::span<const double> w) {
  Moments m;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wi = weight_at(w, i);
    m.total += wi;
    s += wi * x[i];
  }
  m.mean = s / m.total;
  return m;
}

double weighted_msd(std::span<const double> x, std::span<const double> w, double center,
                    double total) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - center;
    s += weight_at(w, i) * d * d;
  }
  return s / total;
}

std::vector<double> span_to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

Normal fit_normal(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  const auto m = weighted_mean(x, w);
  const double var = weighted_msd(x, w, m.mean, m.total);
  if (!(var > 0.0)) throw Error(ErrorCode::DegenerateData, "Normal fit: data have zero variance");
  return Normal(m.mean, std::sqrt(var));
}

Normal fit_normal_fixed_mu(std::span<const double> x, double mu, std::span<const double> w) {
  check_data(x, w);
  const auto m = weighted_mean(x, w);
  const double var = weighted_msd(x, w, mu, m.total);
  if (!(var > 0.0))
    throw Error(ErrorCode::DegenerateData, "Normal fit: all data equal the fixed mean");
  return Normal(mu, std::sqrt(var));
}

Normal fit_normal_fixed_sigma(std::span<const double> x, double sigma, std::span<const double> w) {
  check_data(x, w);
  return Normal(weighted_mean(x, w).mean, sigma);
}

LogNormal fit_lognormal(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0))
      throw Error(ErrorCode::NonPositive, "LogNormal fit: observations must be > 0");
    logs[i] = std::log(x[i]);
  }
  const Normal n = fit_normal(logs, w);
  return LogNormal(n.mu(), n.sigma());
}

Uniform fit_uniform(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (weight_at(w, i) <= 0.0) continue;
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
  if (!(lo < hi)) throw Error(ErrorCode::DegenerateData, "Uniform fit: zero-width support");
  return Uniform(lo, hi);
}

Exponential fit_exponential(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  for (double v : x)
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositive, "Exponential fit: observations must be > 0");
  return Exponential(weighted_mean(x, w).mean);
}

Poisson fit_poisson(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  for (double v : x)
    if (v < 0.0 || v != std::floor(v))
      throw Error(ErrorCode::DomainError, "Poisson fit: observations must be non-negative integers");
  const double lambda = weighted_mean(x, w).mean;
  if (!(lambda > 0.0)) throw Error(ErrorCode::DegenerateData, "Poisson fit: all observations are zero");
  return Poisson(lambda);
}

Bernoulli fit_bernoulli(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  for (double v : x)
    if (v != 0.0 && v != 1.0)
      throw Error(ErrorCode::DomainError, "Bernoulli fit: observations must be 0 or 1");
  return Bernoulli(weighted_mean(x, w).mean);
}

Categorical fit_categorical(std::span<const double> x, std::span<const double> w) {
  check_data(x, w);
  double kmax = 0.0;
  for (double v : x) {
    if (v < 1.0 || v != std::floor(v))
      throw Error(ErrorCode::DomainError, "Categorical fit: observations must be integers >= 1");
    kmax = std::max(kmax, v);
  }
  std::vector<double> counts(static_cast<std::size_t>(kmax), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    counts[static_cast<std::size_t>(x[i]) - 1] += weight_at(w, i);
    total += weight_at(w, i);
  }
  for (double& c : counts) c /= total;
  return Categorical(std::move(counts));
}

MvNormal fit_mvnormal(const Eigen::MatrixXd& x, std::span<const double> w) {
  const auto n = x.rows();
  const auto d = x.cols();
  if (n == 0 || d == 0) throw Error(ErrorCode::EmptyData, "no observations to fit");
  if (!x.allFinite()) throw Error(ErrorCode::NonFinite, "observations must be finite");
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
  if (!w.empty()) {
    std::vector<double> dummy(static_cast<std::size_t>(n), 0.0);
    check_data(dummy, w);
    weights = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
  }
  const double total = weights.sum();
  const Eigen::VectorXd mu = (x.transpose() * weights) / total;
  const Eigen::MatrixXd centered = x.rowwise() - mu.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * weights.asDiagonal() * centered) / total;
  cov = 0.5 * (cov + cov.transpose());
  try {
    return MvNormal(mu, cov);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite)
      throw Error(ErrorCode::DegenerateData, "MvNormal fit: empirical covariance is singular");
    throw;
  }
}

DistributionPtr fit_mle(const FitRequest& req) {
  const std::span<const double> x(req.data);
  const std::span<const double> w =
      req.weights ? std::span<const double>(*req.weights) : std::span<const double>();
  const auto& f = req.family;

  if (!req.fixed.empty()) {
    if (f != "Normal")
      throw Error(ErrorCode::Unsupported, "fixed parameters are only supported for Normal");
    if (req.fixed.size() != 1)
      throw Error(ErrorCode::InvalidParameter, "pin exactly one of mu or sigma");
    const auto& [name, value] = *req.fixed.begin();
    if (name == "mu") return std::make_shared<Normal>(fit_normal_fixed_mu(x, value, w));
    if (name == "sigma") return std::make_shared<Normal>(fit_normal_fixed_sigma(x, value, w));
    throw Error(ErrorCode::InvalidParameter, "unknown Normal parameter '" + name + "'");
  }

  if (f == "Normal") return std::make_shared<Normal>(fit_normal(x, w));
  if (f == "LogNormal") return std::make_shared<LogNormal>(fit_lognormal(x, w));
  if (f == "Uniform") return std::make_shared<Uniform>(fit_uniform(x, w));
  if (f == "Exponential") return std::make_shared<Exponential>(fit_exponential(x, w));
  if (f == "Poisson") return std::make_shared<Poisson>(fit_poisson(x, w));
  if (f == "Bernoulli") return std::make_shared<Bernoulli>(fit_bernoulli(x, w));
  if (f == "Categorical") return std::make_shared<Categorical>(fit_categorical(x, w));
  if (f == "MvNormal") return std::make_shared<MvNormal>(fit_mvnormal(req.matrix, w));
  throw Error(ErrorCode::Unsupported, "no closed-form MLE for family '" + f + "'");
}

double loglikelihood(const UnivariateDistribution& d, std::span<const double> x,
                     std::span<const double> w) {
  if (!w.empty() && w.size() != x.size())
    throw Error(ErrorCode::DimensionMismatch, "weights and observations differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (w.empty()) {
      s += d.logpdf(x[i]);
    } else if (w[i] != 0.0) {
      s += w[i] * d.logpdf(x[i]);
    }
  }
  return s;
}

double loglikelihood(const MultivariateDistribution& d, const Eigen::MatrixXd& x,
                     std::span<const double> w) {
  if (static_cast<std::size_t>(x.cols()) != d.dim())
    throw Error(ErrorCode::DimensionMismatch, "data columns do not match distribution dimension");
  if (!w.empty() && w.size() != static_cast<std::size_t>(x.rows()))
    throw Error(ErrorCode::DimensionMismatch, "weights and observations differ in length");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double wi = w.empty() ? 1.0 : w[static_cast<std::size_t>(i)];
    if (wi == 0.0) continue;
    s += wi * d.logpdf(x.row(i).transpose());
  }
  return s;
}

std::vector<double> numeric_gradient(const ObjectiveFn& f, std::span<const double> p,
                                     double fd_step) {
  std::vector<double> probe = span_to_vector(p);
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double h = fd_step * (1.0 + std::abs(p[i]));
    probe[i] = p[i] + h;
    const double up = f(probe);
    probe[i] = p[i] - h;
    const double down = f(probe);
    probe[i] = p[i];
    if (!std::isfinite(up) || !std::isfinite(down))
      throw Error(ErrorCode::NonFinite, "objective is not finite at a gradient probe");
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> default_product_init(Rng& rng) {
  const double u0 = rng.uniform01();
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  const double u3 = rng.uniform01();
  return {10.0 + 3.0 * u0, u1 + 1.0, 2.0 + 3.0 * u2, u3 + 1.0};
}

GradientAscentResult gradient_ascent_mle(const ProductBuilder& builder, const Eigen::MatrixXd& data,
                                         const GradientAscentConfig& cfg, Rng& rng) {
  if (!(cfg.rho0 > 0.0) || !(cfg.m > 0.0))
    throw Error(ErrorCode::InvalidParameter, "rho0 and m must be positive");
  std::vector<double> p = cfg.init ? *cfg.init : default_product_init(rng);

  const ObjectiveFn loglike = [&](std::span<const double> q) {
    try {
      return product_loglikelihood(builder(q), data);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidParameter) return -std::numeric_limits<double>::infinity();
      throw;
    }
  };

  GradientAscentResult result{p, builder(p), 0, {}};
  result.loglike_trace.push_back(loglike(p));
  if (!std::isfinite(result.loglike_trace.back()))
    throw Error(ErrorCode::NonFinite, "log-likelihood is not finite at the starting point");

  auto l1 = [](const std::vector<double>& g) {
    double s = 0.0;
    for (double v : g) s += std::abs(v);
    return s;
  };

  std::vector<double> grad = numeric_gradient(loglike, p, cfg.fd_step);
  int iter = 1;
  while (iter <= cfg.max_iter && l1(grad) >= cfg.grad_tol) {
    const double rho = cfg.rho0 / (iter + cfg.m);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += rho * grad[i];
    for (std::size_t j : cfg.scale_indices) p[j] = std::max(std::abs(p[j]), cfg.scale_floor);
    ++iter;
    const double l = loglike(p);
    if (!std::isfinite(l))
      throw Error(ErrorCode::NonFinite, "log-likelihood became non-finite during ascent");
    result.loglike_trace.push_back(l);
    grad = numeric_gradient(loglike, p, cfg.fd_step);
  }
  result.iterations = iter - 1;
  result.params = p;
  result.distribution = builder(p);
  return result;
}

ProductSpec make_product_spec(const std::vector<std::string>& families) {
  if (families.empty()) throw Error(ErrorCode::EmptyComponents, "product needs at least one component");
  struct Slot {
    std::string family;
    std::size_t offset;
    std::size_t arity;
  };
  std::vector<Slot> slots;
  ProductSpec spec;
  std::size_t offset = 0;
  for (const auto& f : families) {
    std::size_t arity = 0;
    if (f == "Normal" || f == "LogNormal" || f == "Cauchy") {
      arity = 2;
      spec.scale_indices.push_back(offset + 1);
    } else if (f == "Gamma") {
      arity = 2;
      spec.scale_indices.push_back(offset);
      spec.scale_indices.push_back(offset + 1);
    } else if (f == "Exponential") {
      arity = 1;
      spec.scale_indices.push_back(offset);
    } else {
      throw Error(ErrorCode::Unsupported, "gradient fitting does not support family '" + f + "'");
    }
    slots.push_back({f, offset, arity});
    offset += arity;
  }
  spec.nparams = offset;
  spec.builder = [slots, nparams = offset](std::span<const double> p) {
    if (p.size() != nparams)
      throw Error(ErrorCode::DimensionMismatch, "parameter vector length does not match product");
    std::vector<UnivariatePtr> comps;
    comps.reserve(slots.size());
    for (const auto& s : slots) {
      comps.push_back(reconstruct({s.family, {p.begin() + static_cast<std::ptrdiff_t>(s.offset),
                                              p.begin() + static_cast<std::ptrdiff_t>(s.offset + s.arity)}}));
    }
    return ProductDistribution(std::move(comps));
  };
  return spec;
}

}  // namespace distkit
