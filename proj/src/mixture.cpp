#include "distkit/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "distkit/special.hpp"
#include "distkit/univariate.hpp"

namespace distkit {

namespace {

std::vector<double> checked_weights(std::vector<double> weights, std::size_t ncomponents) {
  if (ncomponents == 0) throw Error(ErrorCode::EmptyComponents, "mixture needs at least one component");
  if (weights.size() != ncomponents)
    throw Error(ErrorCode::DimensionMismatch, "one weight per component is required");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::NotASimplex, "weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "weights sum to " << total << ", not 1";
    throw Error(ErrorCode::NotASimplex, msg.str());
  }
  for (double& w : weights) w /= total;
  return weights;
}

std::vector<double> cumulative_of(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  std::partial_sum(w.begin(), w.end(), c.begin());
  c.back() = 1.0;
  return c;
}

std::size_t pick_component(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

template <class Ptr>
ValueSupport common_support(const std::vector<Ptr>& components) {
  for (const auto& c : components)
    if (!c) throw Error(ErrorCode::InvalidParameter, "null mixture component");
  const ValueSupport s = components.front()->value_support();
  for (const auto& c : components)
    if (c->value_support() != s)
      throw Error(ErrorCode::MixedVariateForms, "mixture components must share their value support");
  return s;
}

}  // namespace

// ---------------------------------------------------------------- univariate

UnivariateMixture::UnivariateMixture(std::vector<UnivariatePtr> components, std::vector<double> weights)
    : components_(std::move(components)),
      weights_(checked_weights(std::move(weights), components_.size())),
      cumulative_(cumulative_of(weights_)),
      support_(common_support(components_)) {
  all_normal_ = std::all_of(components_.begin(), components_.end(), [](const auto& c) {
    return dynamic_cast<const Normal*>(c.get()) != nullptr;
  });
  if (all_normal_) {
    for (const auto& c : components_) {
      const auto& n = static_cast<const Normal&>(*c);
      normal_mu_.push_back(n.mu());
      normal_sigma_.push_back(n.sigma());
    }
  }
}

double UnivariateMixture::pdf(double x) const {
  double s = 0.0;
  if (all_normal_) {
    const std::size_t n = weights_.size();
    const double* w = weights_.data();
    const double* mu = normal_mu_.data();
    const double* sigma = normal_sigma_.data();
    for (std::size_t k = 0; k < n; ++k) {
      const double z = (x - mu[k]) / sigma[k];
      s += w[k] * (special::kInvSqrt2Pi / sigma[k] * std::exp(-0.5 * z * z));
    }
    return s;
  }
  for (std::size_t k = 0; k < components_.size(); ++k) s += weights_[k] * components_[k]->pdf(x);
  return s;
}

double UnivariateMixture::logpdf(double x) const {
  std::vector<double> terms;
  terms.reserve(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (weights_[k] > 0.0) terms.push_back(std::log(weights_[k]) + components_[k]->logpdf(x));
  return special::logsumexp(terms);
}

double UnivariateMixture::cdf(double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) s += weights_[k] * components_[k]->cdf(x);
  return std::min(s, 1.0);
}

double UnivariateMixture::quantile_impl(double p) const {
  // The mixture quantile lies between the extreme component quantiles.
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (weights_[k] <= 0.0) continue;
    const double q = components_[k]->quantile(p);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (lo == hi || !std::isfinite(lo) || !std::isfinite(hi)) return p < 0.5 ? lo : hi;
  if (support_ == ValueSupport::Discrete) {
    double k = std::floor(lo);
    while (cdf(k) < p && k < hi) k += 1.0;
    return k;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double UnivariateMixture::rand(Rng& rng) const {
  return components_[pick_component(cumulative_, rng)]->rand(rng);
}

std::optional<double> UnivariateMixture::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto mk = components_[k]->mean();
    if (!mk) return std::nullopt;
    m += weights_[k] * *mk;
  }
  return m;
}

std::optional<double> UnivariateMixture::var() const {
  const auto m = mean();
  if (!m) return std::nullopt;
  double second = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto vk = components_[k]->var();
    if (!vk) return std::nullopt;
    const double mk = *components_[k]->mean();
    second += weights_[k] * (*vk + mk * mk);
  }
  return second - *m * *m;
}

bool UnivariateMixture::has_cf() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c->has_cf(); });
}

std::complex<double> UnivariateMixture::cf_impl(double t) const {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = 0; k < components_.size(); ++k) s += weights_[k] * components_[k]->cf(t);
  return s;
}

SupportBounds UnivariateMixture::support() const {
  SupportBounds b{kInf, -kInf};
  for (const auto& c : components_) {
    const auto s = c->support();
    b.lower = std::min(b.lower, s.lower);
    b.upper = std::max(b.upper, s.upper);
  }
  return b;
}

const UnivariatePtr& UnivariateMixture::component(std::size_t k) const {
  if (k < 1 || k > components_.size())
    throw Error(ErrorCode::IndexOutOfRange, "component index " + std::to_string(k) + " out of 1.." +
                                                std::to_string(components_.size()));
  return components_[k - 1];
}

// ---------------------------------------------------------------- multivariate

MultivariateMixture::MultivariateMixture(std::vector<MultivariatePtr> components, std::vector<double> weights)
    : components_(std::move(components)),
      weights_(checked_weights(std::move(weights), components_.size())),
      cumulative_(cumulative_of(weights_)),
      support_(common_support(components_)),
      dim_(components_.front()->dim()) {
  for (const auto& c : components_)
    if (c->dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "mixture components differ in dimension");
}

double MultivariateMixture::pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) s += weights_[k] * components_[k]->pdf(x);
  return s;
}

double MultivariateMixture::logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::vector<double> terms;
  terms.reserve(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (weights_[k] > 0.0) terms.push_back(std::log(weights_[k]) + components_[k]->logpdf(x));
  return special::logsumexp(terms);
}

Eigen::VectorXd MultivariateMixture::rand(Rng& rng) const {
  return components_[pick_component(cumulative_, rng)]->rand(rng);
}

const MultivariatePtr& MultivariateMixture::component(std::size_t k) const {
  if (k < 1 || k > components_.size())
    throw Error(ErrorCode::IndexOutOfRange, "component index " + std::to_string(k) + " out of 1.." +
                                                std::to_string(components_.size()));
  return components_[k - 1];
}

UnivariateMixture mixture_new(std::vector<UnivariatePtr> components, std::vector<double> weights) {
  return UnivariateMixture(std::move(components), std::move(weights));
}

MultivariateMixture mixture_new(std::vector<MultivariatePtr> components, std::vector<double> weights) {
  return MultivariateMixture(std::move(components), std::move(weights));
}

// ---------------------------------------------------------------- EM

namespace {

void check_em_inputs(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                     std::span<const double> prior) {
  if (dists.size() != prior.size())
    throw Error(ErrorCode::DimensionMismatch, "one prior weight per component is required");
  if (dists.empty()) throw Error(ErrorCode::EmptyComponents, "no mixture components");
  for (const auto& d : dists)
    if (d->dim() != static_cast<std::size_t>(X.cols()))
      throw Error(ErrorCode::DimensionMismatch, "component dimension does not match the data");
}

// Row i of the result holds ln w_k + ln f_k(x_i).
Eigen::MatrixXd log_joint(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                          std::span<const double> prior) {
  const auto n = X.rows();
  const auto K = static_cast<Eigen::Index>(dists.size());
  Eigen::MatrixXd a(n, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double lw = std::log(prior[static_cast<std::size_t>(k)]);
    const auto& d = *dists[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < n; ++i) a(i, k) = lw + d.logpdf(X.row(i).transpose());
  }
  return a;
}

}  // namespace

Responsibilities expectation_step(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                                  std::span<const double> prior) {
  check_em_inputs(X, dists, prior);
  Eigen::MatrixXd Z = log_joint(X, dists, prior);
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    const double m = Z.row(i).maxCoeff();
    if (!std::isfinite(m))
      throw Error(ErrorCode::AllZeroDensity,
                  "observation " + std::to_string(i + 1) + " has zero density under every component");
    Z.row(i) = (Z.row(i).array() - m).exp();
    Z.row(i) /= Z.row(i).sum();
  }
  return Z;
}

double loglike_mixture(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                       std::span<const double> prior) {
  check_em_inputs(X, dists, prior);
  const Eigen::MatrixXd a = log_joint(X, dists, prior);
  double l = 0.0;
  std::vector<double> row(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) row[static_cast<std::size_t>(k)] = a(i, k);
    l += special::logsumexp(row);
  }
  return l;
}

MaximizationResult maximization_step_mvnormal(const Eigen::MatrixXd& X, const Responsibilities& Z,
                                              double ridge) {
  const auto n = X.rows();
  const auto d = X.cols();
  if (Z.rows() != n) throw Error(ErrorCode::DimensionMismatch, "responsibilities do not match the data");
  MaximizationResult out;
  for (Eigen::Index k = 0; k < Z.cols(); ++k) {
    const auto zk = Z.col(k);
    const double mass = zk.sum();
    if (mass < 1e-12)
      throw Error(ErrorCode::EmptyComponent,
                  "component " + std::to_string(k + 1) + " lost all its observations; try a smaller K");
    const Eigen::VectorXd mu = (X.transpose() * zk) / mass;
    const Eigen::MatrixXd r = X.rowwise() - mu.transpose();
    Eigen::MatrixXd sigma = (r.transpose() * zk.asDiagonal() * r) / mass;
    sigma = 0.5 * (sigma + sigma.transpose());
    sigma.diagonal().array() += ridge;
    out.dists.push_back(std::make_shared<MvNormal>(mu, sigma));
    out.prior.push_back(mass / static_cast<double>(n));
  }
  (void)d;
  return out;
}

Responsibilities alternating_init(std::size_t n, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidParameter, "K must be at least 1");
  Responsibilities Z = Responsibilities::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  if (k == 1) {
    Z.setOnes();
    return Z;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j0 = i % k + 1;
    const std::size_t j1 = j0 > 1 ? j0 - 1 : 2;
    Z(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j0 - 1)) = 0.75;
    Z(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j1 - 1)) = 0.25;
  }
  return Z;
}

EmResult em_fit(const Eigen::MatrixXd& X, const EmConfig& cfg) {
  const double ridge = cfg.ridge;
  return em_fit(X, cfg, [ridge](const Eigen::MatrixXd& data, const Responsibilities& Z) {
    return maximization_step_mvnormal(data, Z, ridge);
  });
}

EmResult em_fit(const Eigen::MatrixXd& X, const EmConfig& cfg, const MaximizationStep& mstep) {
  if (X.cols() < 1) throw Error(ErrorCode::DimensionMismatch, "data need at least one column");
  if (cfg.k < 1 || static_cast<Eigen::Index>(cfg.k) > X.rows())
    throw Error(ErrorCode::InvalidParameter, "K must lie in 1..n");

  Responsibilities Z = alternating_init(static_cast<std::size_t>(X.rows()), cfg.k);
  auto [dists, prior] = mstep(X, Z);
  double l = loglike_mixture(X, dists, prior);
  std::vector<double> trace{l};
  int iter = 0;
  // The first iteration is unconditional: the reference loop compares against
  // a previous value of 0, which would stop early whenever l is near 0.
  while (iter < cfg.max_iter) {
    Z = expectation_step(X, dists, prior);
    auto step = mstep(X, Z);
    dists = std::move(step.dists);
    prior = std::move(step.prior);
    const double lprev = l;
    l = loglike_mixture(X, dists, prior);
    ++iter;
    trace.push_back(l);
    if (!(std::abs(lprev - l) > cfg.loglike_diff)) break;
  }
  return EmResult{MultivariateMixture(dists, prior), std::move(Z), l, iter, std::move(trace)};
}

}  // namespace distkit
