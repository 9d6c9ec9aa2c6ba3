#include "distkit/multivariate.hpp"

#include <cmath>

#include "distkit/special.hpp"

namespace distkit {

MvNormal::MvNormal(Eigen::VectorXd mu, Eigen::MatrixXd sigma)
    : mu_(std::move(mu)), sigma_(std::move(sigma)) {
  const auto d = mu_.size();
  if (d == 0) throw Error(ErrorCode::DimensionMismatch, "MvNormal needs dimension >= 1");
  if (sigma_.rows() != d || sigma_.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "covariance shape does not match the mean");
  if (!mu_.allFinite() || !sigma_.allFinite())
    throw Error(ErrorCode::InvalidParameter, "MvNormal parameters must be finite");
  const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorCode::NotPositiveDefinite, "covariance must be symmetric");

  Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "covariance is not positive definite");
  chol_ = llt.matrixL();
  const double log_det = 2.0 * chol_.diagonal().array().log().sum();
  log_norm_ = static_cast<double>(d) * special::kLogSqrt2Pi + 0.5 * log_det;
}

double MvNormal::logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != mu_.size())
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match MvNormal");
  const Eigen::VectorXd z = chol_.triangularView<Eigen::Lower>().solve(x - mu_);
  return -0.5 * z.squaredNorm() - log_norm_;
}

Eigen::VectorXd MvNormal::rand(Rng& rng) const {
  Eigen::VectorXd z(mu_.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = special::normal_quantile(rng.uniform_open01());
  return mu_ + chol_.triangularView<Eigen::Lower>() * z;
}

ProductDistribution::ProductDistribution(std::vector<UnivariatePtr> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::EmptyComponents, "product needs at least one component");
  support_ = components_.front()->value_support();
  for (const auto& c : components_) {
    if (!c) throw Error(ErrorCode::InvalidParameter, "null product component");
    if (c->value_support() != support_)
      throw Error(ErrorCode::MixedVariateForms, "product components must share their value support");
  }
}

double ProductDistribution::logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != components_.size())
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match product");
  double s = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i)
    s += components_[i]->logpdf(x[static_cast<Eigen::Index>(i)]);
  return s;
}

Eigen::VectorXd ProductDistribution::rand(Rng& rng) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(components_.size()));
  for (std::size_t i = 0; i < components_.size(); ++i)
    x[static_cast<Eigen::Index>(i)] = components_[i]->rand(rng);
  return x;
}

ProductDistribution product_distribution(std::vector<UnivariatePtr> components) {
  return ProductDistribution(std::move(components));
}

double product_loglikelihood(const ProductDistribution& p, const Eigen::MatrixXd& data) {
  if (static_cast<std::size_t>(data.cols()) != p.dim())
    throw Error(ErrorCode::DimensionMismatch, "data columns do not match product dimension");
  double total = 0.0;
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const auto& comp = *p.components()[static_cast<std::size_t>(j)];
    double col = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) col += comp.logpdf(data(i, j));
    total += col;
  }
  return total;
}

}  // namespace distkit
