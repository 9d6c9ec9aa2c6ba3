#pragma once

#include <vector>

#include "distkit/core.hpp"

namespace distkit {

// Multivariate normal with dense covariance. The Cholesky factor is computed
// once at construction; NotPositiveDefinite is raised there.
class MvNormal final : public MultivariateDistribution {
 public:
  MvNormal(Eigen::VectorXd mu, Eigen::MatrixXd sigma);

  std::string family() const override { return "MvNormal"; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Continuous; }
  std::size_t dim() const noexcept override { return static_cast<std::size_t>(mu_.size()); }

  // -1/2 [d ln(2 pi) + ln det Sigma + (x - mu)' Sigma^-1 (x - mu)] through
  // a triangular solve.
  double logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  // mu + L z with z i.i.d. standard normal.
  Eigen::VectorXd rand(Rng& rng) const override;

  const Eigen::VectorXd& mean() const noexcept { return mu_; }
  const Eigen::MatrixXd& cov() const noexcept { return sigma_; }
  const Eigen::MatrixXd& cholesky_factor() const noexcept { return chol_; }

 private:
  Eigen::VectorXd mu_;
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd chol_;
  double log_norm_;  // d/2 ln(2 pi) + 1/2 ln det Sigma
};

// Independent univariate components; logpdf is the sum of the marginals.
class ProductDistribution final : public MultivariateDistribution {
 public:
  explicit ProductDistribution(std::vector<UnivariatePtr> components);

  std::string family() const override { return "Product"; }
  ValueSupport value_support() const noexcept override { return support_; }
  std::size_t dim() const noexcept override { return components_.size(); }

  double logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  Eigen::VectorXd rand(Rng& rng) const override;

  const std::vector<UnivariatePtr>& components() const noexcept { return components_; }

 private:
  std::vector<UnivariatePtr> components_;
  ValueSupport support_;
};

ProductDistribution product_distribution(std::vector<UnivariatePtr> components);

// Sum over columns of the univariate log-likelihood of column j under
// component j. Rows of `data` are observations.
double product_loglikelihood(const ProductDistribution& p, const Eigen::MatrixXd& data);

}  // namespace distkit
