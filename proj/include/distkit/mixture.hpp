#pragma once

#include <functional>
#include <span>
#include <vector>

#include "distkit/core.hpp"
#include "distkit/multivariate.hpp"

namespace distkit {

// Finite mixture of univariate components sharing one value support.
// Weights must sum to 1 within 1e-9; they are then renormalized exactly.
class UnivariateMixture final : public UnivariateDistribution {
 public:
  UnivariateMixture(std::vector<UnivariatePtr> components, std::vector<double> weights);

  std::string family() const override { return "Mixture"; }
  ValueSupport value_support() const noexcept override { return support_; }

  // sum_k w_k pdf_k(x) over every component, zero weights included. All-Normal
  // mixtures take a flat loop without virtual dispatch.
  double pdf(double x) const override;
  // log-sum-exp of ln w_k + logpdf_k(x) over w_k > 0.
  double logpdf(double x) const override;
  double cdf(double x) const override;
  // Picks a component by weight, then draws from it.
  double rand(Rng& rng) const override;
  std::optional<double> mean() const override;
  std::optional<double> var() const override;
  bool has_cf() const noexcept override;
  SupportBounds support() const override;
  // Family "Mixture" with the weights; components only survive through JSON.
  DistributionDescriptor params() const override { return {"Mixture", weights_}; }

  std::size_t ncomponents() const noexcept { return components_.size(); }
  // 1-based; throws IndexOutOfRange.
  const UnivariatePtr& component(std::size_t k) const;
  const std::vector<UnivariatePtr>& components() const noexcept { return components_; }
  const std::vector<double>& probs() const noexcept { return weights_; }

 protected:
  double quantile_impl(double p) const override;
  std::complex<double> cf_impl(double t) const override;

 private:
  std::vector<UnivariatePtr> components_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  ValueSupport support_;
  bool all_normal_ = false;
  std::vector<double> normal_mu_, normal_sigma_;
};

class MultivariateMixture final : public MultivariateDistribution {
 public:
  MultivariateMixture(std::vector<MultivariatePtr> components, std::vector<double> weights);

  std::string family() const override { return "Mixture"; }
  ValueSupport value_support() const noexcept override { return support_; }
  std::size_t dim() const noexcept override { return dim_; }

  double pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  double logpdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  Eigen::VectorXd rand(Rng& rng) const override;

  std::size_t ncomponents() const noexcept { return components_.size(); }
  const MultivariatePtr& component(std::size_t k) const;
  const std::vector<MultivariatePtr>& components() const noexcept { return components_; }
  const std::vector<double>& probs() const noexcept { return weights_; }

 private:
  std::vector<MultivariatePtr> components_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  ValueSupport support_;
  std::size_t dim_;
};

UnivariateMixture mixture_new(std::vector<UnivariatePtr> components, std::vector<double> weights);
MultivariateMixture mixture_new(std::vector<MultivariatePtr> components, std::vector<double> weights);

// n x K matrix of posterior memberships; rows sum to one.
using Responsibilities = Eigen::MatrixXd;

// Z[i,k] = w_k f_k(x_i) / sum_j w_j f_j(x_i), evaluated in log space with a
// per-row max shift. Throws AllZeroDensity when a row has no support.
Responsibilities expectation_step(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                                  std::span<const double> prior);

// sum_i ln sum_k w_k f_k(x_i) via log-sum-exp; -inf when some row has no support.
double loglike_mixture(const Eigen::MatrixXd& X, const std::vector<MultivariatePtr>& dists,
                       std::span<const double> prior);

struct MaximizationResult {
  std::vector<MultivariatePtr> dists;
  std::vector<double> prior;
};

// Closed-form MvNormal update with ridge * I added to every covariance.
// Throws EmptyComponent when a column of Z carries less than 1e-12 mass.
MaximizationResult maximization_step_mvnormal(const Eigen::MatrixXd& X, const Responsibilities& Z,
                                              double ridge = 1e-6);

using MaximizationStep =
    std::function<MaximizationResult(const Eigen::MatrixXd& X, const Responsibilities& Z)>;

struct EmConfig {
  std::size_t k = 2;
  int max_iter = 500;
  double loglike_diff = 1e-4;
  double ridge = 1e-6;
};

struct EmResult {
  MultivariateMixture model;
  Responsibilities responsibilities;
  double loglike = 0.0;
  int iterations = 0;
  std::vector<double> trace;  // entry 0 follows the initial M step
};

// Observation i (1-based) gets 0.75 on label mod(i, K) + 1 and 0.25 on the
// label before it (label 2 when the first label is 1). K = 1 puts all mass on
// the single label.
Responsibilities alternating_init(std::size_t n, std::size_t k);

// Alternates M and E steps from alternating_init until the log-likelihood
// moves by at most loglike_diff or max_iter is reached. At least one full
// iteration is always run.
EmResult em_fit(const Eigen::MatrixXd& X, const EmConfig& cfg);
EmResult em_fit(const Eigen::MatrixXd& X, const EmConfig& cfg, const MaximizationStep& mstep);

}  // namespace distkit
