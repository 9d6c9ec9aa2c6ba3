#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distkit/multivariate.hpp"
#include "distkit/univariate.hpp"

namespace distkit {

// One fitting job. Univariate families read `data`; MvNormal reads `matrix`
// (rows are observations). `fixed` pins parameters by name (Normal: mu, sigma).
struct FitRequest {
  std::string family;
  std::vector<double> data;
  Eigen::MatrixXd matrix;
  std::optional<std::vector<double>> weights;
  std::map<std::string, double> fixed;
};

// Closed-form (weighted) maximum likelihood from sufficient statistics.
// Variances use the biased 1/n estimator.
DistributionPtr fit_mle(const FitRequest& req);

Normal fit_normal(std::span<const double> x, std::span<const double> w = {});
LogNormal fit_lognormal(std::span<const double> x, std::span<const double> w = {});
Uniform fit_uniform(std::span<const double> x, std::span<const double> w = {});
Exponential fit_exponential(std::span<const double> x, std::span<const double> w = {});
Poisson fit_poisson(std::span<const double> x, std::span<const double> w = {});
Bernoulli fit_bernoulli(std::span<const double> x, std::span<const double> w = {});
Categorical fit_categorical(std::span<const double> x, std::span<const double> w = {});
MvNormal fit_mvnormal(const Eigen::MatrixXd& x, std::span<const double> w = {});

// Normal fit with one parameter pinned: fixed mu gives sigma^2 = mean((x - mu)^2),
// fixed sigma gives mu = mean(x).
Normal fit_normal_fixed_mu(std::span<const double> x, double mu, std::span<const double> w = {});
Normal fit_normal_fixed_sigma(std::span<const double> x, double sigma,
                              std::span<const double> w = {});

// sum_i w_i logpdf(d, x_i); -inf propagates.
double loglikelihood(const UnivariateDistribution& d, std::span<const double> x,
                     std::span<const double> w = {});
// Rows of x are observations.
double loglikelihood(const MultivariateDistribution& d, const Eigen::MatrixXd& x,
                     std::span<const double> w = {});

using ObjectiveFn = std::function<double(std::span<const double>)>;

// Central differences with per-coordinate step fd_step * (1 + |p_i|).
// Throws NonFinite if any probe is not finite.
std::vector<double> numeric_gradient(const ObjectiveFn& f, std::span<const double> p,
                                     double fd_step = 1e-6);

struct GradientAscentConfig {
  double rho0 = 0.05;
  double m = 5.0;
  int max_iter = 5000;
  double grad_tol = 1e-6;  // on the L1 norm of the gradient
  double fd_step = 1e-6;
  // Parameters reflected to positive after every step, floored at scale_floor.
  std::vector<std::size_t> scale_indices;
  double scale_floor = 1e-8;
  // Starting point; when empty the randomized default box is drawn.
  std::optional<std::vector<double>> init;
};

using ProductBuilder = std::function<ProductDistribution(std::span<const double>)>;

struct GradientAscentResult {
  std::vector<double> params;
  ProductDistribution distribution;
  int iterations = 0;
  std::vector<double> loglike_trace;  // entry 0 is the starting point
};

// p <- p + rho0 / (k + m) * grad L(p) until k > max_iter or |grad L|_1 < grad_tol.
// Rows of `data` are observations.
GradientAscentResult gradient_ascent_mle(const ProductBuilder& builder, const Eigen::MatrixXd& data,
                                         const GradientAscentConfig& cfg, Rng& rng);

// Randomized start for a Normal x LogNormal product:
// [10 + 3u, 1 + u, 2 + 3u, 1 + u].
std::vector<double> default_product_init(Rng& rng);

// Builder for a product of two-parameter (or one-parameter) families laid
// out back to back in the parameter vector, plus the indices of their scale
// parameters.
struct ProductSpec {
  ProductBuilder builder;
  std::vector<std::size_t> scale_indices;
  std::size_t nparams = 0;
};
ProductSpec make_product_spec(const std::vector<std::string>& families);

}  // namespace distkit
