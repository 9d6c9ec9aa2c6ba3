#include "distkit/core.hpp"

#include <cmath>
#include <sstream>

namespace distkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::EmptyComponents: return "EmptyComponents";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::BadEdges: return "BadEdges";
    case ErrorCode::NoCharacteristicFunction: return "NoCharacteristicFunction";
    case ErrorCode::BadBandwidth: return "BadBandwidth";
    case ErrorCode::NotASimplex: return "NotASimplex";
    case ErrorCode::MixedVariateForms: return "MixedVariateForms";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AllZeroDensity: return "AllZeroDensity";
    case ErrorCode::EmptyComponent: return "EmptyComponent";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(VariateForm form) noexcept {
  switch (form) {
    case VariateForm::Univariate: return "Univariate";
    case VariateForm::Multivariate: return "Multivariate";
    case VariateForm::MatrixVariate: return "MatrixVariate";
  }
  return "Unknown";
}

std::string_view to_string(ValueSupport support) noexcept {
  return support == ValueSupport::Discrete ? "Discrete" : "Continuous";
}

double UnivariateDistribution::logpdf(double x) const { return logpdf_fallback(*this, x); }

double UnivariateDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "quantile probability must lie in [0, 1], got " << p;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  return quantile_impl(p);
}

double UnivariateDistribution::rand(Rng& rng) const { return sample_fallback(*this, rng); }

std::complex<double> UnivariateDistribution::cf(double t) const {
  if (!has_cf()) throw Error(ErrorCode::Unsupported, family() + " has no characteristic function");
  if (t == 0.0) return {1.0, 0.0};
  return cf_impl(t);
}

std::complex<double> UnivariateDistribution::cf_impl(double) const {
  throw Error(ErrorCode::Unsupported, family() + " has no characteristic function");
}

double MultivariateDistribution::pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return std::exp(logpdf(x));
}

double sample_fallback(const UnivariateDistribution& d, Rng& rng) {
  return d.quantile(rng.uniform01());
}

double logpdf_fallback(const UnivariateDistribution& d, double x) { return std::log(d.pdf(x)); }

}  // namespace distkit
