#pragma once

#include <string_view>

namespace distkit {

// Dimensionality of a random quantity.
enum class VariateForm { Univariate, Multivariate, MatrixVariate };

// Countable versus continuum sample space.
enum class ValueSupport { Discrete, Continuous };

std::string_view to_string(VariateForm form) noexcept;
std::string_view to_string(ValueSupport support) noexcept;

// Anything that can produce random draws. A Sampleable need not have a
// density; the Markov chain in rng.hpp is the canonical example.
class Sampleable {
 public:
  virtual ~Sampleable() = default;
  virtual VariateForm variate_form() const noexcept = 0;
  virtual ValueSupport value_support() const noexcept = 0;
};

}  // namespace distkit
