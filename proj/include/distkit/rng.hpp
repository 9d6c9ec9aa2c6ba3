#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "distkit/traits.hpp"

namespace distkit {

// xoshiro256** seeded through splitmix64. Equal seeds give bit-identical
// streams on every platform. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 42) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }
  result_type next() noexcept;

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform_open01() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

// Discrete N-state chain with a row-stochastic transition matrix. States are
// 1-based. Each draw moves the chain, so the object is mutable by nature.
class MarkovChain final : public Sampleable {
 public:
  MarkovChain(int state, Eigen::MatrixXd transition);

  VariateForm variate_form() const noexcept override { return VariateForm::Univariate; }
  ValueSupport value_support() const noexcept override { return ValueSupport::Discrete; }

  // Draws u, scans the cumulative sum of the current row for the first
  // entry >= u, moves there and returns the new state.
  int rand(Rng& rng);

  int state() const noexcept { return state_; }
  int nstates() const noexcept { return static_cast<int>(transition_.rows()); }
  const Eigen::MatrixXd& transition() const noexcept { return transition_; }

 private:
  int state_;
  Eigen::MatrixXd transition_;
};

// n sequential draws from any sampleable (distribution or chain).
template <class S>
auto sample_many(S&& sampleable, Rng& rng, std::size_t n) {
  using value_type = std::decay_t<decltype(sampleable.rand(rng))>;
  std::vector<value_type> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampleable.rand(rng));
  return out;
}

}  // namespace distkit
