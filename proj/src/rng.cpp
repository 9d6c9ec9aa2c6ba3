#include "distkit/rng.hpp"

#include <cmath>
#include <string>

#include "distkit/error.hpp"

namespace distkit {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix64(x);
}

Rng::result_type Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

MarkovChain::MarkovChain(int state, Eigen::MatrixXd transition)
    : state_(state), transition_(std::move(transition)) {
  const auto n = transition_.rows();
  if (n == 0 || transition_.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "transition matrix must be square and non-empty");
  if (state_ < 1 || state_ > n)
    throw Error(ErrorCode::IndexOutOfRange, "initial state must lie in 1.." + std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((transition_.row(i).array() < 0.0).any())
      throw Error(ErrorCode::InvalidParameter, "transition probabilities must be non-negative");
    const double s = transition_.row(i).sum();
    if (std::abs(s - 1.0) > 1e-12)
      throw Error(ErrorCode::DegenerateRow,
                  "row " + std::to_string(i + 1) + " of the transition matrix does not sum to 1");
  }
}

int MarkovChain::rand(Rng& rng) {
  const double u = rng.uniform01();
  const auto row = transition_.row(state_ - 1);
  double cum = 0.0;
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    cum += row[j];
    if (cum >= u) {
      state_ = static_cast<int>(j) + 1;
      return state_;
    }
  }
  // Reached only if round-off left the row total short of u.
  if (cum >= 1.0 - 1e-9) {
    state_ = static_cast<int>(row.size());
    return state_;
  }
  throw Error(ErrorCode::DegenerateRow,
              "row " + std::to_string(state_) + " sums to less than 1");
}

}  // namespace distkit
