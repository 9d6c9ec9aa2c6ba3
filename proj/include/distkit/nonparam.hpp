#pragma once

#include <optional>
#include <span>
#include <vector>

#include "distkit/core.hpp"

namespace distkit {

// Empirical cdf: weighted sum of Heaviside steps, right-continuous.
class Ecdf {
 public:
  Ecdf(std::span<const double> data, std::span<const double> weights = {});

  // (sum_i w_i [x_i <= x]) / sum_i w_i
  double operator()(double x) const;

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }

 private:
  std::vector<double> values_;      // sorted
  std::vector<double> cumulative_;  // normalized, last entry == 1
};

Ecdf ecdf(std::span<const double> data, std::span<const double> weights = {});
double ecdf_eval(const Ecdf& e, double x);

enum class Closed { Left, Right };

struct Histogram {
  std::vector<double> edges;   // strictly increasing, size B + 1
  std::vector<double> counts;  // size B; weight sums when weighted
  Closed closed = Closed::Right;
  double total = 0.0;          // in-range weight

  std::size_t nbins() const noexcept { return counts.size(); }
};

// Either explicit edges or a bin count over the data range.
struct BinSpec {
  std::optional<std::vector<double>> edges;
  std::size_t nbins = 10;
};

// closed=Right bins are (lo, hi], closed=Left bins are [lo, hi). With explicit
// edges, observations outside the outer edges are dropped. With nbins the
// edges span [min, max] and the outermost bin on the open side also takes its
// boundary point, so every observation is counted.
Histogram histogram_fit(std::span<const double> data, const BinSpec& spec,
                        Closed closed = Closed::Right, std::span<const double> weights = {});

struct KdeEstimate {
  std::vector<double> x;        // uniform grid
  std::vector<double> density;  // same length
  double bandwidth = 0.0;
};

struct KdeOptions {
  std::optional<double> bandwidth;  // Gaussian kernel scale; Silverman when empty
  UnivariatePtr kernel;             // used as-is when set (its own scale is the bandwidth)
  std::size_t gridsize = 2048;
};

// Binned FFT estimate on the nodes lo + i (hi - lo) / gridsize, i < gridsize,
// with [lo, hi] = [min - 4s, max + 4s] and s the kernel standard deviation.
// Data past the last node go to it. Data are linearly
// binned, transformed with zero padding to 2 gridsize, multiplied by the
// kernel's characteristic function and transformed back. Negative round-off
// is clamped and the lost mass restored.
KdeEstimate kde(std::span<const double> data, const KdeOptions& opts = {});

// Linear interpolation on the grid; 0 outside it.
double kde_eval(const KdeEstimate& k, double x);

// 0.9 min(sd, IQR / 1.34) n^(-1/5); falls back to sd when the IQR is zero.
// IQR from type-7 (linear interpolation) quantiles.
double silverman_bandwidth(std::span<const double> data);

struct Kde2dEstimate {
  std::vector<double> x;
  std::vector<double> y;
  Eigen::MatrixXd density;  // density(i, j) at (x[i], y[j])
  double bandwidth_x = 0.0;
  double bandwidth_y = 0.0;
};

struct Kde2dOptions {
  std::optional<double> bandwidth_x;
  std::optional<double> bandwidth_y;
  std::size_t gridsize = 256;
};

// Product-Gaussian estimate on a G x G grid through a 2-D transform.
Kde2dEstimate kde2d(std::span<const double> xs, std::span<const double> ys,
                    const Kde2dOptions& opts = {});

// Bilinear interpolation; 0 outside the grid.
double kde2d_eval(const Kde2dEstimate& k, double x, double y);

// Type-7 sample quantile of already sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

}  // namespace distkit
