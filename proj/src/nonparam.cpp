#include "distkit/nonparam.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

#include "distkit/special.hpp"
#include "distkit/univariate.hpp"

namespace distkit {

namespace {

using cvec = std::vector<std::complex<double>>;

void check_weights(std::span<const double> data, std::span<const double> weights) {
  if (weights.empty()) return;
  if (weights.size() != data.size())
    throw Error(ErrorCode::DimensionMismatch, "weights and data differ in length");
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0)
      throw Error(ErrorCode::InvalidParameter, "weights must be finite and non-negative");
}

double sample_sd(std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : data) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

// Angular frequency of DFT bin k on a length-L grid with spacing dx.
double frequency(std::size_t k, std::size_t L, double dx) {
  const double kk = k < L / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(L);
  return 2.0 * special::kPi * kk / (static_cast<double>(L) * dx);
}

// Clamp negative round-off and rescale so the total mass is unchanged.
template <class Range>
void clamp_negatives(Range& values) {
  double before = 0.0;
  double after = 0.0;
  bool clamped = false;
  for (auto& v : values) {
    before += v;
    if (v < 0.0) {
      v = 0.0;
      clamped = true;
    }
    after += v;
  }
  if (clamped && after > 0.0 && before > 0.0) {
    const double scale = before / after;
    for (auto& v : values) v *= scale;
  }
}

struct Grid {
  double lo = 0.0;
  double step = 0.0;
  std::size_t size = 0;

  double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

Grid make_grid(std::span<const double> data, double margin, std::size_t gridsize) {
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  const double lo = *mn - margin;
  const double hi = *mx + margin;
  return {lo, (hi - lo) / static_cast<double>(gridsize), gridsize};
}

// Splits a unit of mass between the two nodes bracketing x.
struct BinSplit {
  std::size_t lower;
  std::size_t upper;
  double upper_share;
};

BinSplit linear_bin(const Grid& g, double x) {
  const double pos = (x - g.lo) / g.step;
  const double last = static_cast<double>(g.size - 1);
  if (pos >= last) return {g.size - 1, g.size - 1, 0.0};
  if (pos <= 0.0) return {0, 0, 0.0};
  const double fl = std::floor(pos);
  const auto j = static_cast<std::size_t>(fl);
  return {j, j + 1, pos - fl};
}

}  // namespace

// ---------------------------------------------------------------- ecdf

Ecdf::Ecdf(std::span<const double> data, std::span<const double> weights) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "ecdf of an empty sample");
  check_weights(data, weights);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return data[a] < data[b]; });

  values_.reserve(data.size());
  cumulative_.reserve(data.size());
  double running = 0.0;
  for (auto i : order) {
    values_.push_back(data[i]);
    running += weights.empty() ? 1.0 : weights[i];
    cumulative_.push_back(running);
  }
  if (!(running > 0.0)) throw Error(ErrorCode::InvalidParameter, "total weight must be positive");
  for (auto& c : cumulative_) c /= running;
  cumulative_.back() = 1.0;
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

Ecdf ecdf(std::span<const double> data, std::span<const double> weights) { return Ecdf(data, weights); }

double ecdf_eval(const Ecdf& e, double x) { return e(x); }

// ---------------------------------------------------------------- histogram

Histogram histogram_fit(std::span<const double> data, const BinSpec& spec, Closed closed,
                        std::span<const double> weights) {
  check_weights(data, weights);
  Histogram h;
  h.closed = closed;
  bool include_outer = false;

  if (spec.edges) {
    h.edges = *spec.edges;
    if (h.edges.size() < 2) throw Error(ErrorCode::BadEdges, "need at least two edges");
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
      if (!std::isfinite(h.edges[i])) throw Error(ErrorCode::BadEdges, "edges must be finite");
      if (i > 0 && !(h.edges[i] > h.edges[i - 1]))
        throw Error(ErrorCode::BadEdges, "edges must be strictly increasing");
    }
  } else {
    if (spec.nbins < 1) throw Error(ErrorCode::BadEdges, "nbins must be at least 1");
    if (data.empty()) throw Error(ErrorCode::EmptyData, "cannot derive bin edges from no data");
    auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    double lo = *mn;
    double hi = *mx;
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    h.edges.resize(spec.nbins + 1);
    for (std::size_t i = 0; i <= spec.nbins; ++i)
      h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(spec.nbins);
    h.edges.back() = hi;
    include_outer = true;
  }

  const std::size_t nbins = h.edges.size() - 1;
  h.counts.assign(nbins, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double x = data[i];
    const double w = weights.empty() ? 1.0 : weights[i];
    std::ptrdiff_t idx;
    if (closed == Closed::Right) {
      idx = std::lower_bound(h.edges.begin(), h.edges.end(), x) - h.edges.begin();
      if (include_outer && x == h.edges.front()) idx = 1;
    } else {
      idx = std::upper_bound(h.edges.begin(), h.edges.end(), x) - h.edges.begin();
      if (include_outer && x == h.edges.back()) idx = static_cast<std::ptrdiff_t>(nbins);
    }
    if (idx < 1 || idx > static_cast<std::ptrdiff_t>(nbins)) continue;
    h.counts[static_cast<std::size_t>(idx - 1)] += w;
    h.total += w;
  }
  return h;
}

// ---------------------------------------------------------------- kde

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyData, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double silverman_bandwidth(std::span<const double> data) {
  if (data.size() < 2) throw Error(ErrorCode::DegenerateData, "bandwidth needs at least two points");
  const double sd = sample_sd(data);
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateData, "data have zero spread");
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(data.size()), -0.2);
}

KdeEstimate kde(std::span<const double> data, const KdeOptions& opts) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "kde of an empty sample");
  for (double v : data)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "kde data must be finite");
  if (opts.gridsize < 2) throw Error(ErrorCode::InvalidParameter, "gridsize must be at least 2");

  UnivariatePtr kernel = opts.kernel;
  double reported_bw;
  double margin;
  if (kernel) {
    if (opts.bandwidth)
      throw Error(ErrorCode::InvalidParameter, "pass either a bandwidth or an explicit kernel");
    if (!kernel->has_cf())
      throw Error(ErrorCode::NoCharacteristicFunction,
                  kernel->family() + " kernel has no characteristic function");
    if (const auto v = kernel->var()) {
      reported_bw = std::sqrt(*v);
      margin = 4.0 * reported_bw;
    } else {
      reported_bw = (kernel->quantile(0.75) - kernel->quantile(0.25)) / 1.349;
      margin = std::max(std::abs(kernel->quantile(0.001)), std::abs(kernel->quantile(0.999)));
    }
  } else {
    const double h = opts.bandwidth ? *opts.bandwidth : silverman_bandwidth(data);
    if (!(h > 0.0) || !std::isfinite(h))
      throw Error(ErrorCode::BadBandwidth, "bandwidth must be a positive finite number");
    kernel = std::make_shared<Normal>(0.0, h);
    reported_bw = h;
    margin = 4.0 * h;
  }

  const std::size_t G = opts.gridsize;
  const Grid grid = make_grid(data, margin, G);

  // Zero-padded to 2G so the circular convolution never wraps onto the grid.
  const std::size_t P = 2 * G;
  cvec binned(P, {0.0, 0.0});
  const double mass = 1.0 / static_cast<double>(data.size());
  for (double v : data) {
    const auto s = linear_bin(grid, v);
    binned[s.lower] += mass * (1.0 - s.upper_share);
    binned[s.upper] += mass * s.upper_share;
  }

  Eigen::FFT<double> fft;
  cvec spectrum;
  fft.fwd(spectrum, binned);
  for (std::size_t k = 0; k < P; ++k)
    spectrum[k] *= kernel->cf(-frequency(k, P, grid.step)) / grid.step;
  cvec smoothed;
  fft.inv(smoothed, spectrum);

  KdeEstimate out;
  out.bandwidth = reported_bw;
  out.x.resize(G);
  out.density.resize(G);
  for (std::size_t i = 0; i < G; ++i) {
    out.x[i] = grid.at(i);
    out.density[i] = smoothed[i].real();
  }
  clamp_negatives(out.density);
  return out;
}

double kde_eval(const KdeEstimate& k, double x) {
  if (k.x.empty() || !(x >= k.x.front() && x <= k.x.back())) return 0.0;
  const auto it = std::upper_bound(k.x.begin(), k.x.end(), x);
  const auto i = static_cast<std::size_t>(it - k.x.begin()) - 1;
  if (i + 1 >= k.x.size()) return k.density.back();
  const double t = (x - k.x[i]) / (k.x[i + 1] - k.x[i]);
  return (1.0 - t) * k.density[i] + t * k.density[i + 1];
}

// ---------------------------------------------------------------- kde2d

Kde2dEstimate kde2d(std::span<const double> xs, std::span<const double> ys, const Kde2dOptions& opts) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::DimensionMismatch, "x and y differ in length");
  if (xs.empty()) throw Error(ErrorCode::EmptyData, "kde of an empty sample");
  if (opts.gridsize < 2) throw Error(ErrorCode::InvalidParameter, "gridsize must be at least 2");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw Error(ErrorCode::NonFinite, "kde data must be finite");

  const double hx = opts.bandwidth_x ? *opts.bandwidth_x : silverman_bandwidth(xs);
  const double hy = opts.bandwidth_y ? *opts.bandwidth_y : silverman_bandwidth(ys);
  for (double h : {hx, hy})
    if (!(h > 0.0) || !std::isfinite(h))
      throw Error(ErrorCode::BadBandwidth, "bandwidth must be a positive finite number");

  const std::size_t G = opts.gridsize;
  const Grid gx = make_grid(xs, 4.0 * hx, G);
  const Grid gy = make_grid(ys, 4.0 * hy, G);

  // Row-major P x P zero-padded field, index i * P + j for (x_i, y_j).
  const std::size_t P = 2 * G;
  cvec field(P * P, {0.0, 0.0});
  const double mass = 1.0 / static_cast<double>(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const auto bx = linear_bin(gx, xs[n]);
    const auto by = linear_bin(gy, ys[n]);
    const double wx[2] = {1.0 - bx.upper_share, bx.upper_share};
    const double wy[2] = {1.0 - by.upper_share, by.upper_share};
    const std::size_t ix[2] = {bx.lower, bx.upper};
    const std::size_t iy[2] = {by.lower, by.upper};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) field[ix[a] * P + iy[b]] += mass * wx[a] * wy[b];
  }

  Eigen::FFT<double> fft;
  cvec line(P), out(P);
  auto transform = [&](bool forward) {
    for (std::size_t i = 0; i < P; ++i) {  // along y
      std::copy_n(field.begin() + static_cast<std::ptrdiff_t>(i * P), P, line.begin());
      forward ? fft.fwd(out, line) : fft.inv(out, line);
      std::copy_n(out.begin(), P, field.begin() + static_cast<std::ptrdiff_t>(i * P));
    }
    for (std::size_t j = 0; j < P; ++j) {  // along x
      for (std::size_t i = 0; i < P; ++i) line[i] = field[i * P + j];
      forward ? fft.fwd(out, line) : fft.inv(out, line);
      for (std::size_t i = 0; i < P; ++i) field[i * P + j] = out[i];
    }
  };

  transform(true);
  std::vector<double> cfx(P), cfy(P);
  for (std::size_t k = 0; k < P; ++k) {
    const double wxk = frequency(k, P, gx.step);
    const double wyk = frequency(k, P, gy.step);
    cfx[k] = std::exp(-0.5 * hx * hx * wxk * wxk) / gx.step;
    cfy[k] = std::exp(-0.5 * hy * hy * wyk * wyk) / gy.step;
  }
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) field[i * P + j] *= cfx[i] * cfy[j];
  transform(false);

  Kde2dEstimate est;
  est.bandwidth_x = hx;
  est.bandwidth_y = hy;
  est.x.resize(G);
  est.y.resize(G);
  for (std::size_t i = 0; i < G; ++i) {
    est.x[i] = gx.at(i);
    est.y[i] = gy.at(i);
  }
  est.density.resize(static_cast<Eigen::Index>(G), static_cast<Eigen::Index>(G));
  for (std::size_t i = 0; i < G; ++i)
    for (std::size_t j = 0; j < G; ++j)
      est.density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = field[i * P + j].real();
  std::span<double> values(est.density.data(), static_cast<std::size_t>(est.density.size()));
  clamp_negatives(values);
  return est;
}

double kde2d_eval(const Kde2dEstimate& k, double x, double y) {
  if (k.x.empty() || !(x >= k.x.front() && x <= k.x.back()) || !(y >= k.y.front() && y <= k.y.back()))
    return 0.0;
  auto locate = [](const std::vector<double>& g, double v) {
    const auto it = std::upper_bound(g.begin(), g.end(), v);
    auto i = static_cast<std::size_t>(it - g.begin()) - 1;
    if (i + 1 >= g.size()) i = g.size() - 2;
    return std::pair{i, (v - g[i]) / (g[i + 1] - g[i])};
  };
  const auto [i, tx] = locate(k.x, x);
  const auto [j, ty] = locate(k.y, y);
  const auto I = static_cast<Eigen::Index>(i);
  const auto J = static_cast<Eigen::Index>(j);
  return (1.0 - tx) * (1.0 - ty) * k.density(I, J) + tx * (1.0 - ty) * k.density(I + 1, J) +
         (1.0 - tx) * ty * k.density(I, J + 1) + tx * ty * k.density(I + 1, J + 1);
}

}  // namespace distkit
