#include "distkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "distkit/univariate.hpp"

namespace distkit {

double manual_mixture_pdf(const UnivariateMixture& m, double x) {
  double v = 0.0;
  const auto& p = m.probs();
  const auto& d = m.components();
  for (std::size_t i = 0; i < m.ncomponents(); ++i) {
    if (p[i] > 0) v += p[i] * d[i]->pdf(x);
  }
  return v;
}

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = rng.uniform01();
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <class F>
double median_ns_per_eval(F&& f, double x, const BenchOptions& opts) {
  volatile double xin = x;
  volatile double sink = 0.0;
  const std::size_t batch = std::max<std::size_t>(1, opts.batch);
  const std::size_t rounds = std::max<std::size_t>(1, (opts.evaluations + batch - 1) / batch);
  for (std::size_t i = 0; i < batch * 10; ++i) sink = sink + f(xin);
  std::vector<double> per_eval;
  per_eval.reserve(rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < batch; ++i) sink = sink + f(xin);
    const auto t1 = std::chrono::steady_clock::now();
    per_eval.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(batch));
  }
  auto mid = per_eval.begin() + static_cast<std::ptrdiff_t>(per_eval.size() / 2);
  std::nth_element(per_eval.begin(), mid, per_eval.end());
  return *mid;
}

}  // namespace

std::vector<BenchCase> bench_cases(Rng& rng) {
  std::vector<BenchCase> cases;

  std::vector<UnivariatePtr> small = {std::make_shared<Normal>(-1.0, 0.3), std::make_shared<Normal>(0.0, 0.5),
                                      std::make_shared<Normal>(3.0, 1.0)};
  cases.push_back({"small", UnivariateMixture(small, {0.25, 0.25, 0.5}), false, 332.0, 1.24});

  std::vector<UnivariatePtr> large;
  for (int i = 0; i < 1000; ++i) {
    const double mu = rng.uniform01();
    const double sigma = 1.0 - rng.uniform01();
    large.push_back(std::make_shared<Normal>(mu, sigma));
  }
  cases.push_back({"large", UnivariateMixture(large, random_simplex(rng, 1000)), false, 105000.0, 5.88});

  std::vector<UnivariatePtr> mixed;
  for (int i = 0; i < 1000; ++i) {
    const double mu = rng.uniform01();
    const double sigma = 1.0 - rng.uniform01();
    mixed.push_back(std::make_shared<Normal>(mu, sigma));
  }
  for (int i = 0; i < 1000; ++i) {
    const double mu = rng.uniform01();
    const double sigma = 1.0 - rng.uniform01();
    mixed.push_back(std::make_shared<LogNormal>(mu, sigma));
  }
  cases.push_back({"heterogeneous", UnivariateMixture(mixed, random_simplex(rng, 2000)), true, 259000.0, 1.28});
  return cases;
}

BenchReport run_bench(Rng& rng, const BenchOptions& opts) {
  const std::vector<BenchCase> cases = bench_cases(rng);
  BenchReport report;
  report.x = rng.uniform01();

  std::vector<double> probes{report.x};
  for (std::size_t i = 0; i < opts.gate_points; ++i) probes.push_back(4.0 * rng.uniform01() - 1.0);

  report.gate_passed = true;
  for (const auto& c : cases) {
    BenchResult r;
    r.name = c.name;
    r.ncomponents = c.mixture.ncomponents();
    r.heterogeneous = c.heterogeneous;
    r.reference_ns = c.reference_ns;
    r.reference_ratio = c.reference_ratio;
    for (double x : probes)
      r.max_rel_error = std::max(r.max_rel_error, relative_error(c.mixture.pdf(x), manual_mixture_pdf(c.mixture, x)));
    if (!(r.max_rel_error <= report.gate_tolerance)) report.gate_passed = false;
    report.cases.push_back(r);
  }
  if (!report.gate_passed) return report;

  for (std::size_t k = 0; k < cases.size(); ++k) {
    const UnivariateMixture& m = cases[k].mixture;
    auto& r = report.cases[k];
    r.library_ns = median_ns_per_eval([&m](double x) { return m.pdf(x); }, report.x, opts);
    r.manual_ns = median_ns_per_eval([&m](double x) { return manual_mixture_pdf(m, x); }, report.x, opts);
    r.ratio = r.manual_ns / r.library_ns;
  }
  return report;
}

}  // namespace distkit
