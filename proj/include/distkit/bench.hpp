#pragma once

#include <string>
#include <vector>

#include "distkit/mixture.hpp"
#include "distkit/rng.hpp"

namespace distkit {

// Reference loop: sum of w_k pdf_k(x) over the components with w_k > 0.
double manual_mixture_pdf(const UnivariateMixture& m, double x);

struct BenchCase {
  std::string name;
  UnivariateMixture mixture;
  bool heterogeneous = false;
  double reference_ns = 0.0;     // reference timing, for comparison only
  double reference_ratio = 0.0;  // reference manual / library ratio
};

// Three Normals (-1, 0.3), (0, 0.5), (3, 1) with weights 0.25, 0.25, 0.5;
// 1000 Normals with uniform random parameters; 1000 Normals plus 1000
// LogNormals. Random weights are normalized by their sum. Scales are drawn
// as 1 - u so they stay positive.
std::vector<BenchCase> bench_cases(Rng& rng);

struct BenchOptions {
  std::size_t evaluations = 100000;  // per path and case, after warm-up
  std::size_t batch = 100;           // evaluations per timed batch
  std::size_t gate_points = 100;     // random x checked on top of the timed x
};

struct BenchResult {
  std::string name;
  std::size_t ncomponents = 0;
  bool heterogeneous = false;
  double library_ns = 0.0;  // median per-evaluation time over batches
  double manual_ns = 0.0;
  double ratio = 0.0;       // manual / library
  double max_rel_error = 0.0;
  double reference_ns = 0.0;
  double reference_ratio = 0.0;
};

struct BenchReport {
  double x = 0.0;  // the fixed evaluation point, drawn from Uniform[0, 1)
  bool gate_passed = false;
  double gate_tolerance = 1e-12;
  std::vector<BenchResult> cases;  // timings stay zero when the gate fails
};

// Checks library and manual paths agree within the gate tolerance, then times
// both on one fixed x. Timings are skipped entirely if any case fails the gate.
BenchReport run_bench(Rng& rng, const BenchOptions& opts = {});

}  // namespace distkit
