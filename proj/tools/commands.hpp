#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "distkit/error.hpp"

namespace distkit::cli {

enum class Format { Csv, Json };

struct Global {
  std::uint64_t seed = 42;
  std::string out;  // empty: stdout
  Format format = Format::Csv;
  bool format_set = false;
};

struct SampleArgs {
  std::string dist;
  std::vector<double> params;
  std::size_t n = 0;
};

struct FitArgs {
  std::string dist;
  std::string input;
  std::string col;
  std::vector<std::string> cols;  // MvNormal and Product
  std::string weight_col;
  std::vector<std::string> fix;   // name=value
  std::vector<double> shift;      // one value, or one per column
  std::vector<std::string> components;
  std::vector<double> init;
  int max_iter = 5000;
  double tol = 1e-6;
  std::string trace;
};

struct EmArgs {
  std::string input;
  std::vector<std::string> cols;
  std::size_t k = 2;
  int max_iter = 500;
  double tol = 1e-4;
  double ridge = 1e-6;
  std::string trace;
  std::string responsibilities;
};

struct KdeArgs {
  std::string input;
  std::string col;
  std::string col2;
  std::optional<double> bandwidth;
  std::optional<double> bandwidth2;
  std::string kernel;
  std::vector<double> kparams;
  std::optional<std::size_t> gridsize;
};

struct HistArgs {
  std::string input;
  std::string col;
  std::string weight_col;
  std::size_t bins = 10;
  std::vector<double> edges;
  std::string closed = "right";
};

struct BenchArgs {
  std::size_t evaluations = 100000;
  std::size_t batch = 100;
};

void cmd_sample(const Global& g, const SampleArgs& a);
void cmd_fit(const Global& g, const FitArgs& a);
void cmd_em(const Global& g, const EmArgs& a);
void cmd_kde(const Global& g, const KdeArgs& a);
void cmd_hist(const Global& g, const HistArgs& a);
// Returns false when the correctness gate failed and no timings were written.
bool cmd_bench(const Global& g, const BenchArgs& a, std::ostream& table);

// 2 InvalidParameter/BadBandwidth, 3 DegenerateData, 4 NonPositive,
// 5 EmptyComponent, 6 NoCharacteristicFunction, 1 anything else.
int exit_code(ErrorCode code);

}  // namespace distkit::cli
