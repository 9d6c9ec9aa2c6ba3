#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace distkit::cli;

int main(int argc, char** argv) {
  CLI::App app{"distkit: sample, fit and estimate probability distributions"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  std::string format;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw samples from a distribution");
  sample->add_option("--dist", sa.dist, "Family name")->required();
  sample->add_option("--params", sa.params, "Parameters")->delimiter(',')->allow_extra_args(false);
  sample->add_option("--n", sa.n, "Number of draws")->required();

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit to a CSV column");
  fit->add_option("--dist", fa.dist, "Family name, MvNormal or Product")->required();
  fit->add_option("--input", fa.input, "CSV file")->required();
  fit->add_option("--col", fa.col, "Column to fit");
  fit->add_option("--cols", fa.cols, "Columns for MvNormal or Product")->delimiter(',');
  fit->add_option("--weight-col", fa.weight_col, "Column of observation weights");
  fit->add_option("--fix", fa.fix, "Pin a parameter, name=value");
  fit->add_option("--shift", fa.shift, "Constant subtracted before fitting (one per column allowed)")
      ->delimiter(',')->allow_extra_args(false);
  fit->add_option("--components", fa.components, "Product component families")->delimiter(',');
  fit->add_option("--init", fa.init, "Product starting parameters")->delimiter(',')->allow_extra_args(false);
  fit->add_option("--max-iter", fa.max_iter, "Product gradient-ascent iteration cap")->capture_default_str();
  fit->add_option("--tol", fa.tol, "Product gradient tolerance")->capture_default_str();
  fit->add_option("--trace", fa.trace, "Product log-likelihood trace CSV");

  EmArgs ea;
  auto* em = app.add_subcommand("em", "Gaussian mixture by expectation-maximization");
  em->add_option("--input", ea.input, "CSV file")->required();
  em->add_option("--cols", ea.cols, "Columns (log:NAME for a log transform)")->delimiter(',')->required();
  em->add_option("--k", ea.k, "Number of components")->capture_default_str();
  em->add_option("--max-iter", ea.max_iter, "Iteration cap")->capture_default_str();
  em->add_option("--tol", ea.tol, "Log-likelihood change that stops the loop")->capture_default_str();
  em->add_option("--ridge", ea.ridge, "Added to covariance diagonals")->capture_default_str();
  em->add_option("--trace", ea.trace, "Log-likelihood trace CSV (default: OUT.trace.csv)");
  em->add_option("--responsibilities", ea.responsibilities, "Responsibilities CSV");

  KdeArgs ka;
  double bw = 0.0, bw2 = 0.0;
  std::size_t gridsize = 0;
  auto* kde = app.add_subcommand("kde", "Kernel density estimate on a grid");
  kde->add_option("--input", ka.input, "CSV file")->required();
  kde->add_option("--col", ka.col, "Column")->required();
  kde->add_option("--col2", ka.col2, "Second column for a 2-D estimate");
  auto* bw_opt = kde->add_option("--bandwidth", bw, "Bandwidth (default: Silverman)");
  auto* bw2_opt = kde->add_option("--bandwidth2", bw2, "Bandwidth of the second column");
  kde->add_option("--kernel", ka.kernel, "Kernel family");
  kde->add_option("--kparams", ka.kparams, "Kernel parameters")->delimiter(',')->allow_extra_args(false);
  auto* grid_opt = kde->add_option("--gridsize", gridsize, "Grid points per axis");

  HistArgs ha;
  auto* hist = app.add_subcommand("hist", "Histogram of a column");
  hist->add_option("--input", ha.input, "CSV file")->required();
  hist->add_option("--col", ha.col, "Column")->required();
  hist->add_option("--weight-col", ha.weight_col, "Column of observation weights");
  hist->add_option("--bins", ha.bins, "Number of equal-width bins")->capture_default_str();
  hist->add_option("--edges", ha.edges, "Explicit bin edges")->delimiter(',')->allow_extra_args(false);
  hist->add_option("--closed", ha.closed, "Closed side of each bin")->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Mixture pdf benchmark");
  bench->add_option("--evals", ba.evaluations, "Timed evaluations per path and case")->capture_default_str();
  bench->add_option("--batch", ba.batch, "Evaluations per timed batch")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (!format.empty()) {
    g.format = format == "json" ? Format::Json : Format::Csv;
    g.format_set = true;
  }
  if (*bw_opt) ka.bandwidth = bw;
  if (*bw2_opt) ka.bandwidth2 = bw2;
  if (*grid_opt) ka.gridsize = gridsize;

  try {
    if (*sample) cmd_sample(g, sa);
    if (*fit) cmd_fit(g, fa);
    if (*em) cmd_em(g, ea);
    if (*kde) cmd_kde(g, ka);
    if (*hist) cmd_hist(g, ha);
    if (*bench && !cmd_bench(g, ba, std::cerr)) return 1;
  } catch (const distkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == distkit::ErrorCode::EmptyComponent) std::cerr << "hint: try a smaller --k\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
