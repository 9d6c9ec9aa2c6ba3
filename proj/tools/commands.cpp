#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "distkit/bench.hpp"
#include "distkit/dataset.hpp"
#include "distkit/fit.hpp"
#include "distkit/mixture.hpp"
#include "distkit/nonparam.hpp"
#include "distkit/serialize.hpp"
#include "distkit/univariate.hpp"

namespace distkit::cli {

using nlohmann::json;

namespace {

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const Global& g, const json& j) {
  Output out(g.out);
  out.stream() << j.dump(2) << '\n';
}

std::ofstream open_file(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  return f;
}

std::vector<double> shifted(std::vector<double> v, double s) {
  for (double& x : v) x -= s;
  return v;
}

double shift_for(const std::vector<double>& shift, std::size_t j, std::size_t ncols) {
  if (shift.empty()) return 0.0;
  if (shift.size() == 1) return shift.front();
  if (shift.size() != ncols)
    throw Error(ErrorCode::InvalidParameter, "--shift takes one value or one per column");
  return shift[j];
}

Eigen::MatrixXd shifted_matrix(const Dataset& ds, const std::vector<std::string>& cols,
                               const std::vector<double>& shift) {
  Eigen::MatrixXd m = ds.matrix(cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    m.col(j).array() -= shift_for(shift, static_cast<std::size_t>(j), cols.size());
  return m;
}

void write_trace(const std::string& path, const std::vector<double>& trace) {
  std::vector<double> iter(trace.size());
  for (std::size_t i = 0; i < iter.size(); ++i) iter[i] = static_cast<double>(i);
  auto f = open_file(path);
  write_csv(f, {"iteration", "loglike"}, {iter, trace});
}

std::map<std::string, double> parse_fix(const std::vector<std::string>& fix) {
  std::map<std::string, double> out;
  for (const auto& s : fix) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::InvalidParameter, "--fix expects name=value, got \"" + s + "\"");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() - eq - 1)
      throw Error(ErrorCode::InvalidParameter, "--fix value in \"" + s + "\" is not a number");
    out[s.substr(0, eq)] = v;
  }
  return out;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter:
    case ErrorCode::BadBandwidth:
      return 2;
    case ErrorCode::DegenerateData:
      return 3;
    case ErrorCode::NonPositive:
      return 4;
    case ErrorCode::EmptyComponent:
      return 5;
    case ErrorCode::NoCharacteristicFunction:
      return 6;
    default:
      return 1;
  }
}

void cmd_sample(const Global& g, const SampleArgs& a) {
  const UnivariatePtr d = reconstruct({a.dist, a.params});
  Rng rng(g.seed);
  std::vector<double> xs(a.n);
  for (double& x : xs) x = d->rand(rng);
  if (g.format == Format::Json) {
    json j = to_json(d->params());
    j["n"] = a.n;
    j["samples"] = xs;
    write_json(g, j);
    return;
  }
  Output out(g.out);
  write_csv(out.stream(), {"x"}, {xs});
}

void cmd_fit(const Global& g, const FitArgs& a) {
  const Dataset ds = read_csv(a.input);
  json j;
  std::size_t n = 0;

  if (a.dist == "Product") {
    if (a.components.empty()) throw Error(ErrorCode::InvalidParameter, "Product needs --components");
    if (a.cols.size() != a.components.size())
      throw Error(ErrorCode::InvalidParameter, "--cols must name one column per component");
    const Eigen::MatrixXd data = shifted_matrix(ds, a.cols, a.shift);
    const ProductSpec spec = make_product_spec(a.components);
    GradientAscentConfig cfg;
    cfg.max_iter = a.max_iter;
    cfg.grad_tol = a.tol;
    cfg.scale_indices = spec.scale_indices;
    if (!a.init.empty()) {
      cfg.init = a.init;
    } else if (a.components != std::vector<std::string>{"Normal", "LogNormal"}) {
      throw Error(ErrorCode::InvalidParameter, "--init is required unless the components are Normal,LogNormal");
    }
    Rng rng(g.seed);
    const GradientAscentResult res = gradient_ascent_mle(spec.builder, data, cfg, rng);
    if (!a.trace.empty()) write_trace(a.trace, res.loglike_trace);
    j = to_json(res.distribution);
    j["loglikelihood"] = res.loglike_trace.back();
    j["n"] = static_cast<std::size_t>(data.rows());
    j["iterations"] = res.iterations;
    write_json(g, j);
    return;
  }

  FitRequest req;
  req.family = a.dist;
  req.fixed = parse_fix(a.fix);
  if (!a.weight_col.empty()) req.weights = ds.column(a.weight_col);
  DistributionPtr d;
  double ll = 0.0;
  if (a.dist == "MvNormal") {
    if (a.cols.empty()) throw Error(ErrorCode::InvalidParameter, "MvNormal needs --cols");
    req.matrix = shifted_matrix(ds, a.cols, a.shift);
    n = static_cast<std::size_t>(req.matrix.rows());
    d = fit_mle(req);
    ll = loglikelihood(static_cast<const MultivariateDistribution&>(*d), req.matrix,
                       req.weights ? std::span<const double>(*req.weights) : std::span<const double>{});
  } else {
    if (a.col.empty()) throw Error(ErrorCode::InvalidParameter, "--col is required");
    req.data = shifted(ds.column(a.col), shift_for(a.shift, 0, 1));
    n = req.data.size();
    d = fit_mle(req);
    ll = loglikelihood(static_cast<const UnivariateDistribution&>(*d), req.data,
                       req.weights ? std::span<const double>(*req.weights) : std::span<const double>{});
  }
  j = to_json(*d);
  j["loglikelihood"] = ll;
  j["n"] = n;
  j["iterations"] = nullptr;
  write_json(g, j);
}

void cmd_em(const Global& g, const EmArgs& a) {
  const Dataset ds = read_csv(a.input);
  if (a.cols.empty()) throw Error(ErrorCode::InvalidParameter, "--cols is required");
  const Eigen::MatrixXd X = ds.matrix(a.cols);
  EmConfig cfg;
  cfg.k = a.k;
  cfg.max_iter = a.max_iter;
  cfg.loglike_diff = a.tol;
  cfg.ridge = a.ridge;
  const EmResult res = em_fit(X, cfg);

  json j = to_json(res.model);
  j["loglike"] = res.loglike;
  j["iterations"] = res.iterations;
  std::string trace = a.trace;
  if (trace.empty() && !g.out.empty()) trace = g.out + ".trace.csv";
  if (!trace.empty()) {
    write_trace(trace, res.trace);
    j["trace_file"] = trace;
  } else {
    j["trace"] = res.trace;
  }
  if (!a.responsibilities.empty()) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    for (Eigen::Index k = 0; k < res.responsibilities.cols(); ++k) {
      header.push_back("z" + std::to_string(k + 1));
      cols.emplace_back(res.responsibilities.col(k).data(),
                        res.responsibilities.col(k).data() + res.responsibilities.rows());
    }
    auto f = open_file(a.responsibilities);
    write_csv(f, header, std::vector<std::span<const double>>(cols.begin(), cols.end()));
    j["responsibilities_file"] = a.responsibilities;
  }
  write_json(g, j);
}

void cmd_kde(const Global& g, const KdeArgs& a) {
  const Dataset ds = read_csv(a.input);
  const std::vector<double> xs = ds.column(a.col);

  if (!a.col2.empty()) {
    if (!a.kernel.empty()) throw Error(ErrorCode::InvalidParameter, "2-D estimates use the Gaussian kernel only");
    const std::vector<double> ys = ds.column(a.col2);
    Kde2dOptions opts;
    opts.bandwidth_x = a.bandwidth;
    opts.bandwidth_y = a.bandwidth2 ? a.bandwidth2 : a.bandwidth;
    if (a.gridsize) opts.gridsize = *a.gridsize;
    const Kde2dEstimate k = kde2d(xs, ys, opts);
    if (g.format == Format::Json) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < k.density.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index c = 0; c < k.density.cols(); ++c) r.push_back(k.density(i, c));
        rows.push_back(r);
      }
      write_json(g, json{{"x", k.x}, {"y", k.y}, {"density", rows}, {"bandwidth", {k.bandwidth_x, k.bandwidth_y}}});
      return;
    }
    std::vector<double> gx, gy, gd;
    for (std::size_t i = 0; i < k.x.size(); ++i)
      for (std::size_t c = 0; c < k.y.size(); ++c) {
        gx.push_back(k.x[i]);
        gy.push_back(k.y[c]);
        gd.push_back(k.density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)));
      }
    Output out(g.out);
    write_csv(out.stream(), {"x", "y", "density"}, {gx, gy, gd});
    return;
  }

  KdeOptions opts;
  opts.bandwidth = a.bandwidth;
  if (!a.kernel.empty()) opts.kernel = reconstruct({a.kernel, a.kparams});
  if (a.gridsize) opts.gridsize = *a.gridsize;
  const KdeEstimate k = kde(xs, opts);
  if (g.format == Format::Json) {
    write_json(g, json{{"x", k.x}, {"density", k.density}, {"bandwidth", k.bandwidth}});
    return;
  }
  Output out(g.out);
  write_csv(out.stream(), {"x", "density"}, {k.x, k.density});
}

void cmd_hist(const Global& g, const HistArgs& a) {
  const Dataset ds = read_csv(a.input);
  const std::vector<double> xs = ds.column(a.col);
  std::vector<double> w;
  if (!a.weight_col.empty()) w = ds.column(a.weight_col);
  Closed closed;
  if (a.closed == "right") {
    closed = Closed::Right;
  } else if (a.closed == "left") {
    closed = Closed::Left;
  } else {
    throw Error(ErrorCode::InvalidParameter, "--closed must be left or right");
  }
  BinSpec spec;
  spec.nbins = a.bins;
  if (!a.edges.empty()) spec.edges = a.edges;
  const Histogram h = histogram_fit(xs, spec, closed, w);
  if (g.format == Format::Csv && g.format_set) {
    std::vector<double> lo(h.edges.begin(), h.edges.end() - 1), hi(h.edges.begin() + 1, h.edges.end());
    Output out(g.out);
    write_csv(out.stream(), {"lo", "hi", "count"}, {lo, hi, h.counts});
    return;
  }
  write_json(g, json{{"edges", h.edges}, {"counts", h.counts}, {"closed", a.closed}, {"total", h.total}});
}

bool cmd_bench(const Global& g, const BenchArgs& a, std::ostream& table) {
  Rng rng(g.seed);
  BenchOptions opts;
  opts.evaluations = a.evaluations;
  opts.batch = a.batch;
  const BenchReport r = run_bench(rng, opts);

  json cases = json::array();
  for (const auto& c : r.cases) {
    json jc{{"name", c.name},
            {"ncomponents", c.ncomponents},
            {"heterogeneous", c.heterogeneous},
            {"max_rel_error", c.max_rel_error},
            {"reference_ns", c.reference_ns},
            {"reference_ratio", c.reference_ratio}};
    if (r.gate_passed) {
      jc["library_ns"] = c.library_ns;
      jc["manual_ns"] = c.manual_ns;
      jc["ratio"] = c.ratio;
    }
    cases.push_back(jc);
  }

  table << "x = " << r.x << ", correctness gate (" << r.gate_tolerance
        << " relative): " << (r.gate_passed ? "passed" : "FAILED") << '\n';
  if (!r.gate_passed) {
    for (const auto& c : r.cases) table << "  " << c.name << ": max relative error " << c.max_rel_error << '\n';
    table << "timings withheld\n";
    write_json(g, json{{"x", r.x}, {"gate_passed", false}, {"cases", cases}});
    return false;
  }
  table << std::left << std::setw(14) << "case" << std::right << std::setw(7) << "K" << std::setw(14)
        << "library ns" << std::setw(14) << "manual ns" << std::setw(8) << "ratio" << std::setw(14)
        << "ref ns" << std::setw(10) << "ref ratio" << '\n';
  for (const auto& c : r.cases)
    table << std::left << std::setw(14) << c.name << std::right << std::setw(7) << c.ncomponents << std::setw(14)
          << std::fixed << std::setprecision(1) << c.library_ns << std::setw(14) << c.manual_ns << std::setw(8)
          << std::setprecision(2) << c.ratio << std::setw(14) << std::setprecision(0) << c.reference_ns
          << std::setw(10) << std::setprecision(2) << c.reference_ratio << '\n';
  table << std::defaultfloat;

  if (g.format == Format::Csv && g.format_set) {
    Output out(g.out);
    out.stream() << "name,ncomponents,heterogeneous,library_ns,manual_ns,ratio,reference_ns,reference_ratio\n";
    for (const auto& c : r.cases)
      out.stream() << c.name << ',' << c.ncomponents << ',' << (c.heterogeneous ? 1 : 0) << ','
                   << format_double(c.library_ns) << ',' << format_double(c.manual_ns) << ','
                   << format_double(c.ratio) << ',' << format_double(c.reference_ns) << ','
                   << format_double(c.reference_ratio) << '\n';
    return true;
  }
  write_json(g, json{{"x", r.x}, {"gate_passed", true}, {"gate_tolerance", r.gate_tolerance}, {"cases", cases}});
  return true;
}

}  // namespace distkit::cli
