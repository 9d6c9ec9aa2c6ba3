#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "distkit/fit.hpp"
#include "distkit/mixture.hpp"
#include "distkit/nonparam.hpp"
#include "distkit/serialize.hpp"
#include "distkit/univariate.hpp"

namespace py = pybind11;
using namespace distkit;

namespace {

using Vec = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Vec& a) { return {a.data(), a.data() + a.size()}; }

Vec to_array(const std::vector<double>& v) {
  Vec out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::shared_ptr<const UnivariateDistribution> as_univariate(const DistributionPtr& d) {
  auto u = std::dynamic_pointer_cast<const UnivariateDistribution>(d);
  if (!u) throw Error(ErrorCode::InvalidParameter, "expected a univariate distribution");
  return u;
}

// Scalars map to floats, anything array-like to an array of the same shape.
template <class F>
py::object elementwise(const py::object& x, F f) {
  if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) return py::float_(f(x.cast<double>()));
  Vec a = Vec::ensure(x);
  if (!a) throw py::error_already_set();
  Vec out(std::vector<py::ssize_t>(a.shape(), a.shape() + a.ndim()));
  const double* in = a.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < a.size(); ++i) o[i] = f(in[i]);
  return std::move(out);
}

py::dict em_to_dict(const EmResult& r) {
  py::list means, covs;
  for (const auto& c : r.model.components()) {
    const auto& m = static_cast<const MvNormal&>(*c);
    means.append(Eigen::VectorXd(m.mean()));
    covs.append(Eigen::MatrixXd(m.cov()));
  }
  py::dict out;
  out["weights"] = r.model.probs();
  out["means"] = means;
  out["covs"] = covs;
  out["loglike"] = r.loglike;
  out["iterations"] = r.iterations;
  out["trace"] = r.trace;
  out["responsibilities"] = r.responsibilities;
  return out;
}

}  // namespace

PYBIND11_MODULE(_distkit, m) {
  m.doc() = "Probability distributions, fitting, mixtures and density estimation.";

  // Message text is "Code: detail".
  py::register_exception<Error>(m, "DistkitError", PyExc_ValueError);

  py::class_<UnivariateDistribution, std::shared_ptr<UnivariateDistribution>>(m, "Distribution")
      .def_property_readonly("family", &UnivariateDistribution::family)
      .def_property_readonly("params", [](const UnivariateDistribution& d) { return d.params().params; })
      .def_property_readonly("discrete",
                             [](const UnivariateDistribution& d) { return d.value_support() == ValueSupport::Discrete; })
      .def("pdf", [](const UnivariateDistribution& d, const py::object& x) {
        return elementwise(x, [&](double v) { return d.pdf(v); });
      })
      .def("logpdf", [](const UnivariateDistribution& d, const py::object& x) {
        return elementwise(x, [&](double v) { return d.logpdf(v); });
      })
      .def("cdf", [](const UnivariateDistribution& d, const py::object& x) {
        return elementwise(x, [&](double v) { return d.cdf(v); });
      })
      .def("quantile", [](const UnivariateDistribution& d, const py::object& p) {
        return elementwise(p, [&](double v) { return d.quantile(v); });
      })
      .def("cf", &UnivariateDistribution::cf, py::arg("t"))
      .def("mean", &UnivariateDistribution::mean)
      .def("var", &UnivariateDistribution::var)
      .def(
          "sample",
          [](const UnivariateDistribution& d, std::size_t n, std::uint64_t seed) {
            Rng rng(seed);
            return to_array(sample_many(d, rng, n));
          },
          py::arg("n"), py::arg("seed") = 42)
      .def("loglikelihood",
           [](const UnivariateDistribution& d, const Vec& x) {
             const auto v = to_vector(x);
             return loglikelihood(d, v);
           })
      .def("to_json", [](const UnivariateDistribution& d) { return to_json(d).dump(); })
      .def("__repr__", [](const UnivariateDistribution& d) { return to_json(d).dump(); });

  m.def(
      "distribution",
      [](const std::string& family, std::vector<double> params) {
        return std::const_pointer_cast<UnivariateDistribution>(reconstruct({family, std::move(params)}));
      },
      py::arg("family"), py::arg("params"), "Build a univariate distribution from its family name and parameters.");

  m.def(
      "from_json",
      [](const std::string& text) {
        return std::const_pointer_cast<UnivariateDistribution>(
            as_univariate(distribution_from_json(nlohmann::json::parse(text))));
      },
      py::arg("text"));

  m.def(
      "mixture",
      [](const std::vector<std::shared_ptr<UnivariateDistribution>>& comps, std::vector<double> weights) {
        std::vector<UnivariatePtr> c(comps.begin(), comps.end());
        return std::static_pointer_cast<UnivariateDistribution>(
            std::make_shared<UnivariateMixture>(mixture_new(std::move(c), std::move(weights))));
      },
      py::arg("components"), py::arg("weights"));

  m.def(
      "fit",
      [](const std::string& family, const Vec& data, std::optional<Vec> weights,
         std::map<std::string, double> fixed) {
        FitRequest req{family, to_vector(data), {}, std::nullopt, std::move(fixed)};
        if (weights) req.weights = to_vector(*weights);
        return std::const_pointer_cast<UnivariateDistribution>(as_univariate(fit_mle(req)));
      },
      py::arg("family"), py::arg("data"), py::arg("weights") = py::none(),
      py::arg("fixed") = std::map<std::string, double>{}, "Closed-form maximum likelihood fit.");

  m.def(
      "fit_mvnormal",
      [](const Eigen::MatrixXd& x) {
        const MvNormal d = fit_mvnormal(x);
        return py::make_tuple(Eigen::VectorXd(d.mean()), Eigen::MatrixXd(d.cov()));
      },
      py::arg("x"), "Mean and biased covariance of the rows of x.");

  m.def(
      "kde",
      [](const Vec& data, std::optional<double> bandwidth, std::size_t gridsize) {
        KdeOptions o;
        o.bandwidth = bandwidth;
        o.gridsize = gridsize;
        const auto v = to_vector(data);
        const KdeEstimate k = kde(v, o);
        return py::make_tuple(to_array(k.x), to_array(k.density), k.bandwidth);
      },
      py::arg("data"), py::arg("bandwidth") = py::none(), py::arg("gridsize") = 2048,
      "Gaussian-kernel density estimate; returns (grid, density, bandwidth).");

  m.def(
      "histogram",
      [](const Vec& data, std::size_t bins, std::optional<std::vector<double>> edges, const std::string& closed) {
        BinSpec spec;
        spec.nbins = bins;
        spec.edges = std::move(edges);
        if (closed != "left" && closed != "right")
          throw Error(ErrorCode::InvalidParameter, "closed must be left or right");
        const auto v = to_vector(data);
        const Histogram h = histogram_fit(v, spec, closed == "left" ? Closed::Left : Closed::Right);
        return py::make_tuple(to_array(h.edges), to_array(h.counts));
      },
      py::arg("data"), py::arg("bins") = 10, py::arg("edges") = py::none(), py::arg("closed") = "right");

  m.def(
      "em",
      [](const Eigen::MatrixXd& x, std::size_t k, int max_iter, double tol, double ridge) {
        EmConfig cfg;
        cfg.k = k;
        cfg.max_iter = max_iter;
        cfg.loglike_diff = tol;
        cfg.ridge = ridge;
        return em_to_dict(em_fit(x, cfg));
      },
      py::arg("x"), py::arg("k") = 2, py::arg("max_iter") = 500, py::arg("tol") = 1e-4, py::arg("ridge") = 1e-6,
      "Gaussian mixture by expectation maximization on the rows of x.");
}
