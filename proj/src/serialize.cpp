#include "distkit/serialize.hpp"

#include "distkit/mixture.hpp"
#include "distkit/multivariate.hpp"

namespace distkit {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorCode::InvalidParameter, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::vector<double> numbers(const json& j, const char* name) {
  const json& a = field(j, name);
  if (!a.is_array()) throw Error(ErrorCode::InvalidParameter, std::string("\"") + name + "\" must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidParameter, std::string("\"") + name + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

json to_json(const DistributionDescriptor& desc) {
  return json{{"family", desc.family}, {"params", desc.params}};
}

DistributionDescriptor descriptor_from_json(const json& j) {
  const json& f = field(j, "family");
  if (!f.is_string()) throw Error(ErrorCode::InvalidParameter, "\"family\" must be a string");
  return {f.get<std::string>(), numbers(j, "params")};
}

json to_json(const Distribution& d) {
  if (const auto* m = dynamic_cast<const UnivariateMixture*>(&d)) {
    json comps = json::array();
    for (const auto& c : m->components()) comps.push_back(to_json(*c));
    return json{{"family", "Mixture"}, {"weights", m->probs()}, {"components", comps}};
  }
  if (const auto* m = dynamic_cast<const MultivariateMixture*>(&d)) {
    json comps = json::array();
    for (const auto& c : m->components()) comps.push_back(to_json(*c));
    return json{{"family", "Mixture"}, {"weights", m->probs()}, {"components", comps}};
  }
  if (const auto* u = dynamic_cast<const UnivariateDistribution*>(&d)) return to_json(u->params());
  if (const auto* n = dynamic_cast<const MvNormal*>(&d)) {
    json sigma = json::array();
    for (Eigen::Index i = 0; i < n->cov().rows(); ++i) sigma.push_back(vector_json(n->cov().row(i).transpose()));
    return json{{"family", "MvNormal"}, {"mu", vector_json(n->mean())}, {"sigma", sigma}};
  }
  if (const auto* p = dynamic_cast<const ProductDistribution*>(&d)) {
    json comps = json::array();
    for (const auto& c : p->components()) comps.push_back(to_json(c->params()));
    return json{{"family", "Product"}, {"components", comps}};
  }
  throw Error(ErrorCode::Unsupported, "no JSON form for family " + d.family());
}

DistributionPtr distribution_from_json(const json& j) {
  const json& f = field(j, "family");
  if (!f.is_string()) throw Error(ErrorCode::InvalidParameter, "\"family\" must be a string");
  const std::string family = f.get<std::string>();

  if (family == "MvNormal") {
    const std::vector<double> mu = numbers(j, "mu");
    const json& rows = field(j, "sigma");
    const auto d = static_cast<Eigen::Index>(mu.size());
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
      throw Error(ErrorCode::DimensionMismatch, "sigma must be a d x d array");
    Eigen::MatrixXd sigma(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
        throw Error(ErrorCode::DimensionMismatch, "sigma must be a d x d array");
      for (Eigen::Index k = 0; k < d; ++k) sigma(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return std::make_shared<MvNormal>(Eigen::Map<const Eigen::VectorXd>(mu.data(), d), sigma);
  }
  if (family == "Product") {
    std::vector<UnivariatePtr> comps;
    for (const auto& c : field(j, "components")) comps.push_back(reconstruct(descriptor_from_json(c)));
    return std::make_shared<ProductDistribution>(std::move(comps));
  }
  if (family == "Mixture") {
    std::vector<double> weights = numbers(j, "weights");
    std::vector<DistributionPtr> parts;
    for (const auto& c : field(j, "components")) parts.push_back(distribution_from_json(c));
    if (parts.empty()) throw Error(ErrorCode::EmptyComponents, "mixture needs at least one component");
    if (std::dynamic_pointer_cast<const UnivariateDistribution>(parts.front())) {
      std::vector<UnivariatePtr> comps;
      for (const auto& p : parts) {
        auto u = std::dynamic_pointer_cast<const UnivariateDistribution>(p);
        if (!u) throw Error(ErrorCode::MixedVariateForms, "mixture components must share their variate form");
        comps.push_back(std::move(u));
      }
      return std::make_shared<UnivariateMixture>(std::move(comps), std::move(weights));
    }
    std::vector<MultivariatePtr> comps;
    for (const auto& p : parts) {
      auto m = std::dynamic_pointer_cast<const MultivariateDistribution>(p);
      if (!m) throw Error(ErrorCode::MixedVariateForms, "mixture components must share their variate form");
      comps.push_back(std::move(m));
    }
    return std::make_shared<MultivariateMixture>(std::move(comps), std::move(weights));
  }
  return reconstruct(descriptor_from_json(j));
}

}  // namespace distkit
