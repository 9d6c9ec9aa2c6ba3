#include <functional>
#include <map>

#include "distkit/univariate.hpp"

namespace distkit {

namespace {

struct FamilyEntry {
  std::size_t arity;  // 0: variadic
  std::function<UnivariatePtr(const std::vector<double>&)> make;
};

const std::map<std::string, FamilyEntry>& registry() {
  static const std::map<std::string, FamilyEntry> table{
      {"Uniform", {2, [](const auto& p) { return std::make_shared<Uniform>(p[0], p[1]); }}},
      {"Normal", {2, [](const auto& p) { return std::make_shared<Normal>(p[0], p[1]); }}},
      {"LogNormal", {2, [](const auto& p) { return std::make_shared<LogNormal>(p[0], p[1]); }}},
      {"Gamma", {2, [](const auto& p) { return std::make_shared<Gamma>(p[0], p[1]); }}},
      {"Exponential", {1, [](const auto& p) { return std::make_shared<Exponential>(p[0]); }}},
      {"Cauchy", {2, [](const auto& p) { return std::make_shared<Cauchy>(p[0], p[1]); }}},
      {"Triangular",
       {3,
        [](const auto& p) -> UnivariatePtr {
          if (p.size() == 2) return std::make_shared<Triangular>(p[0], p[1]);
          return std::make_shared<Triangular>(p[0], p[1], p[2]);
        }}},
      {"Poisson", {1, [](const auto& p) { return std::make_shared<Poisson>(p[0]); }}},
      {"Bernoulli", {1, [](const auto& p) { return std::make_shared<Bernoulli>(p[0]); }}},
      {"Categorical", {0, [](const auto& p) { return std::make_shared<Categorical>(p); }}},
  };
  return table;
}

}  // namespace

std::size_t family_arity(const std::string& family) {
  const auto it = registry().find(family);
  if (it == registry().end()) throw Error(ErrorCode::UnknownFamily, "unknown family '" + family + "'");
  return it->second.arity;
}

UnivariatePtr reconstruct(const DistributionDescriptor& desc) {
  const std::size_t arity = family_arity(desc.family);
  const std::size_t n = desc.params.size();
  // Triangular also accepts (a, b) with the mode at the midpoint.
  const bool ok = arity == 0 ? n > 0 : (n == arity || (desc.family == "Triangular" && n == 2));
  if (!ok) {
    throw Error(ErrorCode::InvalidParameter,
                desc.family + " expects " + (arity == 0 ? std::string("at least 1") : std::to_string(arity)) +
                    " parameters, got " + std::to_string(n));
  }
  return registry().at(desc.family).make(desc.params);
}

}  // namespace distkit
