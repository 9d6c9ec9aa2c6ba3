#pragma once

#include <nlohmann/json.hpp>

#include "distkit/core.hpp"

namespace distkit {

// {"family": ..., "params": [...]}
nlohmann::json to_json(const DistributionDescriptor& desc);
DistributionDescriptor descriptor_from_json(const nlohmann::json& j);

// Univariate families use the descriptor form. MvNormal, Product and Mixture
// carry their own fields:
//   {"family":"MvNormal","mu":[...],"sigma":[[...],...]}
//   {"family":"Product","components":[descriptor,...]}
//   {"family":"Mixture","weights":[...],"components":[descriptor,...]}
nlohmann::json to_json(const Distribution& d);

// Inverse of to_json. Throws UnknownFamily, InvalidParameter or the
// constructor's own error.
DistributionPtr distribution_from_json(const nlohmann::json& j);

}  // namespace distkit
