#pragma once

// JSON encodings of jets, group elements, descriptors, expansions and reports.
// Decoders throw SchemaError on malformed input.

#include <json.hpp>

#include "invpde/expansion.hpp"
#include "invpde/group_actions.hpp"
#include "invpde/hypersurface_jets.hpp"
#include "invpde/pde_builder.hpp"
#include "invpde/verify_harness.hpp"

namespace invpde {

nlohmann::json to_json(const GraphJet& j);
GraphJet jet_from_json(const nlohmann::json& v);

nlohmann::json to_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& v);

// {"node": "tau", "index": 1}, {"node": "const", "value": 2},
// {"node": "mul", "args": [..]}, {"node": "pow", "args": [..], "exponent": 2}
nlohmann::json to_json(const InvariantExpr& e);
InvariantExpr expr_from_json(const nlohmann::json& v);

nlohmann::json to_json(const PdeDescriptor& d);
// Validates the expression against the geometry (InvalidExpr).
PdeDescriptor descriptor_from_json(const nlohmann::json& v);

nlohmann::json to_json(const ExpandedPolynomial& p);
ExpandedPolynomial expansion_from_json(const nlohmann::json& v);

nlohmann::json to_json(const Report& r);

}  // namespace invpde
