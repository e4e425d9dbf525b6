#pragma once

// JSON views of the public value types.  Rationals are always "p/q" strings.

#include "tautdr/bipartite.hpp"
#include "tautdr/localization.hpp"
#include "tautdr/pixton.hpp"
#include "tautdr/stable_graph.hpp"
#include "tautdr/taut_class.hpp"

#include <json.hpp>

namespace tautdr::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const StableGraph& g);
/// Accepts the same schema; throws InvalidInput on malformed input.
StableGraph stable_graph_from_json(const Json& j);

Json to_json(const TautClass& x);
Json to_json(const RTautClass& x);

Json to_json(const RPolynomialClass& c, const DRProblem& p);
Json to_json(const VanishingReport& r);

Json to_json(const BipartiteGraph& G);
Json to_json(const SymbolPolynomial& p);

}  // namespace tautdr::json_io
