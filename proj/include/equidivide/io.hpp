#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "equidivide/cake_model.hpp"
#include "equidivide/instance.hpp"

namespace equidivide {

using Json = nlohmann::ordered_json;

// Parse failures and schema violations throw InputError.
Json read_json_file(const std::string& path);

// {"m": int, "kind": "table"|"additive"|"cut"|"density"|"quasilinear", ...}
// Table values are keyed by decimal bitmask strings; graph edges are
// one-based vertex pairs. An optional "lambda" supplies the marginal bound.
// "m" may be omitted when default_m >= 0 (valuations nested in an instance).
SetFunction set_function_from_json(const Json& j, int default_m = -1);
Json set_function_to_json(const SetFunction& f);

// {"n": int, "m": int, "valuations": [...]} or {"n", "m", "identical": {...}}.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

// Per-agent density cakes: {"n": int, "cakes": [{"breakpoints": [...],
// "densities": [...]} | {"kind": "length"} ...]} or {"n", "identical": cake}.
bool is_cake_instance(const Json& j);
std::vector<CakeValuation> cakes_from_json(const Json& j);

// {"bundles": [[1-based items]...], "values": [...], "gap": r}
Json allocation_to_json(const Allocation& a);
std::vector<SubsetId> bundles_from_json(const Json& j, int m);

// {"cuts": ["num/den", ...], "owners": [...] (1-based agents), ...}
Json division_to_json(const CakeDivision& d);
CakeDivision division_from_json(const Json& j);

}  // namespace equidivide
