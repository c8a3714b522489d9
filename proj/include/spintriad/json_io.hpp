#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spintriad/bounds.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/tensor.hpp"

namespace spintriad {

using Json = nlohmann::json;

// Wire schema: {"shape":[2,2,...], "re":[[...]], "im":[[...]]} for operators,
// 1-d "re"/"im" arrays for kets.
Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json ket_to_json(const Ket& k);
Ket ket_from_json(const Json& j);

// {"elements":[...], "space":{...}, "labels":[...]}; space defaults to the
// identity inferred from the first element, labels are optional.
Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json fidelity_report_to_json(const FidelityReport& r);
Json bound_report_to_json(const BoundReport& r);

Json load_json_file(const std::string& path);

}  // namespace spintriad
