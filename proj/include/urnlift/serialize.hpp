#pragma once

#include <json.hpp>

#include "urnlift/measure.hpp"
#include "urnlift/process.hpp"

namespace urnlift {

using json = nlohmann::json;

json space_to_json(const ColourSpace& space);
ColourSpace space_from_json(const json& j);

/// Colours are space-directed on the way in: a bare integer is an index on a
/// finite space but a real on the unit interval.
json colour_to_json(const Colour& c);
Colour colour_from_json(const json& j, const ColourSpace& space);

json payload_to_json(const Payload& p);
Payload payload_from_json(const json& j, const ColourSpace& space);

/// {"space": ..., "components": [{"w": ..., "atom": ...} | {"w": ...,
/// "family": ..., "params": ...} | {"w": ..., "product_lambda": ...}]}
json measure_to_json(const FiniteMeasure& mu);
FiniteMeasure measure_from_json(const json& j);

json testset_to_json(const TestSet& set);
TestSet testset_from_json(const json& j, const ColourSpace& space);

json statistic_to_json(const Statistic& stat);
Statistic statistic_from_json(const json& j, const ColourSpace& space);

}  // namespace urnlift
