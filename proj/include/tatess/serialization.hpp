#pragma once

#include <json.hpp>

#include "tatess/graded_algebra.hpp"
#include "tatess/picard_bounds.hpp"
#include "tatess/range_comparison.hpp"
#include "tatess/spectral_sequence.hpp"

namespace tatess {

using Json = nlohmann::ordered_json;

/// {prime, generators: [{name, s, t, domain}], coefficients?, localizing?}
Json to_json(const AlgebraPresentation& pres);
/// Throws std::invalid_argument on a malformed document.
AlgebraPresentation presentation_from_json(const Json& doc);

Json to_json(const AlgebraPresentation& pres, const DifferentialRule& rule);
DifferentialRule rule_from_json(const AlgebraPresentation& pres, const Json& doc);

Json to_json(const PageWindow& window);
PageWindow window_from_json(const Json& doc);

Json to_json(const RangeBound& bound);
Json to_json(const VanishingLine& line);
Json to_json(const PermanentCycleFilter& filter);
Json to_json(const PicardFiltrationReport& report);

}  // namespace tatess
