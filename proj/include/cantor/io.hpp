#pragma once

#include <json.hpp>

#include "cantor/bratteli.hpp"
#include "cantor/fullgroup.hpp"
#include "cantor/thompson.hpp"

namespace cantor {

using Json = nlohmann::json;

SpaceSpec space_spec_from_json(const Json& j);
Json space_spec_to_json(const SpaceSpec& spec);

ClopenSet clopen_from_json(const SpacePtr& space, const Json& j);
Json clopen_to_json(const ClopenSet& s);

FullGroupElement element_from_json(const SpacePtr& space, const Json& j);
Json element_to_json(const FullGroupElement& g);

ThompsonTable table_from_json(const Json& j);
Json table_to_json(const ThompsonTable& t);

Json kr_to_json(const KRPartition& kr);

BratteliDiagram bratteli_from_json(const Json& j);
Json bratteli_to_json(const BratteliDiagram& d);

Json growth_to_json(const GrowthReport& r);
Json schreier_to_json(const SchreierGraph& g);

std::string bratteli_dot(const BratteliDiagram& d);
std::string schreier_dot(const SchreierGraph& g);

/// Parses a JSON file, converting parser failures into ParseError with the
/// path and position.
Json load_json(const std::string& path);

}  // namespace cantor
