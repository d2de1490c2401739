#pragma once

#include "json.hpp"
#include "sgr/closure.hpp"
#include "sgr/core.hpp"
#include "sgr/graph.hpp"
#include "sgr/pmap.hpp"

// JSON mirrors of the text formats plus result types that have no text
// grammar of their own (reports, verdicts). Every *_json / *_from_json pair
// round-trips losslessly. Variable sets are arrays of names in universe
// order, so output is deterministic.

namespace sgr {

using Json = nlohmann::ordered_json;

Json varset_json(const Universe& u, VarSet s);
VarSet varset_from_json(const Universe& u, const Json& j);

Json triplet_json(const Universe& u, const Triplet& t);
Triplet triplet_from_json(const Universe& u, const Json& j);

Json relation_json(const Relation& r);
Relation relation_from_json(const Json& j);

Json dag_json(const Dag& g);
Dag dag_from_json(const Json& j);

Json representation_json(const Representation& rep);
Representation representation_from_json(const Json& j);

Json report_json(const ConditionReport& report);
ConditionReport report_from_json(const Json& j);

Json verdict_json(SeparationVerdict v);
SeparationVerdict verdict_from_json(const Json& j);

Json pmap_verdict_json(const PMapVerdict& v);
PMapVerdict pmap_verdict_from_json(const Json& j);

}  // namespace sgr
