#ifndef RATREC_JSON_IO_HPP
#define RATREC_JSON_IO_HPP

#include <json.hpp>
#include <optional>

#include "ratrec/flatten.hpp"
#include "ratrec/qbf.hpp"
#include "ratrec/recsys.hpp"
#include "ratrec/zeroness.hpp"

namespace ratrec {

using Json = nlohmann::json;

Json field_to_json(const FieldTag& field);
FieldTag field_from_json(const Json& j);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// One system document: {"field", "names", "main", "extended", "updates",
/// "initial"} plus an optional "meta" object preserved verbatim.
struct SystemFile {
    RecSystem system;
    InitialCondition init;
    Json meta;  // null when absent
};

SystemFile system_from_json(const Json& j,
                            std::optional<FieldTag> field_override = std::nullopt);
Json system_to_json(const SystemFile& f);

PRecurrence precurrence_from_json(const Json& j);

Json verdict_to_json(const ZeronessVerdict& v);
Json flatten_result_to_json(const FlattenResult& r);
/// The reduction as a loadable system document with a "meta" block carrying
/// k, horizon and the sequence map.
Json reduction_to_json(const ReductionOutput& r);

/// Canonical serialization used for all emitted documents.
std::string dump_canonical(const Json& j);

}  // namespace ratrec

#endif
