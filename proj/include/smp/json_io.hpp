#pragma once

// JSON forms of frequency sets, certificate vectors, evaluation settings and
// certificates. Arbitrary-precision integers are written as JSON integers
// when they fit in 64 bits and as decimal strings otherwise.

#include "smp/constructions.hpp"
#include "smp/frequency_set.hpp"

#include "json.hpp"

#include <string>

namespace smp {

using Json = nlohmann::ordered_json;

/// Parses text; throws DomainError carrying the parser's line and column.
Json parse_json(const std::string& text);

Json to_json(const FrequencySet& set);
/// {"dim": d, "points": [[...], ...], "generator"?: {"kind", "params"}}
FrequencySet frequency_set_from_json(const Json& j);

Json to_json(const CVector& cv);
CVector cvector_from_json(const Json& j);

Json to_json(const EvalConfig& cfg);
/// Missing fields keep their defaults.
EvalConfig eval_config_from_json(const Json& j);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const Verification& v);

Json to_json(const AbundantResult& res);

}  // namespace smp
