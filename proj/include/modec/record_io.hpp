#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "modec/decoders.hpp"

#include "json.hpp"

namespace modec {

// =============================================================================
// Lossless JSON round-trip for generation records.
//
// One record per JSONL line:
//   {"prompt": [..], "generated": [..], "traces": [..],
//    "total_model_calls": N, "terminated_by": "...", "seed": N}
// Trace objects carry step/branch/token/model_calls and, for
// penalized-argmax steps, a candidates array of
// {token, prob, depth, resistance, score}. Doubles are emitted with
// shortest-round-trip formatting, so parse(dump(r)) == r exactly.
// =============================================================================

nlohmann::json record_to_json(const GenerationRecord& rec);
GenerationRecord record_from_json(const nlohmann::json& j);  // throws ConfigError

std::string record_to_jsonl_line(const GenerationRecord& rec);
GenerationRecord record_from_jsonl_line(const std::string& line);

void write_jsonl(std::ostream& os, const std::vector<GenerationRecord>& recs);
std::vector<GenerationRecord> read_jsonl(std::istream& is);

}  // namespace modec
