#include "modec/record_io.hpp"

#include <istream>
#include <ostream>

namespace modec {

using nlohmann::json;

namespace {

json trace_to_json(const StepTrace& tr) {
  json j{{"step", tr.step},
         {"branch", to_string(tr.branch)},
         {"token", tr.token},
         {"model_calls", tr.model_calls}};
  if (!tr.candidates.empty()) {
    json arr = json::array();
    for (const ScoredCandidate& c : tr.candidates)
      arr.push_back(json{{"token", c.token},
                         {"prob", c.prob},
                         {"depth", c.depth},
                         {"resistance", c.resistance},
                         {"score", c.score}});
    j["candidates"] = std::move(arr);
  }
  return j;
}

StepTrace trace_from_json(const json& j) {
  StepTrace tr;
  tr.step = j.at("step").get<int>();
  tr.branch = branch_from_string(j.at("branch").get<std::string>());
  tr.token = j.at("token").get<TokenId>();
  tr.model_calls = j.at("model_calls").get<int>();
  if (j.contains("candidates"))
    for (const json& c : j.at("candidates"))
      tr.candidates.push_back({c.at("token").get<TokenId>(),
                               c.at("prob").get<double>(),
                               c.at("depth").get<std::uint32_t>(),
                               c.at("resistance").get<double>(),
                               c.at("score").get<double>()});
  return tr;
}

}  // namespace

json record_to_json(const GenerationRecord& rec) {
  json traces = json::array();
  for (const StepTrace& tr : rec.traces) traces.push_back(trace_to_json(tr));
  return json{{"prompt", rec.prompt},
              {"generated", rec.generated},
              {"traces", std::move(traces)},
              {"total_model_calls", rec.total_model_calls},
              {"terminated_by", to_string(rec.terminated_by)},
              {"seed", rec.seed}};
}

GenerationRecord record_from_json(const json& j) {
  try {
    GenerationRecord rec;
    rec.prompt = j.at("prompt").get<std::vector<TokenId>>();
    rec.generated = j.at("generated").get<std::vector<TokenId>>();
    for (const json& tj : j.at("traces"))
      rec.traces.push_back(trace_from_json(tj));
    rec.total_model_calls = j.at("total_model_calls").get<std::int64_t>();
    rec.terminated_by =
        terminated_by_from_string(j.at("terminated_by").get<std::string>());
    rec.seed = j.at("seed").get<std::uint64_t>();
    return rec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad record json: ") + e.what());
  }
}

std::string record_to_jsonl_line(const GenerationRecord& rec) {
  return record_to_json(rec).dump();
}

GenerationRecord record_from_jsonl_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad jsonl line: ") + e.what());
  }
  return record_from_json(j);
}

void write_jsonl(std::ostream& os, const std::vector<GenerationRecord>& recs) {
  for (const GenerationRecord& rec : recs)
    os << record_to_jsonl_line(rec) << '\n';
}

std::vector<GenerationRecord> read_jsonl(std::istream& is) {
  std::vector<GenerationRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_jsonl_line(line));
  }
  return out;
}

}  // namespace modec
