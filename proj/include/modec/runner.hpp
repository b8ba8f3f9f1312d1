#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modec/decoders.hpp"
#include "modec/provider.hpp"

#include "json.hpp"

namespace modec {

// =============================================================================
// Batch execution: provider construction from a spec, prompt batches with
// per-prompt seeds, and the command implementations behind the CLI.
// =============================================================================

struct ProviderSpec {
  enum class Kind { toy_lm, scripted, http };

  Kind kind = Kind::toy_lm;
  std::string corpus_path;  // toy_lm: fitting corpus
  std::string script_path;  // scripted: distribution table file
  std::string endpoint;     // http: server base URL (empty -> environment)
  int order = 2;
  double smoothing = 1.0;
  int embedding_dim = 32;
  std::optional<int> top_n;
  int timeout_ms = 10000;
  Vocabulary http_vocab;  // http: expected vocabulary
};

std::unique_ptr<DistributionProvider> make_provider(const ProviderSpec& spec);

// Scripted-provider file:
//   {"vocab_size": N, "terminator": id|-1, "bos": id|-1,
//    "dists": [{"context": [..], "probs": [[id, p], ..]}, ..],
//    "fallback": [[id, p], ..],                  // optional
//    "representations": [{"context": [..], "rep": [..]}, ..]}  // optional
std::unique_ptr<DistributionProvider> load_scripted_provider(
    const std::string& path);

struct RunConfig {
  Strategy strategy = Strategy::momentum;
  DecoderConfig decoder;
  ProviderSpec provider;
  int prompt_length = 32;
  int workers = 1;

  void validate() const;
};

// Parses the JSON config document; unknown keys inside known sections are
// rejected so typos surface. Sections: strategy, decoder, resistance,
// provider, prompt_length, workers.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

// Seed for one prompt: a splitmix64 hash of the base seed and the prompt's
// index, so outcomes do not depend on worker scheduling.
std::uint64_t derive_prompt_seed(std::uint64_t base_seed, std::size_t index);

// Exactly one of record / skipped_reason / error is set.
struct PromptOutcome {
  std::size_t index = 0;
  std::optional<GenerationRecord> record;
  std::string skipped_reason;
  std::string error;
};

// Runs `strategy` over every prompt. Prompts shorter than prompt_length are
// skipped; longer ones are truncated to their first prompt_length tokens.
// Results come back in prompt order regardless of worker count.
std::vector<PromptOutcome> run_prompts(
    const DistributionProvider& provider, Strategy strategy,
    const DecoderConfig& decoder,
    const std::vector<std::vector<TokenId>>& prompts, int prompt_length,
    int workers);

// ---------------------------------------------------------------------------
// Command implementations. Each returns a process exit code: 0 on success,
// 1 when any prompt-level error occurred, and throws ConfigError for
// unusable inputs.
// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, const std::string& prompts_path,
                 const std::string& out_path);

struct BenchOptions {
  std::vector<Strategy> strategies;  // empty -> all six
  std::string measure_corpus;  // optional second toy-lm corpus for scoring
};

int cmd_bench(const RunConfig& cfg, const std::string& prompts_path,
              const std::string& out_path, const BenchOptions& opts = {});

// One evaluated sweep point. The default grids are: top-k sampling over
// k in {5, 10, 20, 40, 50, 80, 160, 320, 640}, nucleus over p in
// {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}, contrastive over k in 2..10,
// and momentum over k in 2..10; 35 points total. Points invalid for the
// provider (k beyond the vocabulary, missing representations) are skipped
// with a warning.
struct SweepRow {
  std::string strategy;
  std::string param;
  double value = 0.0;
  std::int64_t tokens = 0;
  double diversity = 0.0;
  double coherence = 0.0;
  double greedy_ratio = 0.0;
};

std::vector<SweepRow> sweep_rows(
    const RunConfig& cfg, const DistributionProvider& provider,
    const std::vector<std::vector<TokenId>>& prompts);

int cmd_sweep(const RunConfig& cfg, const std::string& prompts_path,
              const std::string& out_path);

int cmd_ablate(const RunConfig& cfg, const std::string& prompts_path,
               const std::string& out_path, double constant_value = 2.0);

int cmd_stats(const std::string& corpus_path, const std::string& out_path);

int cmd_export_dot(const std::string& tokens_path,
                   const std::string& out_path);

}  // namespace modec
