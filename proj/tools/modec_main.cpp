#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "modec/runner.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string prompts_path;
  std::string corpus_path;
  std::string tokens_path;
  std::string out_path;
  std::string measure_corpus;
  double constant_value = 2.0;

  std::optional<std::string> strategy;
  std::optional<double> alpha;
  std::optional<int> top_k;
  std::optional<int> max_steps;
  std::optional<int> beam_width;
  std::optional<double> nucleus_p;
  std::optional<double> cs_alpha;
  std::optional<std::uint64_t> seed;
  std::optional<int> prompt_length;
  std::optional<int> workers;

  std::optional<std::string> provider_kind;
  std::optional<std::string> provider_corpus;
  std::optional<std::string> provider_script;
  std::optional<std::string> endpoint;
  std::optional<int> order;
  std::optional<double> smoothing;
  std::optional<int> embedding_dim;
  std::optional<int> top_n;
  std::optional<int> timeout_ms;
  std::optional<int> vocab_size;
  std::optional<int> terminator;
};

// Config file first, then every flag that was given overrides it.
modec::RunConfig resolve_config(const CliOptions& o) {
  modec::RunConfig cfg;
  if (!o.config_path.empty()) cfg = modec::load_run_config(o.config_path);
  if (o.strategy) cfg.strategy = modec::strategy_from_string(*o.strategy);
  if (o.alpha) cfg.decoder.alpha = *o.alpha;
  if (o.top_k) cfg.decoder.top_k = *o.top_k;
  if (o.max_steps) cfg.decoder.max_steps = *o.max_steps;
  if (o.beam_width) cfg.decoder.beam_width = *o.beam_width;
  if (o.nucleus_p) cfg.decoder.nucleus_p = *o.nucleus_p;
  if (o.cs_alpha) cfg.decoder.cs_alpha = *o.cs_alpha;
  if (o.seed) cfg.decoder.seed = *o.seed;
  if (o.prompt_length) cfg.prompt_length = *o.prompt_length;
  if (o.workers) cfg.workers = *o.workers;
  if (o.provider_kind) {
    if (*o.provider_kind == "toy-lm")
      cfg.provider.kind = modec::ProviderSpec::Kind::toy_lm;
    else if (*o.provider_kind == "scripted")
      cfg.provider.kind = modec::ProviderSpec::Kind::scripted;
    else if (*o.provider_kind == "http")
      cfg.provider.kind = modec::ProviderSpec::Kind::http;
    else
      throw modec::ConfigError("unknown provider kind: " + *o.provider_kind);
  }
  if (o.provider_corpus) cfg.provider.corpus_path = *o.provider_corpus;
  if (o.provider_script) cfg.provider.script_path = *o.provider_script;
  if (o.endpoint) cfg.provider.endpoint = *o.endpoint;
  if (o.order) cfg.provider.order = *o.order;
  if (o.smoothing) cfg.provider.smoothing = *o.smoothing;
  if (o.embedding_dim) cfg.provider.embedding_dim = *o.embedding_dim;
  if (o.top_n) cfg.provider.top_n = *o.top_n;
  if (o.timeout_ms) cfg.provider.timeout_ms = *o.timeout_ms;
  if (o.vocab_size) cfg.provider.http_vocab.size = *o.vocab_size;
  if (o.terminator) cfg.provider.http_vocab.terminator_id = *o.terminator;
  cfg.validate();
  return cfg;
}

void add_shared_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--strategy", o.strategy,
                  "greedy|momentum|top-k|nucleus|beam|contrastive");
  cmd->add_option("--alpha", o.alpha, "re-entry penalty weight");
  cmd->add_option("--top-k", o.top_k, "candidate-set size");
  cmd->add_option("--max-steps", o.max_steps, "generation length cap");
  cmd->add_option("--beam-width", o.beam_width, "beam width");
  cmd->add_option("--nucleus-p", o.nucleus_p, "nucleus mass cutoff");
  cmd->add_option("--cs-alpha", o.cs_alpha, "contrastive penalty weight");
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_option("--prompt-length", o.prompt_length,
                  "tokens taken from each prompt");
  cmd->add_option("--workers", o.workers, "parallel prompt workers");
  cmd->add_option("--provider", o.provider_kind, "toy-lm|scripted|http");
  cmd->add_option("--corpus", o.provider_corpus, "toy-lm fitting corpus");
  cmd->add_option("--script", o.provider_script, "scripted provider file");
  cmd->add_option("--endpoint", o.endpoint,
                  "logits server URL (default: MODEC_LOGITS_ENDPOINT)");
  cmd->add_option("--order", o.order, "toy-lm n-gram order");
  cmd->add_option("--smoothing", o.smoothing, "toy-lm additive smoothing");
  cmd->add_option("--embedding-dim", o.embedding_dim,
                  "toy-lm embedding dimension");
  cmd->add_option("--top-n", o.top_n, "request sliced logits of this size");
  cmd->add_option("--timeout-ms", o.timeout_ms, "http timeout");
  cmd->add_option("--vocab-size", o.vocab_size, "http expected vocabulary");
  cmd->add_option("--terminator", o.terminator, "http terminator id");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentum decoding over pluggable distribution providers"};
  app.require_subcommand(1);
  CliOptions o;

  CLI::App* generate = app.add_subcommand(
      "generate", "decode prompts and write JSONL records");
  add_shared_flags(generate, o);
  generate->add_option("--prompts", o.prompts_path, "prompt token file")
      ->required();
  generate->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* bench = app.add_subcommand(
      "bench", "compare strategies on one prompt set (CSV)");
  add_shared_flags(bench, o);
  bench->add_option("--prompts", o.prompts_path, "prompt token file")
      ->required();
  bench->add_option("--out", o.out_path, "output path (default stdout)");
  bench->add_option("--measure-corpus", o.measure_corpus,
                    "fit the scoring model on this corpus instead");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "hyperparameter grids for the tunable strategies (CSV)");
  add_shared_flags(sweep, o);
  sweep->add_option("--prompts", o.prompts_path, "prompt token file")
      ->required();
  sweep->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* ablate = app.add_subcommand(
      "ablate", "momentum under monotone vs constant resistance (CSV)");
  add_shared_flags(ablate, o);
  ablate->add_option("--prompts", o.prompts_path, "prompt token file")
      ->required();
  ablate->add_option("--out", o.out_path, "output path (default stdout)");
  ablate->add_option("--constant-value", o.constant_value,
                     "flat resistance value for the ablation");

  CLI::App* stats = app.add_subcommand(
      "stats", "repeated n-gram percentages of a corpus (CSV)");
  stats->add_option("--corpus", o.corpus_path, "token corpus file")
      ->required();
  stats->add_option("--out", o.out_path, "output path (default stdout)");

  CLI::App* export_dot = app.add_subcommand(
      "export-dot", "render a token sequence's adjacency graph as DOT");
  export_dot->add_option("--tokens", o.tokens_path, "token file (first line)")
      ->required();
  export_dot->add_option("--out", o.out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return modec::cmd_generate(resolve_config(o), o.prompts_path,
                                 o.out_path);
    if (bench->parsed()) {
      modec::BenchOptions opts;
      opts.measure_corpus = o.measure_corpus;
      return modec::cmd_bench(resolve_config(o), o.prompts_path, o.out_path,
                              opts);
    }
    if (sweep->parsed())
      return modec::cmd_sweep(resolve_config(o), o.prompts_path, o.out_path);
    if (ablate->parsed())
      return modec::cmd_ablate(resolve_config(o), o.prompts_path, o.out_path,
                               o.constant_value);
    if (stats->parsed()) return modec::cmd_stats(o.corpus_path, o.out_path);
    if (export_dot->parsed())
      return modec::cmd_export_dot(o.tokens_path, o.out_path);
  } catch (const modec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const modec::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 2;
  } catch (const modec::ProviderError& e) {
    std::cerr << "provider error (" << modec::to_string(e.code())
              << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
