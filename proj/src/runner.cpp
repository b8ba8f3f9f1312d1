#include "modec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "modec/corpus.hpp"
#include "modec/dot_export.hpp"
#include "modec/http_provider.hpp"
#include "modec/metrics.hpp"
#include "modec/ngram_lm.hpp"
#include "modec/record_io.hpp"

namespace modec {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::string& section) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key \"" + key + "\" in " + section);
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot write output file: " + path);
  }
  std::ostream& stream() {
    return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
  }

 private:
  std::ofstream file_;
};

std::vector<std::pair<TokenId, double>> sparse_from_json(
    const json& arr, const std::string& what) {
  std::vector<std::pair<TokenId, double>> out;
  for (const json& entry : arr) {
    if (!entry.is_array() || entry.size() != 2)
      throw ConfigError(what + " entries must be [id, probability] pairs");
    out.emplace_back(entry[0].get<TokenId>(), entry[1].get<double>());
  }
  return out;
}

}  // namespace

std::unique_ptr<DistributionProvider> load_scripted_provider(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scripted provider file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("bad scripted provider file " + path + ": " + e.what());
  }
  try {
    reject_unknown_keys(
        doc, {"vocab_size", "terminator", "bos", "dists", "fallback",
              "representations"},
        path);
    Vocabulary vocab;
    vocab.size = doc.at("vocab_size").get<std::int32_t>();
    vocab.terminator_id = doc.value("terminator", -1);
    vocab.bos_id = doc.value("bos", -1);
    auto provider = std::make_unique<ScriptedProvider>(vocab);
    for (const json& d : doc.at("dists"))
      provider->program(d.at("context").get<std::vector<TokenId>>(),
                        sparse_from_json(d.at("probs"), "probs"));
    if (doc.contains("fallback"))
      provider->program_fallback(
          sparse_from_json(doc.at("fallback"), "fallback"));
    if (doc.contains("representations"))
      for (const json& r : doc.at("representations"))
        provider->program_representation(
            r.at("context").get<std::vector<TokenId>>(),
            r.at("rep").get<Representation>());
    return provider;
  } catch (const json::exception& e) {
    throw ConfigError("bad scripted provider file " + path + ": " + e.what());
  }
}

std::unique_ptr<DistributionProvider> make_provider(const ProviderSpec& spec) {
  switch (spec.kind) {
    case ProviderSpec::Kind::toy_lm: {
      if (spec.corpus_path.empty())
        throw ConfigError("toy-lm provider needs a corpus path");
      const auto docs = load_token_lines(spec.corpus_path);
      NgramLm::FitOptions opts;
      opts.order = spec.order;
      opts.smoothing = spec.smoothing;
      opts.embedding_dim = spec.embedding_dim;
      return std::make_unique<NgramLm>(
          NgramLm::fit(docs, infer_vocabulary(docs), opts));
    }
    case ProviderSpec::Kind::scripted:
      if (spec.script_path.empty())
        throw ConfigError("scripted provider needs a script path");
      return load_scripted_provider(spec.script_path);
    case ProviderSpec::Kind::http: {
      HttpProvider::Options opts;
      opts.endpoint = spec.endpoint;
      opts.timeout_ms = spec.timeout_ms;
      opts.top_n = spec.top_n;
      opts.vocab = spec.http_vocab;
      if (opts.vocab.size <= 0)
        throw ConfigError("http provider needs provider.vocab_size");
      return std::make_unique<HttpProvider>(std::move(opts));
    }
  }
  throw ConfigError("unhandled provider kind");
}

void RunConfig::validate() const {
  decoder.validate();
  if (prompt_length < 1) throw ConfigError("prompt_length must be positive");
  if (workers < 1) throw ConfigError("workers must be positive");
}

RunConfig run_config_from_json(const json& doc) {
  RunConfig cfg;
  reject_unknown_keys(doc,
                      {"strategy", "decoder", "resistance", "provider",
                       "prompt_length", "workers"},
                      "config");
  if (doc.contains("strategy"))
    cfg.strategy = strategy_from_string(doc.at("strategy").get<std::string>());
  if (doc.contains("decoder")) {
    const json& d = doc.at("decoder");
    reject_unknown_keys(d,
                        {"alpha", "top_k", "max_steps", "beam_width",
                         "nucleus_p", "cs_alpha", "seed"},
                        "decoder");
    cfg.decoder.alpha = d.value("alpha", cfg.decoder.alpha);
    cfg.decoder.top_k = d.value("top_k", cfg.decoder.top_k);
    cfg.decoder.max_steps = d.value("max_steps", cfg.decoder.max_steps);
    cfg.decoder.beam_width = d.value("beam_width", cfg.decoder.beam_width);
    cfg.decoder.nucleus_p = d.value("nucleus_p", cfg.decoder.nucleus_p);
    cfg.decoder.cs_alpha = d.value("cs_alpha", cfg.decoder.cs_alpha);
    cfg.decoder.seed = d.value("seed", cfg.decoder.seed);
  }
  if (doc.contains("resistance")) {
    const json& r = doc.at("resistance");
    reject_unknown_keys(r, {"entries", "cap_depth", "zero_depth_value", "constant"},
                        "resistance");
    if (r.contains("constant")) {
      if (r.contains("entries") || r.contains("cap_depth"))
        throw ConfigError(
            "resistance.constant excludes entries and cap_depth");
      cfg.decoder.resistance =
          ResistanceTable::constant_table(r.at("constant").get<double>());
    } else {
      std::vector<std::pair<int, double>> entries;
      for (const json& e : r.at("entries")) {
        if (!e.is_array() || e.size() != 2)
          throw ConfigError("resistance entries must be [depth, value] pairs");
        entries.emplace_back(e[0].get<int>(), e[1].get<double>());
      }
      cfg.decoder.resistance = ResistanceTable::from_entries(
          entries, r.at("cap_depth").get<int>(), r.value("zero_depth_value", 0.0));
    }
  }
  if (doc.contains("provider")) {
    const json& p = doc.at("provider");
    reject_unknown_keys(p,
                        {"kind", "corpus", "script", "endpoint", "order",
                         "smoothing", "embedding_dim", "top_n", "timeout_ms",
                         "vocab_size", "terminator", "bos"},
                        "provider");
    const std::string kind = p.value("kind", "toy-lm");
    if (kind == "toy-lm")
      cfg.provider.kind = ProviderSpec::Kind::toy_lm;
    else if (kind == "scripted")
      cfg.provider.kind = ProviderSpec::Kind::scripted;
    else if (kind == "http")
      cfg.provider.kind = ProviderSpec::Kind::http;
    else
      throw ConfigError("unknown provider kind: " + kind);
    cfg.provider.corpus_path = p.value("corpus", "");
    cfg.provider.script_path = p.value("script", "");
    cfg.provider.endpoint = p.value("endpoint", "");
    cfg.provider.order = p.value("order", cfg.provider.order);
    cfg.provider.smoothing = p.value("smoothing", cfg.provider.smoothing);
    cfg.provider.embedding_dim =
        p.value("embedding_dim", cfg.provider.embedding_dim);
    if (p.contains("top_n") && !p.at("top_n").is_null())
      cfg.provider.top_n = p.at("top_n").get<int>();
    cfg.provider.timeout_ms = p.value("timeout_ms", cfg.provider.timeout_ms);
    cfg.provider.http_vocab.size = p.value("vocab_size", 0);
    cfg.provider.http_vocab.terminator_id = p.value("terminator", -1);
    cfg.provider.http_vocab.bos_id = p.value("bos", -1);
  }
  cfg.prompt_length = doc.value("prompt_length", cfg.prompt_length);
  cfg.workers = doc.value("workers", cfg.workers);
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }
  try {
    return run_config_from_json(doc);
  } catch (const json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }
}

std::uint64_t derive_prompt_seed(std::uint64_t base_seed, std::size_t index) {
  std::uint64_t z =
      base_seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<PromptOutcome> run_prompts(
    const DistributionProvider& provider, Strategy strategy,
    const DecoderConfig& decoder,
    const std::vector<std::vector<TokenId>>& prompts, int prompt_length,
    int workers) {
  if (prompt_length < 1) throw ConfigError("prompt_length must be positive");
  if (workers < 1) throw ConfigError("workers must be positive");
  std::vector<PromptOutcome> outcomes(prompts.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= prompts.size()) return;
      PromptOutcome& out = outcomes[i];
      out.index = i;
      const auto& prompt = prompts[i];
      if (prompt.size() < static_cast<std::size_t>(prompt_length)) {
        out.skipped_reason = "prompt has " + std::to_string(prompt.size()) +
                             " tokens, need " + std::to_string(prompt_length);
        continue;
      }
      DecoderConfig cfg = decoder;
      cfg.seed = derive_prompt_seed(decoder.seed, i);
      try {
        out.record = generate(
            strategy, provider,
            std::span<const TokenId>(prompt.data(),
                                     static_cast<std::size_t>(prompt_length)),
            cfg);
      } catch (const GenerationError& e) {
        out.error = e.what();
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };
  const int n_workers = std::max(
      1, std::min<int>(workers, static_cast<int>(prompts.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return outcomes;
}

int cmd_generate(const RunConfig& cfg, const std::string& prompts_path,
                 const std::string& out_path) {
  cfg.validate();
  const auto prompts = load_token_lines(prompts_path);
  const auto provider = make_provider(cfg.provider);
  const auto outcomes = run_prompts(*provider, cfg.strategy, cfg.decoder,
                                    prompts, cfg.prompt_length, cfg.workers);
  OutputFile out(out_path);
  bool any_error = false;
  for (const PromptOutcome& o : outcomes) {
    json line;
    if (o.record.has_value()) {
      line = record_to_json(*o.record);
      line["prompt_index"] = o.index;
    } else if (!o.skipped_reason.empty()) {
      line = json{{"prompt_index", o.index}, {"skipped", o.skipped_reason}};
      std::cerr << "warning: prompt " << o.index << " skipped: "
                << o.skipped_reason << "\n";
    } else {
      line = json{{"prompt_index", o.index}, {"error", o.error}};
      std::cerr << "error: prompt " << o.index << ": " << o.error << "\n";
      any_error = true;
    }
    out.stream() << line.dump() << '\n';
  }
  return any_error ? 1 : 0;
}

namespace {

struct StrategyRun {
  std::vector<GenerationRecord> records;
  double ms_per_token = 0.0;
  std::size_t errors = 0;
};

StrategyRun run_strategy(const DistributionProvider& provider,
                         Strategy strategy, const DecoderConfig& decoder,
                         const std::vector<std::vector<TokenId>>& prompts,
                         int prompt_length, int workers) {
  StrategyRun run;
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes =
      run_prompts(provider, strategy, decoder, prompts, prompt_length, workers);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::int64_t tokens = 0;
  for (const PromptOutcome& o : outcomes) {
    if (o.record.has_value()) {
      tokens += static_cast<std::int64_t>(o.record->generated.size());
      run.records.push_back(*o.record);
    } else if (!o.error.empty()) {
      ++run.errors;
      std::cerr << "error: " << to_string(strategy) << " prompt " << o.index
                << ": " << o.error << "\n";
    }
  }
  run.ms_per_token = tokens > 0 ? ms / static_cast<double>(tokens) : 0.0;
  return run;
}

}  // namespace

int cmd_bench(const RunConfig& cfg, const std::string& prompts_path,
              const std::string& out_path, const BenchOptions& opts) {
  cfg.validate();
  const auto prompts = load_token_lines(prompts_path);
  const auto provider = make_provider(cfg.provider);

  std::unique_ptr<DistributionProvider> scoring_owner;
  const DistributionProvider* scoring = provider.get();
  bool cross_model = false;
  if (!opts.measure_corpus.empty()) {
    ProviderSpec spec = cfg.provider;
    spec.kind = ProviderSpec::Kind::toy_lm;
    spec.corpus_path = opts.measure_corpus;
    scoring_owner = make_provider(spec);
    if (scoring_owner->vocab().size != provider->vocab().size)
      throw ConfigError(
          "scoring provider vocabulary differs from generation provider");
    scoring = scoring_owner.get();
    cross_model = true;
    std::cerr << "warning: greedy ratio and coherence scored by a different "
                 "model than the one that generated\n";
  }

  std::vector<Strategy> strategies = opts.strategies;
  if (strategies.empty())
    strategies = {Strategy::greedy,        Strategy::momentum,
                  Strategy::top_k_sample,  Strategy::nucleus_sample,
                  Strategy::beam,          Strategy::contrastive};

  OutputFile out(out_path);
  out.stream() << "strategy,tokens,diversity,rep2,rep3,rep4,coherence,"
                  "greedy_ratio,calls_per_token,call_ratio_vs_momentum,"
                  "ms_per_token,cross_model\n";

  std::optional<double> momentum_cpt;
  struct Row {
    Strategy strategy;
    MetricReport report;
    double ms_per_token;
  };
  std::vector<Row> rows;
  std::size_t errors = 0;
  for (const Strategy s : strategies) {
    if (s == Strategy::contrastive && !provider->supports_representations()) {
      std::cerr << "warning: skipping contrastive, provider has no "
                   "representations\n";
      continue;
    }
    StrategyRun run = run_strategy(*provider, s, cfg.decoder, prompts,
                                   cfg.prompt_length, cfg.workers);
    errors += run.errors;
    if (run.records.empty()) {
      std::cerr << "warning: no records for " << to_string(s) << "\n";
      continue;
    }
    Row row{s, metric_report(*scoring, run.records), run.ms_per_token};
    if (s == Strategy::momentum) momentum_cpt = row.report.calls_per_token;
    rows.push_back(std::move(row));
  }
  for (const Row& row : rows) {
    const MetricReport& m = row.report;
    out.stream() << to_string(row.strategy) << ',' << m.tokens_emitted << ','
                 << format_double(m.diversity) << ','
                 << format_double(m.rep_n_percent.at(2)) << ','
                 << format_double(m.rep_n_percent.at(3)) << ','
                 << format_double(m.rep_n_percent.at(4)) << ','
                 << format_double(m.coherence) << ','
                 << format_double(m.greedy_ratio) << ','
                 << format_double(m.calls_per_token) << ','
                 << (momentum_cpt.has_value()
                         ? format_double(m.calls_per_token / *momentum_cpt)
                         : std::string())
                 << ',' << format_double(row.ms_per_token) << ','
                 << (cross_model ? 1 : 0) << '\n';
  }
  return errors > 0 ? 1 : 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& prompts_path,
              const std::string& out_path) {
  cfg.validate();
  const auto prompts = load_token_lines(prompts_path);
  const auto provider = make_provider(cfg.provider);
  const auto rows = sweep_rows(cfg, *provider, prompts);
  OutputFile out(out_path);
  out.stream() << "strategy,param,value,tokens,diversity,coherence,"
                  "greedy_ratio\n";
  for (const SweepRow& r : rows)
    out.stream() << r.strategy << ',' << r.param << ','
                 << format_double(r.value) << ',' << r.tokens << ','
                 << format_double(r.diversity) << ','
                 << format_double(r.coherence) << ','
                 << format_double(r.greedy_ratio) << '\n';
  return 0;
}

std::vector<SweepRow> sweep_rows(
    const RunConfig& cfg, const DistributionProvider& provider,
    const std::vector<std::vector<TokenId>>& prompts) {
  const std::vector<int> topk_grid{5, 10, 20, 40, 50, 80, 160, 320, 640};
  const std::vector<double> nucleus_grid{0.4, 0.5,  0.6, 0.7,
                                         0.8, 0.9, 0.95, 1.0};
  std::vector<SweepRow> rows;
  const auto push_row = [&](Strategy s, const char* param, double value,
                            const DecoderConfig& decoder) {
    try {
      StrategyRun run = run_strategy(provider, s, decoder, prompts,
                                     cfg.prompt_length, cfg.workers);
      if (run.records.empty()) {
        std::cerr << "warning: sweep point " << to_string(s) << " " << param
                  << "=" << value << " produced no records, skipped\n";
        return;
      }
      const MetricReport m = metric_report(provider, run.records);
      rows.push_back({to_string(s), param, value, m.tokens_emitted,
                      m.diversity, m.coherence, m.greedy_ratio});
    } catch (const ConfigError& e) {
      std::cerr << "warning: sweep point " << to_string(s) << " " << param
                << "=" << value << " skipped: " << e.what() << "\n";
    } catch (const CapabilityError& e) {
      std::cerr << "warning: sweep point " << to_string(s) << " " << param
                << "=" << value << " skipped: " << e.what() << "\n";
    }
  };
  for (const int k : topk_grid) {
    DecoderConfig d = cfg.decoder;
    d.top_k = k;
    push_row(Strategy::top_k_sample, "k", k, d);
  }
  for (const double p : nucleus_grid) {
    DecoderConfig d = cfg.decoder;
    d.nucleus_p = p;
    push_row(Strategy::nucleus_sample, "p", p, d);
  }
  for (int k = 2; k <= 10; ++k) {
    DecoderConfig d = cfg.decoder;
    d.top_k = k;
    push_row(Strategy::contrastive, "k", k, d);
  }
  for (int k = 2; k <= 10; ++k) {
    DecoderConfig d = cfg.decoder;
    d.top_k = k;
    push_row(Strategy::momentum, "k", k, d);
  }
  return rows;
}

int cmd_ablate(const RunConfig& cfg, const std::string& prompts_path,
               const std::string& out_path, double constant_value) {
  cfg.validate();
  const auto prompts = load_token_lines(prompts_path);
  const auto provider = make_provider(cfg.provider);
  OutputFile out(out_path);
  out.stream() << "variant,tokens,diversity,rep2,rep3,rep4,coherence,"
                  "greedy_ratio,calls_per_token\n";
  struct Variant {
    std::string name;
    ResistanceTable table;
  };
  const std::vector<Variant> variants{
      {"monotone", ResistanceTable::default_table()},
      {"constant(" + format_double(constant_value) + ")",
       ResistanceTable::constant_table(constant_value)}};
  std::size_t errors = 0;
  for (const Variant& v : variants) {
    DecoderConfig d = cfg.decoder;
    d.resistance = v.table;
    StrategyRun run = run_strategy(*provider, Strategy::momentum, d, prompts,
                                   cfg.prompt_length, cfg.workers);
    errors += run.errors;
    if (run.records.empty()) continue;
    const MetricReport m = metric_report(*provider, run.records);
    out.stream() << v.name << ',' << m.tokens_emitted << ','
                 << format_double(m.diversity) << ','
                 << format_double(m.rep_n_percent.at(2)) << ','
                 << format_double(m.rep_n_percent.at(3)) << ','
                 << format_double(m.rep_n_percent.at(4)) << ','
                 << format_double(m.coherence) << ','
                 << format_double(m.greedy_ratio) << ','
                 << format_double(m.calls_per_token) << '\n';
  }
  return errors > 0 ? 1 : 0;
}

int cmd_stats(const std::string& corpus_path, const std::string& out_path) {
  const auto docs = load_token_lines(corpus_path);
  if (docs.empty()) throw ConfigError("corpus has no documents");
  const auto stats = corpus_ngram_stats(docs);
  OutputFile out(out_path);
  out.stream() << "n,rep_percent\n";
  for (const CorpusNgramStat& s : stats)
    out.stream() << s.n << ',' << format_double(s.percent) << '\n';
  return 0;
}

int cmd_export_dot(const std::string& tokens_path,
                   const std::string& out_path) {
  const auto lines = load_token_lines(tokens_path);
  if (lines.empty()) throw ConfigError("token file has no tokens");
  TokenSequence seq(lines.front());
  OutputFile out(out_path);
  out.stream() << to_dot(seq);
  return 0;
}

}  // namespace modec
