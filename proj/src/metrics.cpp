#include "modec/metrics.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <unordered_set>

#include "modec/dist.hpp"
#include "modec/token_sequence.hpp"

namespace modec {

namespace {

// Unique-count via byte-packed n-gram keys.
std::size_t unique_ngrams(std::span<const TokenId> tokens, int n) {
  std::unordered_set<std::string> seen;
  const auto un = static_cast<std::size_t>(n);
  std::string key(un * sizeof(TokenId), '\0');
  for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
    std::memcpy(key.data(), tokens.data() + i, un * sizeof(TokenId));
    seen.insert(key);
  }
  return seen.size();
}

}  // namespace

double rep_n(std::span<const TokenId> tokens, int n) {
  if (n < 1) throw ConfigError("n must be positive");
  if (tokens.size() < static_cast<std::size_t>(n)) return 0.0;
  const auto total = tokens.size() - static_cast<std::size_t>(n) + 1;
  const auto unique = unique_ngrams(tokens, n);
  return 100.0 * (1.0 - static_cast<double>(unique) /
                            static_cast<double>(total));
}

double diversity(std::span<const TokenId> tokens) {
  double out = 1.0;
  for (int n = 2; n <= 4; ++n) out *= 1.0 - rep_n(tokens, n) / 100.0;
  return out;
}

double coherence(const DistributionProvider& measuring,
                 std::span<const TokenId> prefix,
                 std::span<const TokenId> generated) {
  if (generated.empty())
    throw ConfigError("coherence needs at least one generated token");
  std::vector<TokenId> context(prefix.begin(), prefix.end());
  double total = 0.0;
  for (const TokenId t : generated) {
    const ProbDist dist = measuring.next_distribution(context);
    if (!measuring.vocab().contains(t))
      throw ConfigError("generated token outside scoring vocabulary");
    total += std::log(dist.prob(t));
    context.push_back(t);
  }
  return total / static_cast<double>(generated.size());
}

double greedy_ratio(const DistributionProvider& scoring,
                    std::span<const TokenId> prompt,
                    std::span<const TokenId> generated) {
  if (generated.empty())
    throw ConfigError("greedy ratio needs at least one generated token");
  std::vector<TokenId> context(prompt.begin(), prompt.end());
  std::size_t matches = 0;
  for (const TokenId t : generated) {
    const ProbDist dist = scoring.next_distribution(context);
    if (dist.argmax() == t) ++matches;
    context.push_back(t);
  }
  return 100.0 * static_cast<double>(matches) /
         static_cast<double>(generated.size());
}

std::vector<CorpusNgramStat> corpus_ngram_stats(
    const std::vector<std::vector<TokenId>>& corpus, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min)
    throw ConfigError("invalid n-gram range");
  std::vector<CorpusNgramStat> out;
  for (int n = n_min; n <= n_max; ++n) {
    double weighted = 0.0;
    double weight = 0.0;
    for (const auto& doc : corpus) {
      if (doc.size() < static_cast<std::size_t>(n)) continue;
      const auto w = static_cast<double>(doc.size());
      weighted += w * rep_n(doc, n);
      weight += w;
    }
    out.push_back({n, weight > 0.0 ? weighted / weight : 0.0});
  }
  return out;
}

double calls_per_token(std::span<const GenerationRecord> records) {
  std::int64_t calls = 0;
  std::int64_t tokens = 0;
  for (const GenerationRecord& r : records) {
    calls += r.total_model_calls;
    tokens += static_cast<std::int64_t>(r.generated.size());
  }
  if (tokens == 0) throw ConfigError("no generated tokens to account for");
  return static_cast<double>(calls) / static_cast<double>(tokens);
}

EfficiencySummary efficiency_summary(
    std::span<const GenerationRecord> records,
    std::span<const GenerationRecord> reference) {
  EfficiencySummary s;
  s.calls_per_token = calls_per_token(records);
  s.call_ratio_vs_reference = s.calls_per_token / calls_per_token(reference);
  return s;
}

MetricReport metric_report(const DistributionProvider& scoring,
                           std::span<const GenerationRecord> records) {
  MetricReport rep;
  double div_weighted = 0.0;
  std::map<int, double> repn_weighted{{2, 0.0}, {3, 0.0}, {4, 0.0}};
  double loglik = 0.0;
  double matches = 0.0;
  std::int64_t calls = 0;
  for (const GenerationRecord& r : records) {
    const auto w = static_cast<double>(r.generated.size());
    if (w == 0.0) continue;
    rep.tokens_emitted += static_cast<std::int64_t>(r.generated.size());
    calls += r.total_model_calls;
    div_weighted += w * diversity(r.generated);
    for (int n = 2; n <= 4; ++n) repn_weighted[n] += w * rep_n(r.generated, n);
    loglik += w * coherence(scoring, r.prompt, r.generated);
    matches += w * greedy_ratio(scoring, r.prompt, r.generated) / 100.0;
  }
  if (rep.tokens_emitted == 0)
    throw ConfigError("no generated tokens to report on");
  const auto total = static_cast<double>(rep.tokens_emitted);
  rep.diversity = div_weighted / total;
  for (int n = 2; n <= 4; ++n) rep.rep_n_percent[n] = repn_weighted[n] / total;
  rep.coherence = loglik / total;
  rep.greedy_ratio = 100.0 * matches / total;
  rep.calls_per_token = static_cast<double>(calls) / total;
  return rep;
}

}  // namespace modec
