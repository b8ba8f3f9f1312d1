#pragma once

#include <map>
#include <span>
#include <vector>

#include "modec/decoders.hpp"
#include "modec/provider.hpp"
#include "modec/types.hpp"

namespace modec {

// =============================================================================
// Text-degeneration metrics and call accounting.
// =============================================================================

// Percentage of repeated n-grams: 100 * (1 - unique/total) over the
// contiguous n-grams of `tokens`. Zero when fewer than n tokens exist.
double rep_n(std::span<const TokenId> tokens, int n);

// Product over n in {2, 3, 4} of (1 - rep_n/100); 1.0 for the empty
// sequence. Higher means less repetitive.
double diversity(std::span<const TokenId> tokens);

// Mean natural-log likelihood per token of `generated` under `measuring`,
// each token conditioned on prefix + all earlier generated tokens. Throws
// ConfigError when `generated` is empty.
double coherence(const DistributionProvider& measuring,
                 std::span<const TokenId> prefix,
                 std::span<const TokenId> generated);

// Percentage of generated tokens equal to the per-step argmax of `scoring`
// on the same growing context. 100 exactly for greedy output scored by its
// own provider.
double greedy_ratio(const DistributionProvider& scoring,
                    std::span<const TokenId> prompt,
                    std::span<const TokenId> generated);

// Token-weighted mean of per-document rep-n across a corpus, for n in
// [n_min, n_max]. Documents shorter than n contribute weight zero at that n.
struct CorpusNgramStat {
  int n = 0;
  double percent = 0.0;

  bool operator==(const CorpusNgramStat&) const = default;
};

std::vector<CorpusNgramStat> corpus_ngram_stats(
    const std::vector<std::vector<TokenId>>& corpus, int n_min = 2,
    int n_max = 8);

// Total model calls divided by total generated tokens across `records`.
// Throws ConfigError when no tokens were generated.
double calls_per_token(std::span<const GenerationRecord> records);

// Call accounting of `records` against a reference strategy's records.
// call_ratio_vs_reference is this strategy's calls per token divided by the
// reference's: 1.0 means equal cost, 4.0 means four times the calls.
struct EfficiencySummary {
  double calls_per_token = 0.0;
  double call_ratio_vs_reference = 0.0;
};

EfficiencySummary efficiency_summary(
    std::span<const GenerationRecord> records,
    std::span<const GenerationRecord> reference);

// Aggregated quality/cost figures for one strategy over a prompt set.
struct MetricReport {
  double diversity = 0.0;
  std::map<int, double> rep_n_percent;  // n -> percentage, n in {2, 3, 4}
  double coherence = 0.0;
  double greedy_ratio = 0.0;
  double calls_per_token = 0.0;
  std::int64_t tokens_emitted = 0;
};

// Means are token-weighted across records; rep-n and diversity are computed
// on each record's generated suffix.
MetricReport metric_report(const DistributionProvider& scoring,
                           std::span<const GenerationRecord> records);

}  // namespace modec
