#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "modec/provider.hpp"

namespace modec {

// =============================================================================
// Additive-smoothed back-off n-gram model with co-occurrence embeddings.
//
// Conditioning uses the longest context suffix, up to order-1 tokens, that
// was observed during fitting; unseen suffixes back off one token at a time
// down to the unigram. With counts c(h, u) over successor u of history h:
//
//     p(u | h) = (c(h, u) + lambda) / (total(h) + lambda * V)
//
// which is positive everywhere, so every distribution is complete and the
// model never assigns zero to a token.
//
// Embeddings are bucketed co-occurrence counts (neighbor id modulo the
// embedding dimension, symmetric window), L2-normalized per token. The
// representation of a context is the mean of the embeddings of its last
// representation_window tokens.
// =============================================================================

class NgramLm : public DistributionProvider {
 public:
  struct FitOptions {
    int order = 2;               // longest n-gram length
    double smoothing = 1.0;      // lambda, must be positive
    int embedding_dim = 32;
    int embedding_window = 2;    // co-occurrence window on each side
    int representation_window = 4;  // trailing tokens averaged per context
  };

  // Documents are token-id sequences without bos/terminator; fit prepends
  // bos and appends the terminator (when the vocabulary defines them) so
  // first-token and end-of-document statistics exist. Throws FitError when
  // no document contributes an n-gram, ConfigError on bad options.
  static NgramLm fit(const std::vector<std::vector<TokenId>>& corpus,
                     const Vocabulary& vocab, const FitOptions& opts);

  const Vocabulary& vocab() const override { return vocab_; }
  ProbDist next_distribution(std::span<const TokenId> context) const override;
  bool supports_representations() const override { return true; }
  Representation representation(std::span<const TokenId> context) const override;

  const FitOptions& options() const { return opts_; }
  // Unit-norm embedding of one token (zero vector if never observed).
  const Representation& token_embedding(TokenId id) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<TokenId>& v) const;
  };
  struct HistoryCounts {
    std::unordered_map<TokenId, double> successors;
    double total = 0.0;
  };

  Vocabulary vocab_;
  FitOptions opts_;
  // One map per history length 0..order-1.
  std::vector<std::unordered_map<std::vector<TokenId>, HistoryCounts, KeyHash>>
      counts_;
  std::vector<Representation> embeddings_;
};

}  // namespace modec
