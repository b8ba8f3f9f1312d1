#include "modec/ngram_lm.hpp"

#include <cmath>
#include <stdexcept>

#include "modec/kernels.hpp"

namespace modec {

std::size_t NgramLm::KeyHash::operator()(const std::vector<TokenId>& v) const {
  std::size_t h = 1469598103934665603ull;
  for (const TokenId t : v) {
    auto u = static_cast<std::uint32_t>(t);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

NgramLm NgramLm::fit(const std::vector<std::vector<TokenId>>& corpus,
                     const Vocabulary& vocab, const FitOptions& opts) {
  vocab.validate();
  if (opts.order < 1) throw ConfigError("order must be at least 1");
  if (!(opts.smoothing > 0.0)) throw ConfigError("smoothing must be positive");
  if (opts.embedding_dim < 1) throw ConfigError("embedding_dim must be positive");
  if (opts.embedding_window < 1)
    throw ConfigError("embedding_window must be positive");
  if (opts.representation_window < 1)
    throw ConfigError("representation_window must be positive");

  NgramLm lm;
  lm.vocab_ = vocab;
  lm.opts_ = opts;
  lm.counts_.resize(static_cast<std::size_t>(opts.order));
  lm.embeddings_.assign(
      static_cast<std::size_t>(vocab.size),
      Representation(static_cast<std::size_t>(opts.embedding_dim), 0.0));

  std::size_t ngrams_seen = 0;
  for (const auto& doc : corpus) {
    std::vector<TokenId> tokens;
    tokens.reserve(doc.size() + 2);
    if (vocab.bos_id != -1) tokens.push_back(vocab.bos_id);
    for (const TokenId t : doc) {
      if (!vocab.contains(t))
        throw FitError("document token outside vocabulary");
      tokens.push_back(t);
    }
    if (vocab.terminator_id != -1) tokens.push_back(vocab.terminator_id);
    if (tokens.empty()) continue;

    for (std::size_t i = 0; i < tokens.size(); ++i) {
      // Successor counts for every history length ending just before i.
      for (int len = 0; len < opts.order; ++len) {
        if (static_cast<std::size_t>(len) > i) break;
        const std::vector<TokenId> hist(tokens.begin() + (i - len),
                                        tokens.begin() + i);
        auto& bucket = lm.counts_[static_cast<std::size_t>(len)][hist];
        bucket.successors[tokens[i]] += 1.0;
        bucket.total += 1.0;
        ++ngrams_seen;
      }
      // Bucketed co-occurrence counts for the embedding of tokens[i].
      auto& emb = lm.embeddings_[static_cast<std::size_t>(tokens[i])];
      for (int off = -opts.embedding_window; off <= opts.embedding_window;
           ++off) {
        if (off == 0) continue;
        const auto j = static_cast<std::ptrdiff_t>(i) + off;
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(tokens.size())) continue;
        emb[static_cast<std::size_t>(tokens[static_cast<std::size_t>(j)]) %
            static_cast<std::size_t>(opts.embedding_dim)] += 1.0;
      }
    }
  }
  if (ngrams_seen == 0) throw FitError("corpus has no usable documents");

  for (auto& emb : lm.embeddings_) {
    const double norm =
        std::sqrt(kern::active_ops().dot(emb.data(), emb.data(), emb.size()));
    if (norm > 0.0)
      kern::active_ops().scale(emb.data(), emb.size(), 1.0 / norm);
  }
  return lm;
}

ProbDist NgramLm::next_distribution(std::span<const TokenId> context) const {
  if (context.empty())
    throw std::invalid_argument("context must not be empty");
  const HistoryCounts* hc = nullptr;
  const int longest = std::min<int>(opts_.order - 1,
                                    static_cast<int>(context.size()));
  for (int len = longest; len >= 0 && hc == nullptr; --len) {
    const std::vector<TokenId> hist(context.end() - len, context.end());
    const auto& level = counts_[static_cast<std::size_t>(len)];
    const auto it = level.find(hist);
    if (it != level.end() && it->second.total > 0.0) hc = &it->second;
  }
  const auto v = static_cast<std::size_t>(vocab_.size);
  const double lambda = opts_.smoothing;
  const double total = hc ? hc->total : 0.0;
  const double denom = total + lambda * static_cast<double>(v);
  std::vector<double> probs(v, lambda / denom);
  if (hc)
    for (const auto& [id, c] : hc->successors)
      probs[static_cast<std::size_t>(id)] += c / denom;
  return ProbDist::from_probs(std::move(probs));
}

Representation NgramLm::representation(std::span<const TokenId> context) const {
  if (context.empty())
    throw std::invalid_argument("context must not be empty");
  const auto dim = static_cast<std::size_t>(opts_.embedding_dim);
  Representation out(dim, 0.0);
  const auto m = std::min<std::size_t>(
      static_cast<std::size_t>(opts_.representation_window), context.size());
  for (std::size_t i = context.size() - m; i < context.size(); ++i) {
    const TokenId t = context[i];
    if (!vocab_.contains(t))
      throw std::invalid_argument("context token outside vocabulary");
    const auto& emb = embeddings_[static_cast<std::size_t>(t)];
    for (std::size_t d = 0; d < dim; ++d) out[d] += emb[d];
  }
  kern::active_ops().scale(out.data(), out.size(), 1.0 / double(m));
  return out;
}

const Representation& NgramLm::token_embedding(TokenId id) const {
  if (!vocab_.contains(id))
    throw std::invalid_argument("token id outside vocabulary");
  return embeddings_[static_cast<std::size_t>(id)];
}

}  // namespace modec
