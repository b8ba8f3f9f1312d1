#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "modec/provider.hpp"

namespace modec {

// =============================================================================
// Client for a logits-over-HTTP service.
//
// Request:  POST /v1/logits
//           {"context": [int, ...], "top_n": int | null}
// Response: {"vocab_size": int,
//            "entries": [{"id": int, "logprob": double}, ...],
//            "complete": bool}
//
// Logprobs are natural logs. A complete response must list every id exactly
// once; probabilities are renormalized (mass must already be within 1e-2 of
// 1). An incomplete response is a top-n slice whose entries keep their true
// probabilities. Failures map to ProviderError codes: transport for
// connection trouble or a non-200 status, malformed for unparsable or
// inconsistent bodies, vocab_mismatch when the server's vocab_size differs
// from the configured vocabulary, incomplete when a slice has fewer entries
// than requested.
// =============================================================================

class HttpProvider : public DistributionProvider {
 public:
  struct Options {
    std::string endpoint;  // e.g. "http://127.0.0.1:8080"; empty means take
                           // MODEC_LOGITS_ENDPOINT from the environment
    int timeout_ms = 10000;
    std::optional<int> top_n;  // request sliced responses of this size
    Vocabulary vocab;
  };

  explicit HttpProvider(Options opts);
  ~HttpProvider() override;

  const Vocabulary& vocab() const override { return opts_.vocab; }
  ProbDist next_distribution(std::span<const TokenId> context) const override;
  bool complete_distributions() const override {
    return !opts_.top_n.has_value();
  }

  const std::string& endpoint() const { return endpoint_; }

 private:
  Options opts_;
  std::string endpoint_;
  struct Client;
  std::unique_ptr<Client> client_;  // serialized by mutex_
  mutable std::mutex mutex_;
};

}  // namespace modec
