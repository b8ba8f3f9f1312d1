#pragma once

#include <span>
#include <vector>

#include "modec/types.hpp"

namespace modec {

// =============================================================================
// Next-token probability distribution over a dense id space.
//
// A complete distribution carries the full support and sums to 1 within
// 1e-6. An incomplete one holds true probabilities for a top slice and zero
// elsewhere (the tail mass is simply missing); selection by rank still works
// on it, but anything needing the full support must reject it.
// =============================================================================

class ProbDist {
 public:
  // Validates: no negative entries; complete distributions sum to 1 +- 1e-6,
  // incomplete ones must not exceed 1 + 1e-6. Throws std::invalid_argument.
  static ProbDist from_probs(std::vector<double> probs, bool complete = true);

  // Softmax over natural-log-scale scores; always complete.
  static ProbDist from_logits(std::span<const double> logits);

  std::size_t vocab_size() const { return probs_.size(); }
  double prob(TokenId id) const {
    return probs_[static_cast<std::size_t>(id)];
  }
  std::span<const double> probs() const { return probs_; }
  bool complete() const { return complete_; }

  // Highest-probability id, lowest id on ties.
  TokenId argmax() const;

 private:
  std::vector<double> probs_;
  bool complete_ = true;
};

struct Candidate {
  TokenId token;
  double prob;

  bool operator==(const Candidate&) const = default;
};

// Candidates in selection order: probability descending, id ascending on
// ties. Every routine that picks among candidates walks this order.
using CandidateSet = std::vector<Candidate>;

// The k most probable tokens. Throws ConfigError unless 1 <= k <= vocab size.
CandidateSet top_k_candidates(const ProbDist& dist, int k);

// Smallest selection-order prefix whose mass reaches p. Requires a complete
// distribution (throws CapabilityError otherwise); p outside (0, 1] throws
// ConfigError. With p = 1 this is the full support minus zero-probability
// tokens.
CandidateSet nucleus_set(const ProbDist& dist, double p);

}  // namespace modec
