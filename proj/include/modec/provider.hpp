#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "modec/dist.hpp"
#include "modec/types.hpp"

namespace modec {

using Representation = std::vector<double>;

// =============================================================================
// Source of next-token distributions, the stand-in for a scoring language
// model. Implementations are immutable once in use and safe to query from
// multiple threads.
// =============================================================================

class DistributionProvider {
 public:
  virtual ~DistributionProvider() = default;

  virtual const Vocabulary& vocab() const = 0;

  // Distribution over the next token given `context`. The context is never
  // empty; callers query from a prompt or a bos-seeded sequence.
  virtual ProbDist next_distribution(std::span<const TokenId> context) const = 0;

  // Whether next_distribution always returns complete distributions.
  virtual bool complete_distributions() const { return true; }

  // Hidden-state stand-in for the final position of `context`, used by
  // similarity penalties. Base implementation throws CapabilityError.
  virtual bool supports_representations() const { return false; }
  virtual Representation representation(std::span<const TokenId> context) const;
};

// Same distribution for every context: uniform over the vocabulary.
class UniformProvider : public DistributionProvider {
 public:
  explicit UniformProvider(Vocabulary vocab);

  const Vocabulary& vocab() const override { return vocab_; }
  ProbDist next_distribution(std::span<const TokenId> context) const override;

 private:
  Vocabulary vocab_;
};

// Exact context-to-distribution table, for tests and replayable runs.
// Program every context the run will visit (or set a fallback); lookups of
// unprogrammed contexts throw std::out_of_range so scripting gaps surface
// immediately.
class ScriptedProvider : public DistributionProvider {
 public:
  explicit ScriptedProvider(Vocabulary vocab);

  // `sparse` lists (id, probability); unlisted ids get zero.
  void program(std::vector<TokenId> context,
               const std::vector<std::pair<TokenId, double>>& sparse);
  void program_fallback(const std::vector<std::pair<TokenId, double>>& sparse);
  void program_representation(std::vector<TokenId> context, Representation rep);

  const Vocabulary& vocab() const override { return vocab_; }
  ProbDist next_distribution(std::span<const TokenId> context) const override;
  bool supports_representations() const override { return has_reps_; }
  Representation representation(std::span<const TokenId> context) const override;

 private:
  ProbDist make_dist(const std::vector<std::pair<TokenId, double>>& sparse) const;

  struct SpanHash {
    std::size_t operator()(const std::vector<TokenId>& v) const;
  };

  Vocabulary vocab_;
  std::unordered_map<std::vector<TokenId>, ProbDist, SpanHash> dists_;
  std::unordered_map<std::vector<TokenId>, Representation, SpanHash> reps_;
  ProbDist fallback_;
  bool has_fallback_ = false;
  bool has_reps_ = false;
};

}  // namespace modec
