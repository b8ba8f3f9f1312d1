#include "modec/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "modec/kernels.hpp"

namespace modec {

namespace {

constexpr double kMassTolerance = 1e-6;

bool selection_before(const Candidate& a, const Candidate& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  return a.token < b.token;
}

}  // namespace

ProbDist ProbDist::from_probs(std::vector<double> probs, bool complete) {
  if (probs.empty()) throw std::invalid_argument("empty distribution");
  for (const double p : probs)
    if (!(p >= 0.0))
      throw std::invalid_argument("negative or NaN probability");
  const double mass = kern::active_ops().sum(probs.data(), probs.size());
  if (complete) {
    if (std::abs(mass - 1.0) > kMassTolerance)
      throw std::invalid_argument("complete distribution mass " +
                                  std::to_string(mass) + " not within 1e-6 of 1");
  } else {
    if (mass > 1.0 + kMassTolerance)
      throw std::invalid_argument("distribution mass exceeds 1");
  }
  ProbDist d;
  d.probs_ = std::move(probs);
  d.complete_ = complete;
  return d;
}

ProbDist ProbDist::from_logits(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("empty distribution");
  const auto& ops = kern::active_ops();
  const double m = ops.max(logits.data(), logits.size());
  std::vector<double> probs(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i)
    probs[i] = std::exp(logits[i] - m);
  const double mass = ops.sum(probs.data(), probs.size());
  ops.scale(probs.data(), probs.size(), 1.0 / mass);
  ProbDist d;
  d.probs_ = std::move(probs);
  d.complete_ = true;
  return d;
}

TokenId ProbDist::argmax() const {
  return static_cast<TokenId>(
      kern::active_ops().argmax(probs_.data(), probs_.size()));
}

CandidateSet top_k_candidates(const ProbDist& dist, int k) {
  const auto v = static_cast<int>(dist.vocab_size());
  if (k < 1 || k > v)
    throw ConfigError("top_k " + std::to_string(k) +
                      " outside [1, vocab_size=" + std::to_string(v) + "]");
  const std::size_t n = dist.vocab_size();
  const auto kk = static_cast<std::size_t>(k);
  const double* p = dist.probs().data();
  if (kk * 8 >= n) {
    CandidateSet all(n);
    for (std::size_t id = 0; id < n; ++id)
      all[id] = {static_cast<TokenId>(id), p[id]};
    std::partial_sort(all.begin(), all.begin() + k, all.end(),
                      selection_before);
    all.resize(kk);
    return all;
  }
  // Small k: single pass keeping a sorted best-k list. A block is rescanned
  // only when its max strictly beats the current kth probability; equal
  // probabilities lose to the earlier (smaller) id, so <= blocks are skipped.
  // The comparator is a strict total order (ids are distinct), so this
  // matches the partial_sort result exactly.
  const auto& ops = kern::active_ops();
  constexpr std::size_t kBlock = 512;
  CandidateSet best;
  best.reserve(kk);
  for (std::size_t b = 0; b < n; b += kBlock) {
    const std::size_t len = std::min(kBlock, n - b);
    if (best.size() == kk && ops.max(p + b, len) <= best.back().prob)
      continue;
    for (std::size_t i = b; i < b + len; ++i) {
      const double pi = p[i];
      if (best.size() == kk) {
        if (pi <= best.back().prob) continue;
        best.pop_back();
      }
      auto it = best.begin();
      while (it != best.end() && it->prob >= pi) ++it;
      best.insert(it, {static_cast<TokenId>(i), pi});
    }
  }
  return best;
}

CandidateSet nucleus_set(const ProbDist& dist, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("nucleus_p must be in (0, 1]");
  if (!dist.complete())
    throw CapabilityError(
        "nucleus selection requires a complete distribution");
  CandidateSet all(dist.vocab_size());
  for (std::size_t id = 0; id < dist.vocab_size(); ++id)
    all[id] = {static_cast<TokenId>(id), dist.probs()[id]};
  std::sort(all.begin(), all.end(), selection_before);
  CandidateSet out;
  double cum = 0.0;
  for (const Candidate& c : all) {
    if (c.prob <= 0.0) break;
    out.push_back(c);
    cum += c.prob;
    if (cum >= p - 1e-9) break;
  }
  return out;
}

}  // namespace modec
