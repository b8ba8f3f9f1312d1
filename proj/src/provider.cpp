#include "modec/provider.hpp"

#include <stdexcept>
#include <string>

namespace modec {

Representation DistributionProvider::representation(
    std::span<const TokenId>) const {
  throw CapabilityError("provider does not expose representations");
}

UniformProvider::UniformProvider(Vocabulary vocab) : vocab_(vocab) {
  vocab_.validate();
}

ProbDist UniformProvider::next_distribution(std::span<const TokenId>) const {
  const auto v = static_cast<std::size_t>(vocab_.size);
  return ProbDist::from_probs(std::vector<double>(v, 1.0 / double(v)));
}

ScriptedProvider::ScriptedProvider(Vocabulary vocab) : vocab_(vocab) {
  vocab_.validate();
}

std::size_t ScriptedProvider::SpanHash::operator()(
    const std::vector<TokenId>& v) const {
  // FNV-1a over the id bytes.
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

ProbDist ScriptedProvider::make_dist(
    const std::vector<std::pair<TokenId, double>>& sparse) const {
  std::vector<double> probs(static_cast<std::size_t>(vocab_.size), 0.0);
  for (const auto& [id, p] : sparse) {
    if (!vocab_.contains(id))
      throw ConfigError("scripted probability for id outside vocabulary");
    probs[static_cast<std::size_t>(id)] = p;
  }
  return ProbDist::from_probs(std::move(probs));
}

void ScriptedProvider::program(
    std::vector<TokenId> context,
    const std::vector<std::pair<TokenId, double>>& sparse) {
  dists_.insert_or_assign(std::move(context), make_dist(sparse));
}

void ScriptedProvider::program_fallback(
    const std::vector<std::pair<TokenId, double>>& sparse) {
  fallback_ = make_dist(sparse);
  has_fallback_ = true;
}

void ScriptedProvider::program_representation(std::vector<TokenId> context,
                                              Representation rep) {
  reps_.insert_or_assign(std::move(context), std::move(rep));
  has_reps_ = true;
}

ProbDist ScriptedProvider::next_distribution(
    std::span<const TokenId> context) const {
  const std::vector<TokenId> key(context.begin(), context.end());
  const auto it = dists_.find(key);
  if (it != dists_.end()) return it->second;
  if (has_fallback_) return fallback_;
  throw std::out_of_range("no scripted distribution for context of length " +
                          std::to_string(context.size()));
}

Representation ScriptedProvider::representation(
    std::span<const TokenId> context) const {
  const std::vector<TokenId> key(context.begin(), context.end());
  const auto it = reps_.find(key);
  if (it == reps_.end())
    throw std::out_of_range("no scripted representation for context of length " +
                            std::to_string(context.size()));
  return it->second;
}

}  // namespace modec
