#include "modec/token_sequence.hpp"

#include <map>
#include <utility>

namespace modec {

TokenSequence::TokenSequence(std::span<const TokenId> initial) {
  tokens_.reserve(initial.size());
  for (const TokenId t : initial) append(t);
}

void TokenSequence::append(TokenId token) {
  tokens_.push_back(token);
  positions_[token].push_back(tokens_.size());
}

bool TokenSequence::contains(TokenId token) const {
  return positions_.contains(token);
}

std::span<const std::size_t> TokenSequence::positions(TokenId token) const {
  const auto it = positions_.find(token);
  if (it == positions_.end()) return {};
  return it->second;
}

std::uint32_t TokenSequence::circular_depth(TokenId candidate) const {
  const auto it = positions_.find(candidate);
  if (it == positions_.end()) return 0;
  const std::size_t n = tokens_.size();
  // An occurrence at position j matches the candidate itself (the empty
  // suffix, depth 1) and extends backwards while sequence tokens ending at
  // j-1 keep matching the tokens ending at n. An occurrence can contribute a
  // depth of at most j, so scanning positions in descending order lets the
  // loop stop once no remaining occurrence can beat the best found.
  std::size_t best = 0;
  const auto& occ = it->second;
  for (auto rit = occ.rbegin(); rit != occ.rend(); ++rit) {
    const std::size_t j = *rit;
    if (j <= best) break;
    std::size_t m = 0;
    while (j - 1 - m >= 1 && tokens_[j - 2 - m] == tokens_[n - 1 - m]) ++m;
    if (m + 1 > best) best = m + 1;
  }
  return static_cast<std::uint32_t>(best);
}

std::vector<AdjacencyEdge> adjacency_edges(const TokenSequence& seq) {
  std::vector<AdjacencyEdge> edges;
  std::map<std::pair<TokenId, TokenId>, std::size_t> slot;
  const auto toks = seq.tokens();
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    const std::pair<TokenId, TokenId> key{toks[i], toks[i + 1]};
    const auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, edges.size());
      edges.push_back({key.first, key.second, 1});
    } else {
      ++edges[it->second].count;
    }
  }
  return edges;
}

}  // namespace modec
