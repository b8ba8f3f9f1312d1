#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "modec/types.hpp"

namespace modec {

// =============================================================================
// Append-only token sequence with an occurrence index.
//
// Positions are 1-based: for a sequence x of length n, x_1 is the first token
// and x_n the last. The index maps each token to the sorted list of its
// positions, giving O(1) membership tests and letting the circular-depth
// query touch only the occurrences of its candidate.
// =============================================================================

class TokenSequence {
 public:
  TokenSequence() = default;
  explicit TokenSequence(std::span<const TokenId> initial);

  void append(TokenId token);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::span<const TokenId> tokens() const { return tokens_; }

  // 1-based access; pos must be in [1, size()].
  TokenId at(std::size_t pos) const { return tokens_.at(pos - 1); }

  bool contains(TokenId token) const;

  // Sorted 1-based positions of `token`; empty when absent.
  std::span<const std::size_t> positions(TokenId token) const;

  // Depth of re-entry for `candidate`: the length of the longest string
  // formed by appending the candidate to a suffix of the sequence (the empty
  // suffix included) that already occurs contiguously in the sequence.
  // Occurrences may overlap the suffix they extend. Zero iff the candidate is
  // absent; otherwise between 1 and size().
  std::uint32_t circular_depth(TokenId candidate) const;

 private:
  std::vector<TokenId> tokens_;
  std::unordered_map<TokenId, std::vector<std::size_t>> positions_;
};

// Edge (a, b) for every adjacent pair in the sequence, with multiplicity.
// Edges are ordered by first appearance; this is the graph the DOT export
// renders.
struct AdjacencyEdge {
  TokenId from;
  TokenId to;
  std::uint32_t count;

  bool operator==(const AdjacencyEdge&) const = default;
};

std::vector<AdjacencyEdge> adjacency_edges(const TokenSequence& seq);

}  // namespace modec
