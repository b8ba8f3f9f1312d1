#pragma once

#include <string>

#include "modec/token_sequence.hpp"

namespace modec {

// Graphviz DOT rendering of a sequence's adjacency structure: one node per
// distinct token, one edge per distinct adjacent pair labeled with its
// multiplicity. Nodes appear in first-occurrence order.
std::string to_dot(const TokenSequence& seq, const std::string& graph_name = "tokens");

}  // namespace modec
