#include "modec/dot_export.hpp"

#include <sstream>
#include <unordered_set>

namespace modec {

std::string to_dot(const TokenSequence& seq, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  std::unordered_set<TokenId> seen;
  for (const TokenId t : seq.tokens())
    if (seen.insert(t).second)
      os << "  t" << t << " [label=\"" << t << "\"];\n";
  for (const AdjacencyEdge& e : adjacency_edges(seq))
    os << "  t" << e.from << " -> t" << e.to << " [label=\"" << e.count
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace modec
