#include "modec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace modec {

std::vector<std::vector<TokenId>> load_token_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open token file: " + path);
  std::vector<std::vector<TokenId>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<TokenId> tokens;
    long long value = 0;
    while (ls >> value) {
      if (value < 0)
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": negative token id");
      tokens.push_back(static_cast<TokenId>(value));
    }
    if (!ls.eof())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": non-integer token");
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

void save_token_lines(const std::string& path,
                      const std::vector<std::vector<TokenId>>& lines) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write token file: " + path);
  for (const auto& tokens : lines) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << tokens[i];
    }
    out << '\n';
  }
}

Vocabulary infer_vocabulary(const std::vector<std::vector<TokenId>>& docs) {
  TokenId max_id = -1;
  for (const auto& doc : docs)
    for (const TokenId t : doc) max_id = std::max(max_id, t);
  if (max_id < 0) throw ConfigError("no tokens to infer a vocabulary from");
  Vocabulary v;
  v.size = max_id + 3;
  v.terminator_id = max_id + 1;
  v.bos_id = max_id + 2;
  return v;
}

}  // namespace modec
