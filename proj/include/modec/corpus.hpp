#pragma once

#include <string>
#include <vector>

#include "modec/types.hpp"

namespace modec {

// =============================================================================
// Token-id file handling. One document (or prompt) per line, tokens as
// whitespace-separated nonnegative integers; blank lines are ignored.
// =============================================================================

std::vector<std::vector<TokenId>> load_token_lines(const std::string& path);
void save_token_lines(const std::string& path,
                      const std::vector<std::vector<TokenId>>& lines);

// Dense vocabulary over the ids present in `docs`: size is max id + 1 plus
// two reserved ids, terminator at max+1 and bos at max+2.
Vocabulary infer_vocabulary(const std::vector<std::vector<TokenId>>& docs);

}  // namespace modec
