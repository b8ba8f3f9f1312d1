#include "modec/types.hpp"

namespace modec {

const char* to_string(ProviderErrorCode code) {
  switch (code) {
    case ProviderErrorCode::transport:
      return "transport";
    case ProviderErrorCode::malformed:
      return "malformed";
    case ProviderErrorCode::vocab_mismatch:
      return "vocab_mismatch";
    case ProviderErrorCode::incomplete:
      return "incomplete";
  }
  return "unknown";
}

void Vocabulary::validate() const {
  if (size <= 0) throw ConfigError("vocabulary size must be positive");
  if (terminator_id != -1 && !contains(terminator_id))
    throw ConfigError("terminator id outside vocabulary");
  if (bos_id != -1 && !contains(bos_id))
    throw ConfigError("bos id outside vocabulary");
}

}  // namespace modec
