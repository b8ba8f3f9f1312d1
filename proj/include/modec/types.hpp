#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modec {

using TokenId = std::int32_t;

// Configuration that fails validation (bad ranges, malformed files, unknown
// keys where a closed set is expected).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model fitting failures (empty corpus, no usable documents).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requesting an operation a provider does not implement, e.g. hidden-state
// representations from a provider that has none.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProviderErrorCode {
  transport = 1,       // connection, timeout, or non-200 status
  malformed = 2,       // response that cannot be parsed or fails validation
  vocab_mismatch = 3,  // server vocabulary size differs from the configured one
  incomplete = 4,      // sliced response with fewer entries than required
};

const char* to_string(ProviderErrorCode code);

// Runtime failure while obtaining a distribution from a provider.
class ProviderError : public std::runtime_error {
 public:
  ProviderError(ProviderErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ProviderErrorCode code() const { return code_; }

 private:
  ProviderErrorCode code_;
};

// Dense token-id space [0, size). The terminator ends generation when
// emitted; bos is prepended to documents when fitting so that first-token
// statistics exist. Either may be -1 when the model has no such token.
struct Vocabulary {
  std::int32_t size = 0;
  TokenId terminator_id = -1;
  TokenId bos_id = -1;

  bool contains(TokenId id) const { return id >= 0 && id < size; }
  void validate() const;
};

}  // namespace modec
