#include "modec/http_provider.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace modec {

using nlohmann::json;

struct HttpProvider::Client {
  explicit Client(const std::string& endpoint) : http(endpoint) {}
  httplib::Client http;
};

HttpProvider::HttpProvider(Options opts) : opts_(std::move(opts)) {
  opts_.vocab.validate();
  if (opts_.timeout_ms < 1) throw ConfigError("timeout must be positive");
  if (opts_.top_n.has_value() &&
      (*opts_.top_n < 1 || *opts_.top_n > opts_.vocab.size))
    throw ConfigError("top_n outside [1, vocab_size]");
  endpoint_ = opts_.endpoint;
  if (endpoint_.empty()) {
    const char* env = std::getenv("MODEC_LOGITS_ENDPOINT");
    if (env == nullptr || *env == '\0')
      throw ConfigError(
          "no endpoint configured and MODEC_LOGITS_ENDPOINT is unset");
    endpoint_ = env;
  }
  client_ = std::make_unique<Client>(endpoint_);
  client_->http.set_connection_timeout(0, opts_.timeout_ms * 1000);
  client_->http.set_read_timeout(0, opts_.timeout_ms * 1000);
  client_->http.set_write_timeout(0, opts_.timeout_ms * 1000);
}

HttpProvider::~HttpProvider() = default;

ProbDist HttpProvider::next_distribution(
    std::span<const TokenId> context) const {
  json req{{"context", std::vector<TokenId>(context.begin(), context.end())}};
  if (opts_.top_n.has_value())
    req["top_n"] = *opts_.top_n;
  else
    req["top_n"] = nullptr;

  httplib::Result res = [&] {
    const std::lock_guard<std::mutex> lock(mutex_);
    return client_->http.Post("/v1/logits", req.dump(), "application/json");
  }();
  if (!res)
    throw ProviderError(ProviderErrorCode::transport,
                        "request to " + endpoint_ + " failed: " +
                            httplib::to_string(res.error()));
  if (res->status != 200)
    throw ProviderError(ProviderErrorCode::transport,
                        "server returned status " +
                            std::to_string(res->status));

  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::exception& e) {
    throw ProviderError(ProviderErrorCode::malformed,
                        std::string("unparsable response body: ") + e.what());
  }

  std::int64_t vocab_size = 0;
  bool complete = false;
  std::vector<std::pair<TokenId, double>> entries;
  try {
    vocab_size = body.at("vocab_size").get<std::int64_t>();
    complete = body.at("complete").get<bool>();
    for (const json& e : body.at("entries"))
      entries.emplace_back(e.at("id").get<TokenId>(),
                           e.at("logprob").get<double>());
  } catch (const json::exception& e) {
    throw ProviderError(ProviderErrorCode::malformed,
                        std::string("response missing fields: ") + e.what());
  }

  if (vocab_size != opts_.vocab.size)
    throw ProviderError(ProviderErrorCode::vocab_mismatch,
                        "server vocab_size " + std::to_string(vocab_size) +
                            " != configured " +
                            std::to_string(opts_.vocab.size));

  std::vector<double> probs(static_cast<std::size_t>(opts_.vocab.size), 0.0);
  std::vector<bool> seen(probs.size(), false);
  for (const auto& [id, logprob] : entries) {
    if (!opts_.vocab.contains(id))
      throw ProviderError(ProviderErrorCode::malformed,
                          "entry id outside vocabulary");
    const auto idx = static_cast<std::size_t>(id);
    if (seen[idx])
      throw ProviderError(ProviderErrorCode::malformed, "duplicate entry id");
    seen[idx] = true;
    probs[idx] = std::exp(logprob);
  }

  if (complete) {
    if (entries.size() != probs.size())
      throw ProviderError(ProviderErrorCode::malformed,
                          "complete response lists " +
                              std::to_string(entries.size()) + " of " +
                              std::to_string(probs.size()) + " ids");
    double mass = 0.0;
    for (const double p : probs) mass += p;
    if (!(std::abs(mass - 1.0) <= 1e-2))
      throw ProviderError(ProviderErrorCode::malformed,
                          "probability mass " + std::to_string(mass) +
                              " too far from 1");
    for (double& p : probs) p /= mass;
    return ProbDist::from_probs(std::move(probs), /*complete=*/true);
  }

  const std::size_t required =
      opts_.top_n.has_value()
          ? static_cast<std::size_t>(*opts_.top_n)
          : probs.size();
  if (entries.size() < required)
    throw ProviderError(ProviderErrorCode::incomplete,
                        "sliced response has " +
                            std::to_string(entries.size()) +
                            " entries, need " + std::to_string(required));
  try {
    return ProbDist::from_probs(std::move(probs), /*complete=*/false);
  } catch (const std::invalid_argument& e) {
    throw ProviderError(ProviderErrorCode::malformed, e.what());
  }
}

}  // namespace modec
