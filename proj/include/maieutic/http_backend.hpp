#pragma once

#include <string>

#include "maieutic/http.hpp"
#include "maieutic/lm_backend.hpp"

namespace maieutic::lm {

struct HttpBackendConfig {
  std::string endpoint;  // full URL of a completion-style endpoint
  std::string api_key;
  std::string model;
  int top_logprobs = 5;
  RetryPolicy retry;

  // Overrides fields from MAIEUTIC_LM_ENDPOINT, MAIEUTIC_LM_API_KEY and
  // MAIEUTIC_LM_MODEL when those are set.
  HttpBackendConfig with_environment() const;
};

// Client for an OpenAI-style /completions API. Truth queries read the
// top-logprob distribution at the first generated position; likelihood
// queries echo the prompt and sum the logprobs of the continuation tokens.
class HttpBackend : public LmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::string id() const override;
  nlohmann::json complete(const Request& request) override;

 private:
  nlohmann::json post(const nlohmann::json& body, bool* unsupported);

  HttpBackendConfig config_;
  HttpEndpoint endpoint_;
};

}  // namespace maieutic::lm
