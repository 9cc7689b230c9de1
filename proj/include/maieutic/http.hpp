#pragma once

#include <chrono>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace maieutic {

struct HttpEndpoint {
  std::string scheme_host_port;  // "http://localhost:8080"
  std::string path;              // "/v1/completions"

  static HttpEndpoint parse(const std::string& url);
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds timeout{60000};
};

struct HttpResponse {
  int status = 0;
  nlohmann::json body;
};

// POSTs a JSON body. Connection failures, 429 and 5xx are retried with
// exponential backoff; BackendUnavailable is raised once attempts run out.
// Other statuses are returned to the caller.
HttpResponse post_json(const HttpEndpoint& endpoint, const nlohmann::json& body,
                       const std::map<std::string, std::string>& headers,
                       const RetryPolicy& policy);

}  // namespace maieutic
