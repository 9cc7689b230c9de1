#include "maieutic/http.hpp"

#include <thread>

#include <httplib.h>

#include "maieutic/error.hpp"

namespace maieutic {

HttpEndpoint HttpEndpoint::parse(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidConfig, "endpoint needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  HttpEndpoint ep;
  ep.scheme_host_port = url.substr(0, path_start);
  ep.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  return ep;
}

HttpResponse post_json(const HttpEndpoint& endpoint, const nlohmann::json& body,
                       const std::map<std::string, std::string>& headers,
                       const RetryPolicy& policy) {
  httplib::Headers hdrs(headers.begin(), headers.end());
  const auto payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(policy.base_delay * (1 << (attempt - 1)));
    httplib::Client client(endpoint.scheme_host_port);
    client.set_connection_timeout(policy.timeout);
    client.set_read_timeout(policy.timeout);
    client.set_write_timeout(policy.timeout);
    auto res = client.Post(endpoint.path, hdrs, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    HttpResponse out;
    out.status = res->status;
    try {
      out.body = res->body.empty() ? nlohmann::json() : nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::MalformedResponse, std::string("non-JSON response body: ") + ex.what());
    }
    return out;
  }
  throw Error(ErrorCode::BackendUnavailable,
              endpoint.scheme_host_port + endpoint.path + " after " +
                  std::to_string(policy.max_attempts) + " attempts: " + last_error);
}

}  // namespace maieutic
