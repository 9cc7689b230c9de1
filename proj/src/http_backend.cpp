#include "maieutic/http_backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "maieutic/error.hpp"
#include "maieutic/prompts.hpp"

namespace maieutic::lm {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

HttpBackendConfig HttpBackendConfig::with_environment() const {
  HttpBackendConfig out = *this;
  out.endpoint = env_or("MAIEUTIC_LM_ENDPOINT", endpoint);
  out.api_key = env_or("MAIEUTIC_LM_API_KEY", api_key);
  out.model = env_or("MAIEUTIC_LM_MODEL", model);
  return out;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), endpoint_(HttpEndpoint::parse(config_.endpoint)) {}

std::string HttpBackend::id() const { return "http:" + config_.model + "@" + config_.endpoint; }

json HttpBackend::post(const json& body, bool* unsupported) {
  std::map<std::string, std::string> headers;
  if (!config_.api_key.empty()) headers["Authorization"] = "Bearer " + config_.api_key;
  auto res = post_json(endpoint_, body, headers, config_.retry);
  if (res.status == 400 && unsupported) {
    *unsupported = true;
    return {};
  }
  if (res.status != 200) {
    throw Error(ErrorCode::BackendUnavailable, "HTTP " + std::to_string(res.status) + ": " + res.body.dump());
  }
  if (!res.body.contains("choices") || !res.body.at("choices").is_array() ||
      res.body.at("choices").empty()) {
    throw Error(ErrorCode::MalformedResponse, "response has no choices");
  }
  return res.body;
}

json HttpBackend::complete(const Request& request) {
  json body{{"model", config_.model}, {"prompt", request.prompt}};
  try {
    switch (request.kind) {
      case RequestKind::Truth: {
        body["max_tokens"] = 1;
        body["temperature"] = 0;
        body["logprobs"] = config_.top_logprobs;
        const auto res = post(body, nullptr);
        const auto& top = res.at("choices").at(0).at("logprobs").at("top_logprobs").at(0);
        json out{{"true", nullptr}, {"false", nullptr}};
        if (top.contains(std::string(kTrueToken))) out["true"] = std::exp(top.at(std::string(kTrueToken)).get<double>());
        if (top.contains(std::string(kFalseToken))) out["false"] = std::exp(top.at(std::string(kFalseToken)).get<double>());
        return out;
      }
      case RequestKind::Likelihood: {
        body["prompt"] = request.prompt + request.continuation;
        body["max_tokens"] = 0;
        body["echo"] = true;
        body["logprobs"] = 0;
        bool unsupported = false;
        const auto res = post(body, &unsupported);
        if (unsupported) return json{{"unsupported", true}};
        const auto& choice = res.at("choices").at(0);
        if (!choice.contains("logprobs") || choice.at("logprobs").is_null()) {
          return json{{"unsupported", true}};
        }
        const auto& lp = choice.at("logprobs");
        const auto& offsets = lp.at("text_offset");
        const auto& logprobs = lp.at("token_logprobs");
        double total = 0.0;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
          if (offsets.at(i).get<std::size_t>() >= request.prompt.size() && !logprobs.at(i).is_null()) {
            total += logprobs.at(i).get<double>();
          }
        }
        return json{{"logprob", total}};
      }
      case RequestKind::Abduce:
      case RequestKind::Explain:
      case RequestKind::Negate: {
        const auto& d = request.decoding;
        body["max_tokens"] = d.max_tokens;
        body["n"] = d.sample_count;
        body["stop"] = d.stop_sequences;
        if (d.strategy == DecodingStrategy::Greedy) {
          body["temperature"] = 0;
        } else {
          body["temperature"] = 1;
          body["top_p"] = d.nucleus_p;
          if (request.seed) body["seed"] = *request.seed;
        }
        const auto res = post(body, nullptr);
        std::vector<std::pair<std::size_t, std::string>> indexed;
        for (const auto& choice : res.at("choices")) {
          indexed.emplace_back(choice.value("index", indexed.size()), choice.at("text").get<std::string>());
        }
        std::sort(indexed.begin(), indexed.end());
        json completions = json::array();
        for (auto& [_, text] : indexed) completions.push_back(std::move(text));
        return json{{"completions", std::move(completions)}};
      }
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::MalformedResponse, ex.what());
  }
  throw std::logic_error("unhandled request kind");
}

}  // namespace maieutic::lm
