#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "maieutic/core.hpp"

namespace maieutic::lm {

enum class RequestKind { Truth, Abduce, Explain, Likelihood, Negate };

std::string_view to_string(RequestKind kind);

// One backend call. `descriptor` carries the semantic arguments and keys
// scripted fixtures; `prompt` is the fully rendered completion prompt and keys
// the response cache.
//
// Raw responses by kind:
//   Truth                     {"true": p|null, "false": p|null}  (answer-token probabilities)
//   Abduce, Explain, Negate   {"completions": [text, ...]}
//   Likelihood                {"logprob": x} or {"unsupported": true}
struct Request {
  RequestKind kind = RequestKind::Truth;
  nlohmann::json descriptor;
  std::string prompt;
  std::string continuation;
  DecodingParams decoding;
  std::optional<std::uint64_t> seed;

  std::string fixture_key() const;
  std::string cache_key(std::string_view backend_id) const;
  // Stochastic generations are cached only when a seed pins them.
  bool cacheable() const;
};

namespace descriptors {
nlohmann::json truth(std::string_view statement);
nlohmann::json truth_given_explanation(std::string_view question, std::string_view explanation);
nlohmann::json abduce(std::string_view question, Label label, const DecodingParams& decoding);
nlohmann::json explain(std::string_view question);
nlohmann::json likelihood(std::string_view explanation, std::string_view question, Label label);
nlohmann::json negate(std::string_view statement);
}  // namespace descriptors

// Request factories; these render the prompt for the given demonstrations.
Request truth_request(std::string_view statement, const PromptSet& qa_pairs);
Request truth_given_explanation_request(std::string_view question, std::string_view explanation,
                                        const PromptSet& qa_explanations);
Request abduce_request(std::string_view question, Label label, const PromptSet& abductive,
                       const DecodingParams& decoding, std::optional<std::uint64_t> seed);
Request explain_request(std::string_view question, const PromptSet& qa_explanations);
Request likelihood_request(std::string_view explanation, std::string_view question, Label label,
                           const PromptSet& abductive);
Request negate_request(std::string_view statement);

// A generative language model. Implementations must be callable concurrently.
class LmBackend {
 public:
  virtual ~LmBackend() = default;

  // Stable identifier; part of every cache key.
  virtual std::string id() const = 0;
  virtual nlohmann::json complete(const Request& request) = 0;
};

}  // namespace maieutic::lm
