#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maieutic/cache.hpp"
#include "maieutic/core.hpp"
#include "maieutic/lm_backend.hpp"
#include "maieutic/trace.hpp"

namespace maieutic::lm {

struct TruthResponse {
  double true_prob = 0.5;
  double false_prob = 0.5;
};

// Typed front end over an LmBackend: renders prompts, consults the cache,
// records the trace, and validates raw responses. Thread-safe.
class LanguageModel {
 public:
  explicit LanguageModel(std::shared_ptr<LmBackend> backend,
                         std::shared_ptr<ResponseCache> cache = nullptr,
                         std::shared_ptr<Trace> trace = nullptr,
                         std::optional<std::uint64_t> seed = std::nullopt);

  // Answer-token probabilities renormalized over " True" / " False".
  TruthResponse true_prob(std::string_view statement, const PromptSet& qa_pairs);
  TruthResponse true_prob_given_explanation(std::string_view question, std::string_view explanation,
                                            const PromptSet& qa_explanations);

  // Completions after "{question}? {label}, because", trimmed, with blank
  // samples dropped. Throws EmptyGeneration when nothing usable remains.
  std::vector<std::string> sample_abductive(std::string_view question, Label label,
                                            const PromptSet& abductive,
                                            const DecodingParams& decoding);

  // Total log-likelihood of `explanation` under the abductive prompt for
  // (question, label). Throws NotSupported when the backend has no logprobs.
  double sequence_logprob(std::string_view explanation, std::string_view question, Label label,
                          const PromptSet& abductive);

  std::string negate(std::string_view statement, NegationStrategy strategy);

  // Greedy explanation for the chain-of-thought baseline; empty when the
  // model produced nothing usable.
  std::string sample_explanation(std::string_view question, const PromptSet& qa_explanations);

  const LmBackend& backend() const { return *backend_; }
  std::shared_ptr<Trace> trace() const { return trace_; }

 private:
  nlohmann::json dispatch(const Request& request);
  TruthResponse to_truth(const nlohmann::json& raw, const Request& request) const;

  std::shared_ptr<LmBackend> backend_;
  std::shared_ptr<ResponseCache> cache_;
  std::shared_ptr<Trace> trace_;
  std::optional<std::uint64_t> seed_;
};

// Renormalizes two raw answer-token probabilities. Throws MalformedResponse
// when both are absent or zero and NonFiniteValue on NaN/inf.
TruthResponse renormalize(std::optional<double> raw_true, std::optional<double> raw_false);

}  // namespace maieutic::lm
