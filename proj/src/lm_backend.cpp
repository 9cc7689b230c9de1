#include "maieutic/lm_backend.hpp"

#include "maieutic/digest.hpp"
#include "maieutic/prompts.hpp"
#include "maieutic/serialization.hpp"

namespace maieutic::lm {

using nlohmann::json;

std::string_view to_string(RequestKind kind) {
  switch (kind) {
    case RequestKind::Truth: return "truth";
    case RequestKind::Abduce: return "abduce";
    case RequestKind::Explain: return "explain";
    case RequestKind::Likelihood: return "likelihood";
    case RequestKind::Negate: return "negate";
  }
  return "truth";
}

std::string Request::fixture_key() const { return json_digest(descriptor); }

std::string Request::cache_key(std::string_view backend_id) const {
  json key{{"backend", backend_id},
           {"kind", to_string(kind)},
           {"prompt", prompt},
           {"continuation", continuation},
           {"decoding", decoding}};
  if (decoding.strategy == DecodingStrategy::Nucleus && seed) key["seed"] = *seed;
  return json_digest(key);
}

bool Request::cacheable() const {
  const bool generates = kind == RequestKind::Abduce || kind == RequestKind::Explain ||
                         kind == RequestKind::Negate;
  return !(generates && decoding.strategy == DecodingStrategy::Nucleus && !seed);
}

namespace descriptors {

json truth(std::string_view statement) {
  return json{{"kind", "truth"}, {"statement", statement}};
}

json truth_given_explanation(std::string_view question, std::string_view explanation) {
  return json{{"kind", "truth"}, {"statement", question}, {"explanation", explanation}};
}

json abduce(std::string_view question, Label label, const DecodingParams& decoding) {
  return json{{"kind", "abduce"},
              {"question", question},
              {"label", to_string(label)},
              {"strategy", to_string(decoding.strategy)},
              {"samples", decoding.sample_count}};
}

json explain(std::string_view question) {
  return json{{"kind", "explain"}, {"question", question}};
}

json likelihood(std::string_view explanation, std::string_view question, Label label) {
  return json{{"kind", "likelihood"},
              {"question", question},
              {"label", to_string(label)},
              {"explanation", explanation}};
}

json negate(std::string_view statement) {
  return json{{"kind", "negate"}, {"statement", statement}};
}

}  // namespace descriptors

Request truth_request(std::string_view statement, const PromptSet& qa_pairs) {
  Request r;
  r.kind = RequestKind::Truth;
  r.descriptor = descriptors::truth(statement);
  r.prompt = render_truth_prompt(statement, qa_pairs);
  r.decoding.max_tokens = 1;
  return r;
}

Request truth_given_explanation_request(std::string_view question, std::string_view explanation,
                                        const PromptSet& qa_explanations) {
  Request r;
  r.kind = RequestKind::Truth;
  r.descriptor = descriptors::truth_given_explanation(question, explanation);
  r.prompt = render_answer_with_explanation_prompt(question, explanation, qa_explanations);
  r.decoding.max_tokens = 1;
  return r;
}

Request abduce_request(std::string_view question, Label label, const PromptSet& abductive,
                       const DecodingParams& decoding, std::optional<std::uint64_t> seed) {
  decoding.validate();
  Request r;
  r.kind = RequestKind::Abduce;
  r.descriptor = descriptors::abduce(question, label, decoding);
  r.prompt = render_abductive_prompt(question, label, abductive);
  r.decoding = decoding;
  r.seed = seed;
  return r;
}

Request explain_request(std::string_view question, const PromptSet& qa_explanations) {
  Request r;
  r.kind = RequestKind::Explain;
  r.descriptor = descriptors::explain(question);
  r.prompt = render_explanation_prompt(question, qa_explanations);
  r.decoding.stop_sequences = {"\n", std::string(kAnswerCue)};
  return r;
}

Request likelihood_request(std::string_view explanation, std::string_view question, Label label,
                           const PromptSet& abductive) {
  Request r;
  r.kind = RequestKind::Likelihood;
  r.descriptor = descriptors::likelihood(explanation, question, label);
  r.prompt = render_abductive_prompt(question, label, abductive);
  r.continuation = " " + std::string(explanation);
  return r;
}

Request negate_request(std::string_view statement) {
  Request r;
  r.kind = RequestKind::Negate;
  r.descriptor = descriptors::negate(statement);
  r.prompt = render_negation_prompt(statement);
  return r;
}

}  // namespace maieutic::lm
