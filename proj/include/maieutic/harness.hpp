#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maieutic/cnf.hpp"
#include "maieutic/constraint_compiler.hpp"
#include "maieutic/error.hpp"
#include "maieutic/language_model.hpp"
#include "maieutic/maxsat.hpp"
#include "maieutic/prompts.hpp"
#include "maieutic/tree.hpp"
#include "maieutic/tree_builder.hpp"
#include "maieutic/verifier.hpp"

namespace maieutic::harness {

enum class Method { Standard, ExplanationBased, Maieutic };

std::string_view to_string(Method method);
Method method_from_string(std::string_view text);

struct InferenceResult {
  std::string question;
  bool answer = false;
  Method method = Method::Standard;
  std::optional<MaieuticTree> tree;
  std::optional<WeightedCnf> cnf;
  std::optional<maxsat::Assignment> assignment;
  std::vector<std::string> true_propositions;
  bool fallback_used = false;
  std::string fallback_reason;
  // Chain-of-thought explanation, when the method produced one.
  std::optional<std::string> explanation;

  // Truth value per node id; empty without an assignment.
  std::map<NodeId, bool> node_values() const;
};

nlohmann::json to_json(const InferenceResult& result);

// Everything an inference run needs besides the question.
struct Engine {
  std::shared_ptr<lm::LanguageModel> model;
  std::shared_ptr<nli::Verifier> verifier;
  lm::PromptBundle prompts;
  TreeConfig tree;
  CompileOptions compile;
  BuildOptions build;
};

// Backend failure during inference, carrying the build trace (JSONL) so far.
class InferenceError : public Error {
 public:
  InferenceError(const Error& cause, std::string trace_jsonl);

  const std::string& trace_jsonl() const noexcept { return trace_jsonl_; }

 private:
  std::string trace_jsonl_;
};

// Argmax over the two answer tokens; an exact tie answers False and sets fallback_used.
InferenceResult infer_standard(const std::string& question, lm::LanguageModel& model,
                               const PromptSet& qa_pairs);
// Samples one explanation, then answers conditioned on it. An empty
// explanation falls through to infer_standard with fallback_used set.
InferenceResult infer_explanation_based(const std::string& question, lm::LanguageModel& model,
                                        const lm::PromptBundle& prompts);
// Build, prune, compile, solve; the answer is the root's value. A tree pruned
// down to its root falls back to infer_standard.
InferenceResult infer_maieutic(const std::string& question, const Engine& engine);
InferenceResult infer(const std::string& question, Method method, const Engine& engine);

// Plain-text rationale: tree with truth values, clause status and satisfied weight.
std::string explain_text(const InferenceResult& result);
std::string explain_dot(const InferenceResult& result);

}  // namespace maieutic::harness
