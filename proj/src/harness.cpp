#include "maieutic/harness.hpp"

#include <sstream>

#include "maieutic/serialization.hpp"

namespace maieutic::harness {

using nlohmann::json;

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Standard: return "Standard";
    case Method::ExplanationBased: return "ExplanationBased";
    case Method::Maieutic: return "Maieutic";
  }
  return "Standard";
}

Method method_from_string(std::string_view text) {
  if (text == "Standard" || text == "standard") return Method::Standard;
  if (text == "ExplanationBased" || text == "explanation" || text == "cot") return Method::ExplanationBased;
  if (text == "Maieutic" || text == "maieutic") return Method::Maieutic;
  throw std::invalid_argument("unknown method: " + std::string(text));
}

std::map<NodeId, bool> InferenceResult::node_values() const {
  std::map<NodeId, bool> out;
  if (!assignment || !cnf) return out;
  for (std::size_t v = 0; v < cnf->num_variables(); ++v) {
    out[cnf->name(static_cast<VarId>(v))] = assignment->values.at(v);
  }
  return out;
}

json to_json(const InferenceResult& r) {
  json out{{"question", r.question},
           {"answer", r.answer},
           {"method", to_string(r.method)},
           {"fallback_used", r.fallback_used},
           {"true_propositions", r.true_propositions}};
  if (!r.fallback_reason.empty()) out["fallback_reason"] = r.fallback_reason;
  if (r.explanation) out["explanation"] = *r.explanation;
  if (r.tree) out["tree"] = tree_to_json(*r.tree);
  if (r.cnf) out["clauses"] = clauses_to_json(*r.cnf);
  if (r.assignment) {
    json values = json::object();
    for (const auto& [id, v] : r.node_values()) values[id] = v;
    out["assignment"] = {{"values", std::move(values)},
                         {"satisfied_weight", r.assignment->satisfied_weight},
                         {"violated", r.assignment->violated}};
  }
  return out;
}

InferenceError::InferenceError(const Error& cause, std::string trace_jsonl)
    : Error(cause.code(), cause.what()), trace_jsonl_(std::move(trace_jsonl)) {}

InferenceResult infer_standard(const std::string& question, lm::LanguageModel& model,
                               const PromptSet& qa_pairs) {
  InferenceResult r;
  r.question = question;
  r.method = Method::Standard;
  const auto probs = model.true_prob(question, qa_pairs);
  if (probs.true_prob == probs.false_prob) {
    r.answer = false;
    r.fallback_used = true;
    r.fallback_reason = "ArgmaxTie";
  } else {
    r.answer = probs.true_prob > probs.false_prob;
  }
  return r;
}

InferenceResult infer_explanation_based(const std::string& question, lm::LanguageModel& model,
                                        const lm::PromptBundle& prompts) {
  const auto explanation = model.sample_explanation(question, prompts.qa_explanations);
  if (explanation.empty()) {
    auto r = infer_standard(question, model, prompts.qa_pairs);
    r.method = Method::ExplanationBased;
    r.fallback_used = true;
    r.fallback_reason = "EmptyGeneration";
    return r;
  }
  InferenceResult r;
  r.question = question;
  r.method = Method::ExplanationBased;
  r.explanation = explanation;
  const auto probs = model.true_prob_given_explanation(question, explanation, prompts.qa_explanations);
  if (probs.true_prob == probs.false_prob) {
    r.answer = false;
    r.fallback_used = true;
    r.fallback_reason = "ArgmaxTie";
  } else {
    r.answer = probs.true_prob > probs.false_prob;
  }
  return r;
}

namespace {

InferenceResult run_maieutic(const std::string& question, const Engine& engine) {
  auto& model = *engine.model;
  MaieuticTree tree =
      prune(build_tree(question, engine.tree, model, engine.prompts, engine.build));
  if (tree.size() < 2) {
    auto r = infer_standard(question, model, engine.prompts.qa_pairs);
    r.method = Method::Maieutic;
    r.fallback_used = true;
    r.fallback_reason = "EmptyTree";
    r.tree = std::move(tree);
    return r;
  }

  CompileOptions options = engine.compile;
  WeightedCnf cnf;
  try {
    cnf = compile(tree, options, &model, engine.verifier.get(), engine.prompts);
  } catch (const Error& e) {
    // Without logprobs, relations come from the verifier instead.
    if (e.code() != ErrorCode::NotSupported || !engine.verifier) throw;
    options.mode = CompileMode::Verifier;
    cnf = compile(tree, options, &model, engine.verifier.get(), engine.prompts);
  }
  auto assignment = maxsat::solve(cnf);

  InferenceResult r;
  r.question = question;
  r.method = Method::Maieutic;
  const VarId root = cnf.var(MaieuticTree::kRootId);
  r.answer = assignment.value(root);
  for (const auto& id : tree_node_ids(tree)) {
    if (id != MaieuticTree::kRootId && assignment.value(cnf.var(id))) {
      r.true_propositions.push_back(tree.node(id).text);
    }
  }
  if (r.answer != assignment.value(root)) throw std::logic_error("answer differs from root assignment");
  r.tree = std::move(tree);
  r.cnf = std::move(cnf);
  r.assignment = std::move(assignment);
  return r;
}

}  // namespace

InferenceResult infer_maieutic(const std::string& question, const Engine& engine) {
  if (!engine.model) throw std::invalid_argument("engine has no language model");
  try {
    return run_maieutic(question, engine);
  } catch (const InferenceError&) {
    throw;
  } catch (const Error& e) {
    const auto trace = engine.model->trace();
    throw InferenceError(e, trace ? trace->to_jsonl() : std::string());
  }
}

InferenceResult infer(const std::string& question, Method method, const Engine& engine) {
  if (!engine.model) throw std::invalid_argument("engine has no language model");
  switch (method) {
    case Method::Standard: return infer_standard(question, *engine.model, engine.prompts.qa_pairs);
    case Method::ExplanationBased:
      return infer_explanation_based(question, *engine.model, engine.prompts);
    case Method::Maieutic: return infer_maieutic(question, engine);
  }
  throw std::logic_error("unhandled method");
}

namespace {

std::string literal_text(const WeightedCnf& cnf, const Literal& lit) {
  return (lit.positive ? "" : "!") + cnf.name(lit.var);
}

}  // namespace

std::string explain_text(const InferenceResult& r) {
  std::ostringstream out;
  out << "Q: " << r.question << "\n";
  out << "Answer: " << (r.answer ? "True" : "False") << " (" << to_string(r.method) << ")\n";
  if (r.fallback_used) {
    out << "Fallback: answered by standard prompting (" << r.fallback_reason << ")\n";
  }
  if (r.explanation) out << "Explanation: " << *r.explanation << "\n";
  if (!r.tree || !r.assignment || !r.cnf) return out.str();

  const auto values = r.node_values();
  const auto& tree = *r.tree;
  for (const auto& id : tree_node_ids(tree)) {
    const auto& node = tree.node(id);
    out << std::string(2 * node.depth(), ' ');
    if (node.source_answer) out << "[" << to_string(*node.source_answer) << "] ";
    out << id << " = " << (values.at(id) ? "T" : "F") << "  " << node.text << "  ("
        << to_string(node.integrity);
    if (node.belief) out << ", belief " << *node.belief;
    out << ")\n";
  }
  out << "Clauses:\n";
  std::vector<bool> violated(r.cnf->clauses().size(), false);
  for (auto i : r.assignment->violated) violated[i] = true;
  for (std::size_t i = 0; i < r.cnf->clauses().size(); ++i) {
    const auto& c = r.cnf->clauses()[i];
    out << "  " << (violated[i] ? "[violated]  " : "[satisfied] ") << to_string(c.origin) << " "
        << c.weight << " : ";
    for (std::size_t k = 0; k < c.literals.size(); ++k) {
      out << (k ? " | " : "") << literal_text(*r.cnf, c.literals[k]);
    }
    out << "\n";
  }
  out << "Satisfied weight: " << r.assignment->satisfied_weight << " of " << r.cnf->total_weight()
      << "\n";
  return out.str();
}

std::string explain_dot(const InferenceResult& r) {
  if (!r.tree) return "digraph maieutic {}\n";
  const auto values = r.node_values();
  return tree_to_dot(*r.tree, values.empty() ? nullptr : &values);
}

}  // namespace maieutic::harness
