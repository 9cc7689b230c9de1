#include "maieutic/constraint_compiler.hpp"

#include <cmath>
#include <stdexcept>

#include "maieutic/error.hpp"
#include "maieutic/parallel.hpp"
#include "maieutic/verifier.hpp"

namespace maieutic {

double belief_weight(double true_prob, double neg_true_prob) {
  if (!std::isfinite(true_prob) || !std::isfinite(neg_true_prob)) {
    throw Error(ErrorCode::NonFiniteValue, "belief inputs must be finite");
  }
  if (true_prob < 0.0 || neg_true_prob < 0.0) throw std::invalid_argument("negative probability");
  const double sum = true_prob + neg_true_prob;
  if (sum <= 0.0) throw Error(ErrorCode::DegenerateBelief, "both truth probabilities are zero");
  return (true_prob - neg_true_prob) / sum;
}

double belief_weight(const Proposition& node) {
  if (!node.true_prob || !node.neg_true_prob) {
    throw std::invalid_argument("node " + node.id + " has no truth probabilities");
  }
  return belief_weight(*node.true_prob, *node.neg_true_prob);
}

double consistency_weight(double logp_label, double logp_opposite) {
  if (!std::isfinite(logp_label) || !std::isfinite(logp_opposite)) {
    throw Error(ErrorCode::NonFiniteValue, "log-likelihoods must be finite");
  }
  // p_a / (p_a + p_b) = 1 / (1 + exp(logp_b - logp_a)), evaluated on the side
  // where the exponent is non-positive.
  const double delta = logp_label - logp_opposite;
  if (delta >= 0.0) return 1.0 / (1.0 + std::exp(-delta));
  const double e = std::exp(delta);
  return e / (1.0 + e);
}

double consistency_weight(const Proposition& child, const Proposition& parent, Label label,
                          lm::LanguageModel& model, const PromptSet& abductive) {
  const double same = model.sequence_logprob(child.text, parent.text, label, abductive);
  const double other = model.sequence_logprob(child.text, parent.text, opposite(label), abductive);
  return consistency_weight(same, other);
}

std::string_view to_string(CompileMode mode) {
  return mode == CompileMode::Likelihood ? "Likelihood" : "Verifier";
}

CompileMode compile_mode_from_string(std::string_view text) {
  if (text == "Likelihood" || text == "likelihood") return CompileMode::Likelihood;
  if (text == "Verifier" || text == "verifier") return CompileMode::Verifier;
  throw std::invalid_argument("unknown compile mode: " + std::string(text));
}

WeightedCnf declare_variables(const MaieuticTree& tree) {
  WeightedCnf cnf;
  for (const auto& id : tree_node_ids(tree)) cnf.add_variable(id);
  return cnf;
}

std::vector<WeightedClause> compile_belief_clauses(const MaieuticTree& tree,
                                                   const WeightedCnf& vars) {
  std::vector<WeightedClause> out;
  for (const auto& leaf : tree_leaves(tree)) {
    if (leaf.id == MaieuticTree::kRootId || !leaf.integral()) continue;
    const double w = belief_weight(leaf);
    if (std::abs(w) < kMinClauseWeight) continue;
    WeightedClause clause;
    clause.literals = {{vars.var(leaf.id), leaf.integrity == Integrity::IntegralTrue}};
    clause.weight = std::abs(w);
    clause.origin = ClauseOrigin::Belief;
    out.push_back(std::move(clause));
  }
  return out;
}

std::vector<WeightedClause> compile_consistency_clauses(const MaieuticTree& tree,
                                                        const WeightedCnf& vars,
                                                        lm::LanguageModel& model,
                                                        const PromptSet& abductive) {
  const auto edges = tree_edges(tree);
  const auto weights = parallel_map<double>(edges.size(), 4, [&](std::size_t i) {
    const auto& e = edges[i];
    return consistency_weight(tree.node(e.child), tree.node(e.parent), e.label, model, abductive);
  });
  std::vector<WeightedClause> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (weights[i] < kMinClauseWeight) continue;
    const auto& e = edges[i];
    WeightedClause clause;
    clause.literals = {{vars.var(e.child), false}, {vars.var(e.parent), e.label == Label::True}};
    clause.weight = weights[i];
    clause.origin = ClauseOrigin::Consistency;
    out.push_back(std::move(clause));
  }
  return out;
}

WeightedCnf compile(const MaieuticTree& tree, const CompileOptions& options,
                    lm::LanguageModel* model, nli::Verifier* verifier,
                    const lm::PromptBundle& prompts) {
  if (tree.size() < 2) throw Error(ErrorCode::EmptyTree, "tree has no propositions besides the question");
  WeightedCnf cnf = declare_variables(tree);
  for (auto& c : compile_belief_clauses(tree, cnf)) cnf.add_clause(std::move(c));
  if (options.mode == CompileMode::Likelihood) {
    if (!model) throw std::invalid_argument("likelihood mode needs a language model");
    for (auto& c : compile_consistency_clauses(tree, cnf, *model, prompts.abductive)) {
      cnf.add_clause(std::move(c));
    }
  } else {
    if (!verifier) throw std::invalid_argument("verifier mode needs a verifier");
    nli::RelationOptions relation;
    relation.probability_weights = options.nli_probability_weights;
    for (auto& c : nli::relation_clauses(tree, cnf, *verifier, relation)) cnf.add_clause(std::move(c));
  }
  return cnf;
}

}  // namespace maieutic
