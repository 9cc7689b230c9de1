#pragma once

#include <vector>

#include "maieutic/language_model.hpp"
#include "maieutic/cnf.hpp"
#include "maieutic/prompts.hpp"
#include "maieutic/tree.hpp"

namespace maieutic {

namespace nli {
class Verifier;
}

// Clauses whose absolute weight falls below this are dropped.
inline constexpr double kMinClauseWeight = 1e-12;

// (p - q) / (p + q) for p = P(True | E), q = P(True | not E).
// Throws DegenerateBelief when both are zero.
double belief_weight(double true_prob, double neg_true_prob);
double belief_weight(const Proposition& node);

// Normalized likelihood of an explanation under its own label versus the
// opposite one, from the two log-likelihoods: sigmoid(logp_label - logp_opposite).
double consistency_weight(double logp_label, double logp_opposite);

// Calls the model for both labels and combines them.
double consistency_weight(const Proposition& child, const Proposition& parent, Label label,
                          lm::LanguageModel& model, const PromptSet& abductive);

enum class CompileMode { Likelihood, Verifier };

std::string_view to_string(CompileMode mode);
CompileMode compile_mode_from_string(std::string_view text);

struct CompileOptions {
  CompileMode mode = CompileMode::Verifier;
  // Weight NLI clauses by the verifier's label probability instead of 1.
  bool nli_probability_weights = false;
};

// Maps tree nodes to solver variables in pre-order; the root is variable 0.
WeightedCnf declare_variables(const MaieuticTree& tree);

// Unary clauses on non-root leaves, oriented by integrity, weighted by |belief|.
std::vector<WeightedClause> compile_belief_clauses(const MaieuticTree& tree,
                                                           const WeightedCnf& vars);
// One implication per edge: child -> parent for True edges, child -> not parent for False.
std::vector<WeightedClause> compile_consistency_clauses(const MaieuticTree& tree,
                                                                const WeightedCnf& vars,
                                                                lm::LanguageModel& model,
                                                                const PromptSet& abductive);

// Throws EmptyTree for a root-only tree. `verifier` is required in Verifier mode.
WeightedCnf compile(const MaieuticTree& tree, const CompileOptions& options,
                            lm::LanguageModel* model, nli::Verifier* verifier,
                            const lm::PromptBundle& prompts);

}  // namespace maieutic
