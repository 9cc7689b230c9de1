#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maieutic/core.hpp"
#include "maieutic/language_model.hpp"
#include "maieutic/prompts.hpp"
#include "maieutic/tree.hpp"

namespace maieutic {

struct IntegrityCheck {
  Integrity integrity = Integrity::Unchecked;
  std::string negated_text;
  double true_prob = 0.5;
  double neg_true_prob = 0.5;
  std::optional<double> belief;
};

// Both argmaxes must be strict; a 0.5 on either side yields NotIntegral.
Integrity classify_integrity(double true_prob, double neg_true_prob);

// Queries the truth probability of the statement and of its negation.
IntegrityCheck check_integrity(std::string_view statement, lm::LanguageModel& model,
                               const PromptSet& qa_pairs, NegationStrategy negation);

struct Abduction {
  std::vector<std::string> for_true;
  std::vector<std::string> for_false;
};

// Samples explanations for both labels at `depth`; exact duplicates within a
// label are merged. A label that yields nothing gets an empty list.
Abduction abduction(std::string_view question, const TreeConfig& config, int depth,
                    lm::LanguageModel& model, const PromptSet& abductive);

struct BuildOptions {
  // Run generation and integrity checks of one depth level concurrently.
  bool parallel = true;
};

// Grows the tree breadth-first. The root always expands; any other node
// expands only while it is not integral and below the depth limit.
MaieuticTree build_tree(std::string_view question, const TreeConfig& config,
                        lm::LanguageModel& model, const lm::PromptBundle& prompts,
                        BuildOptions options = {});

// Removes non-integral non-root leaves until none remain.
MaieuticTree prune(MaieuticTree tree);

}  // namespace maieutic
