#include "maieutic/tree_builder.hpp"

#include <algorithm>
#include <stdexcept>

#include "maieutic/constraint_compiler.hpp"
#include "maieutic/error.hpp"
#include "maieutic/parallel.hpp"

namespace maieutic {

Integrity classify_integrity(double true_prob, double neg_true_prob) {
  if (true_prob == 0.5 || neg_true_prob == 0.5) return Integrity::NotIntegral;
  const bool says_true = true_prob > 0.5;
  const bool negation_says_true = neg_true_prob > 0.5;
  if (says_true && !negation_says_true) return Integrity::IntegralTrue;
  if (!says_true && negation_says_true) return Integrity::IntegralFalse;
  return Integrity::NotIntegral;
}

IntegrityCheck check_integrity(std::string_view statement, lm::LanguageModel& model,
                               const PromptSet& qa_pairs, NegationStrategy negation) {
  IntegrityCheck out;
  out.negated_text = model.negate(statement, negation);
  out.true_prob = model.true_prob(statement, qa_pairs).true_prob;
  out.neg_true_prob = model.true_prob(out.negated_text, qa_pairs).true_prob;
  out.integrity = classify_integrity(out.true_prob, out.neg_true_prob);
  try {
    out.belief = belief_weight(out.true_prob, out.neg_true_prob);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateBelief) throw;
  }
  return out;
}

namespace {

std::vector<std::string> dedup(std::vector<std::string> items) {
  std::vector<std::string> out;
  for (auto& item : items) {
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> sample_or_empty(std::string_view question, Label label,
                                         const DecodingParams& decoding, lm::LanguageModel& model,
                                         const PromptSet& abductive) {
  try {
    return dedup(model.sample_abductive(question, label, abductive, decoding));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyGeneration) return {};
    throw;
  }
}

void apply(Proposition& p, const IntegrityCheck& check) {
  p.negated_text = check.negated_text;
  p.integrity = check.integrity;
  p.true_prob = check.true_prob;
  p.neg_true_prob = check.neg_true_prob;
  p.belief = check.belief;
}

}  // namespace

Abduction abduction(std::string_view question, const TreeConfig& config, int depth,
                    lm::LanguageModel& model, const PromptSet& abductive) {
  if (depth < 1 || depth > config.depth_limit) throw std::invalid_argument("depth outside [1, depth_limit]");
  const auto decoding = config.decoding_at(depth);
  Abduction out;
  out.for_true = sample_or_empty(question, Label::True, decoding, model, abductive);
  out.for_false = sample_or_empty(question, Label::False, decoding, model, abductive);
  return out;
}

MaieuticTree build_tree(std::string_view question, const TreeConfig& config,
                        lm::LanguageModel& model, const lm::PromptBundle& prompts,
                        BuildOptions options) {
  config.validate();
  const std::size_t workers = options.parallel ? 8 : 1;

  Proposition root;
  root.text = std::string(question);
  if (root.text.empty()) throw std::invalid_argument("question is empty");
  apply(root, check_integrity(root.text, model, prompts.qa_pairs, config.negation_strategy));
  MaieuticTree tree(std::move(root), config);

  std::vector<NodeId> frontier{MaieuticTree::kRootId};
  for (int depth = 1; depth <= config.depth_limit && !frontier.empty(); ++depth) {
    std::vector<NodeId> expanding;
    for (const auto& id : frontier) {
      if (id == MaieuticTree::kRootId || !tree.node(id).integral()) expanding.push_back(id);
    }
    // One generation job per (parent, label).
    const auto decoding = config.decoding_at(depth);
    const auto samples = parallel_map<std::vector<std::string>>(
        expanding.size() * 2, workers, [&](std::size_t i) {
          const Label label = i % 2 == 0 ? Label::True : Label::False;
          return sample_or_empty(tree.node(expanding[i / 2]).text, label, decoding, model,
                                 prompts.abductive);
        });

    struct Pending {
      NodeId parent;
      Label label;
      std::string text;
    };
    std::vector<Pending> pending;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& parent = expanding[i / 2];
      const Label label = i % 2 == 0 ? Label::True : Label::False;
      for (const auto& text : samples[i]) {
        if (text == tree.node(parent).text) continue;
        pending.push_back({parent, label, text});
      }
    }
    const auto checks = parallel_map<IntegrityCheck>(pending.size(), workers, [&](std::size_t i) {
      return check_integrity(pending[i].text, model, prompts.qa_pairs, config.negation_strategy);
    });

    std::vector<NodeId> next;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      Proposition child;
      child.text = pending[i].text;
      apply(child, checks[i]);
      next.push_back(tree.add_child(pending[i].parent, pending[i].label, std::move(child)));
    }
    frontier = std::move(next);
  }
  return tree;
}

MaieuticTree prune(MaieuticTree tree) {
  for (;;) {
    std::vector<NodeId> doomed;
    for (const auto& id : tree_node_ids(tree)) {
      if (id != MaieuticTree::kRootId && tree.is_leaf(id) && !tree.node(id).integral()) {
        doomed.push_back(id);
      }
    }
    if (doomed.empty()) return tree;
    for (const auto& id : doomed) tree.remove_leaf(id);
  }
}

}  // namespace maieutic
