#pragma once

#include <string>
#include <string_view>

#include "maieutic/core.hpp"

namespace maieutic::lm {

// Surface forms scored at the answer position.
inline constexpr std::string_view kTrueToken = " True";
inline constexpr std::string_view kFalseToken = " False";
inline constexpr std::string_view kNegationPrefix = "It is wrong to say that ";
inline constexpr std::string_view kAnswerCue = " So the answer is";

// Trims whitespace and trailing '.'/'?' then appends '?'.
std::string as_question(std::string_view statement);

// "{q}? {A}\n\n" per demonstration, then "{statement}?". Requires QaPairs.
std::string render_truth_prompt(std::string_view statement, const PromptSet& prompts);
// "{q}? {e} So the answer is {A}.\n\n" per demonstration, then
// "{question}? {explanation} So the answer is". Requires QaExplanationTriples.
std::string render_answer_with_explanation_prompt(std::string_view question,
                                                  std::string_view explanation,
                                                  const PromptSet& prompts);
// Demonstrations as above, then "{question}?". Requires QaExplanationTriples.
std::string render_explanation_prompt(std::string_view question, const PromptSet& prompts);
// "{q}? {A}, because {e}\n\n" per demonstration, then "{question}? {label}, because".
// Requires AbductiveTriples.
std::string render_abductive_prompt(std::string_view question, Label label,
                                    const PromptSet& prompts);
std::string render_negation_prompt(std::string_view statement);

// "It is wrong to say that " + statement with a lowercased first letter.
std::string prefix_negation(std::string_view statement);

// Built-in demonstration sets, one per mode.
const PromptSet& default_prompt_set(PromptMode mode);

}  // namespace maieutic::lm

namespace maieutic::lm {

// The three demonstration sets an inference run needs.
struct PromptBundle {
  PromptSet qa_pairs = default_prompt_set(PromptMode::QaPairs);
  PromptSet qa_explanations = default_prompt_set(PromptMode::QaExplanationTriples);
  PromptSet abductive = default_prompt_set(PromptMode::AbductiveTriples);

  void validate() const;
};

}  // namespace maieutic::lm
