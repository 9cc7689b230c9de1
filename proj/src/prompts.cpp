#include "maieutic/prompts.hpp"

#include <cctype>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "maieutic/serialization.hpp"

namespace maieutic::lm {

// Generated from data/prompts at configure time.
extern const char* const kDefaultQaPairsJson;
extern const char* const kDefaultQaExplanationJson;
extern const char* const kDefaultAbductiveJson;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_mode(const PromptSet& prompts, PromptMode mode) {
  if (prompts.mode != mode) {
    throw std::invalid_argument("prompt set mode " + std::string(to_string(prompts.mode)) +
                                ", expected " + std::string(to_string(mode)));
  }
}

void require_text(std::string_view text, const char* what) {
  if (trim(text).empty()) throw std::invalid_argument(std::string(what) + " is empty");
}

}  // namespace

std::string as_question(std::string_view statement) {
  std::string_view s = trim(statement);
  while (!s.empty() && (s.back() == '.' || s.back() == '?')) {
    s.remove_suffix(1);
    s = trim(s);
  }
  return std::string(s) + "?";
}

std::string render_truth_prompt(std::string_view statement, const PromptSet& prompts) {
  require_mode(prompts, PromptMode::QaPairs);
  require_text(statement, "statement");
  std::string out;
  for (const auto& ex : prompts.examples) {
    out += as_question(ex.question);
    out += ' ';
    out += to_string(ex.answer);
    out += "\n\n";
  }
  out += as_question(statement);
  return out;
}

namespace {

std::string render_cot_demonstrations(const PromptSet& prompts) {
  std::string out;
  for (const auto& ex : prompts.examples) {
    out += as_question(ex.question);
    out += ' ';
    out += ex.explanation.value_or("");
    out += kAnswerCue;
    out += ' ';
    out += to_string(ex.answer);
    out += ".\n\n";
  }
  return out;
}

}  // namespace

std::string render_answer_with_explanation_prompt(std::string_view question,
                                                  std::string_view explanation,
                                                  const PromptSet& prompts) {
  require_mode(prompts, PromptMode::QaExplanationTriples);
  require_text(question, "question");
  require_text(explanation, "explanation");
  std::string out = render_cot_demonstrations(prompts);
  out += as_question(question);
  out += ' ';
  out += trim(explanation);
  out += kAnswerCue;
  return out;
}

std::string render_explanation_prompt(std::string_view question, const PromptSet& prompts) {
  require_mode(prompts, PromptMode::QaExplanationTriples);
  require_text(question, "question");
  return render_cot_demonstrations(prompts) + as_question(question);
}

std::string render_abductive_prompt(std::string_view question, Label label,
                                    const PromptSet& prompts) {
  require_mode(prompts, PromptMode::AbductiveTriples);
  require_text(question, "question");
  std::string out;
  for (const auto& ex : prompts.examples) {
    out += as_question(ex.question);
    out += ' ';
    out += to_string(ex.answer);
    out += ", because ";
    out += ex.explanation.value_or("");
    out += "\n\n";
  }
  out += as_question(question);
  out += ' ';
  out += to_string(label);
  out += ", because";
  return out;
}

std::string render_negation_prompt(std::string_view statement) {
  require_text(statement, "statement");
  std::string out =
      "Negate the statement.\n\n"
      "Statement: Birds can fly.\nNegation: Birds cannot fly.\n\n"
      "Statement: A week has seven days.\nNegation: A week does not have seven days.\n\n"
      "Statement: Fish cannot live on land.\nNegation: Fish can live on land.\n\n"
      "Statement: ";
  out += trim(statement);
  out += "\nNegation:";
  return out;
}

std::string prefix_negation(std::string_view statement) {
  std::string_view s = trim(statement);
  if (s.empty()) throw std::invalid_argument("cannot negate an empty statement");
  std::string body(s);
  body[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(body[0])));
  return std::string(kNegationPrefix) + body;
}

const PromptSet& default_prompt_set(PromptMode mode) {
  static const PromptSet qa = nlohmann::json::parse(kDefaultQaPairsJson).get<PromptSet>();
  static const PromptSet cot = nlohmann::json::parse(kDefaultQaExplanationJson).get<PromptSet>();
  static const PromptSet abductive = nlohmann::json::parse(kDefaultAbductiveJson).get<PromptSet>();
  switch (mode) {
    case PromptMode::QaPairs: return qa;
    case PromptMode::QaExplanationTriples: return cot;
    case PromptMode::AbductiveTriples: return abductive;
  }
  return qa;
}

}  // namespace maieutic::lm

namespace maieutic::lm {

void PromptBundle::validate() const {
  qa_pairs.validate();
  qa_explanations.validate();
  abductive.validate();
  require_mode(qa_pairs, PromptMode::QaPairs);
  require_mode(qa_explanations, PromptMode::QaExplanationTriples);
  require_mode(abductive, PromptMode::AbductiveTriples);
}

}  // namespace maieutic::lm
