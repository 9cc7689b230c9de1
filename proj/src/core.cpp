#include "maieutic/core.hpp"

#include <algorithm>
#include <stdexcept>

#include "maieutic/error.hpp"

namespace maieutic {

std::string_view to_string(Label label) {
  return label == Label::True ? "True" : "False";
}

char label_char(Label label) { return label == Label::True ? 'T' : 'F'; }

Label label_from_string(std::string_view text) {
  if (text == "True" || text == "T" || text == "true") return Label::True;
  if (text == "False" || text == "F" || text == "false") return Label::False;
  throw std::invalid_argument("unknown answer label: " + std::string(text));
}

std::string_view to_string(Integrity integrity) {
  switch (integrity) {
    case Integrity::IntegralTrue: return "IntegralTrue";
    case Integrity::IntegralFalse: return "IntegralFalse";
    case Integrity::NotIntegral: return "NotIntegral";
    case Integrity::Unchecked: return "Unchecked";
  }
  return "Unchecked";
}

Integrity integrity_from_string(std::string_view text) {
  if (text == "IntegralTrue") return Integrity::IntegralTrue;
  if (text == "IntegralFalse") return Integrity::IntegralFalse;
  if (text == "NotIntegral") return Integrity::NotIntegral;
  if (text == "Unchecked") return Integrity::Unchecked;
  throw std::invalid_argument("unknown integrity status: " + std::string(text));
}

std::string_view to_string(PromptMode mode) {
  switch (mode) {
    case PromptMode::QaPairs: return "QaPairs";
    case PromptMode::QaExplanationTriples: return "QaExplanationTriples";
    case PromptMode::AbductiveTriples: return "AbductiveTriples";
  }
  return "QaPairs";
}

PromptMode prompt_mode_from_string(std::string_view text) {
  if (text == "QaPairs") return PromptMode::QaPairs;
  if (text == "QaExplanationTriples") return PromptMode::QaExplanationTriples;
  if (text == "AbductiveTriples") return PromptMode::AbductiveTriples;
  throw std::invalid_argument("unknown prompt mode: " + std::string(text));
}

void PromptSet::validate() const {
  if (examples.empty()) throw Error(ErrorCode::InvalidConfig, "prompt set has no examples");
  const bool wants_explanation = mode != PromptMode::QaPairs;
  for (const auto& ex : examples) {
    if (ex.question.empty()) throw Error(ErrorCode::InvalidConfig, "demonstration with empty question");
    if (ex.explanation.has_value() != wants_explanation) {
      throw Error(ErrorCode::InvalidConfig,
                  std::string("demonstration explanation does not match mode ") +
                      std::string(to_string(mode)) + ": " + ex.question);
    }
    if (wants_explanation && ex.explanation->empty()) {
      throw Error(ErrorCode::InvalidConfig, "demonstration with empty explanation: " + ex.question);
    }
  }
}

std::string_view to_string(DecodingStrategy strategy) {
  return strategy == DecodingStrategy::Greedy ? "greedy" : "nucleus";
}

DecodingStrategy decoding_strategy_from_string(std::string_view text) {
  if (text == "greedy" || text == "Greedy") return DecodingStrategy::Greedy;
  if (text == "nucleus" || text == "Nucleus") return DecodingStrategy::Nucleus;
  throw std::invalid_argument("unknown decoding strategy: " + std::string(text));
}

void DecodingParams::validate() const {
  if (sample_count < 1) throw Error(ErrorCode::InvalidConfig, "sample_count must be >= 1");
  if (max_tokens < 1) throw Error(ErrorCode::InvalidConfig, "max_tokens must be >= 1");
  if (strategy == DecodingStrategy::Greedy && sample_count != 1) {
    throw Error(ErrorCode::InvalidConfig, "greedy decoding yields exactly one sample");
  }
  if (strategy == DecodingStrategy::Nucleus && !(nucleus_p > 0.0 && nucleus_p <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "nucleus p must lie in (0, 1]");
  }
}

DecodingParams DecodingParams::greedy() { return DecodingParams{}; }

DecodingParams DecodingParams::nucleus(double p, int samples) {
  DecodingParams params;
  params.strategy = DecodingStrategy::Nucleus;
  params.nucleus_p = p;
  params.sample_count = samples;
  return params;
}

std::string_view to_string(NegationStrategy strategy) {
  return strategy == NegationStrategy::Prefix ? "Prefix" : "LmGenerated";
}

NegationStrategy negation_strategy_from_string(std::string_view text) {
  if (text == "Prefix") return NegationStrategy::Prefix;
  if (text == "LmGenerated") return NegationStrategy::LmGenerated;
  throw std::invalid_argument("unknown negation strategy: " + std::string(text));
}

int TreeConfig::width_at(int depth) const {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const auto index = std::min<std::size_t>(depth - 1, width_schedule.size() - 1);
  return width_schedule.at(index);
}

DecodingParams TreeConfig::decoding_at(int depth) const {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const auto index = std::min<std::size_t>(depth - 1, decoding_schedule.size() - 1);
  DecodingParams params = decoding_schedule.at(index);
  params.sample_count = width_at(depth);
  return params;
}

std::size_t TreeConfig::max_nodes() const {
  std::size_t total = 1;
  std::size_t level = 1;
  for (int d = 1; d <= depth_limit; ++d) {
    level *= 2 * static_cast<std::size_t>(width_at(d));
    total += level;
  }
  return total;
}

void TreeConfig::validate() const {
  if (depth_limit < 1) throw Error(ErrorCode::InvalidConfig, "depth_limit must be >= 1");
  if (width_schedule.empty()) throw Error(ErrorCode::InvalidConfig, "width_schedule is empty");
  if (decoding_schedule.empty()) throw Error(ErrorCode::InvalidConfig, "decoding_schedule is empty");
  for (int w : width_schedule) {
    if (w < 1) throw Error(ErrorCode::InvalidConfig, "widths must be >= 1");
  }
  for (int d = 1; d <= depth_limit; ++d) decoding_at(d).validate();
}

}  // namespace maieutic
