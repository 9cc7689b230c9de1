#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maieutic {

using NodeId = std::string;

enum class Label { True, False };

constexpr Label opposite(Label label) {
  return label == Label::True ? Label::False : Label::True;
}
std::string_view to_string(Label label);  // "True" / "False"
char label_char(Label label);             // 'T' / 'F'
Label label_from_string(std::string_view text);

enum class Integrity { IntegralTrue, IntegralFalse, NotIntegral, Unchecked };

std::string_view to_string(Integrity integrity);
Integrity integrity_from_string(std::string_view text);
inline bool is_integral(Integrity i) {
  return i == Integrity::IntegralTrue || i == Integrity::IntegralFalse;
}

enum class PromptMode { QaPairs, QaExplanationTriples, AbductiveTriples };

std::string_view to_string(PromptMode mode);
PromptMode prompt_mode_from_string(std::string_view text);

struct Demonstration {
  std::string question;
  std::optional<std::string> explanation;
  Label answer = Label::True;

  bool operator==(const Demonstration&) const = default;
};

// Few-shot demonstrations for one prompting mode.
struct PromptSet {
  PromptMode mode = PromptMode::QaPairs;
  std::vector<Demonstration> examples;

  // Throws Error(InvalidConfig) when empty or when explanations do not match the mode.
  void validate() const;

  bool operator==(const PromptSet&) const = default;
};

// One node of a maieutic tree. The root holds the question itself.
struct Proposition {
  NodeId id;
  std::string text;
  std::string negated_text;
  std::vector<Label> path_label;
  std::optional<Label> source_answer;
  Integrity integrity = Integrity::Unchecked;
  std::optional<double> belief;
  std::optional<double> true_prob;
  std::optional<double> neg_true_prob;

  std::size_t depth() const { return path_label.size(); }
  bool integral() const { return is_integral(integrity); }

  bool operator==(const Proposition&) const = default;
};

enum class DecodingStrategy { Greedy, Nucleus };

std::string_view to_string(DecodingStrategy strategy);
DecodingStrategy decoding_strategy_from_string(std::string_view text);

struct DecodingParams {
  DecodingStrategy strategy = DecodingStrategy::Greedy;
  double nucleus_p = 1.0;
  int max_tokens = 64;
  std::vector<std::string> stop_sequences{"\n"};
  int sample_count = 1;

  void validate() const;

  static DecodingParams greedy();
  static DecodingParams nucleus(double p, int samples);

  bool operator==(const DecodingParams&) const = default;
};

enum class NegationStrategy { Prefix, LmGenerated };

std::string_view to_string(NegationStrategy strategy);
NegationStrategy negation_strategy_from_string(std::string_view text);

struct TreeConfig {
  int depth_limit = 2;
  std::vector<int> width_schedule{3, 1};
  // Entry i applies to depth i + 1; the last entry covers deeper levels.
  std::vector<DecodingParams> decoding_schedule{DecodingParams::nucleus(1.0, 3),
                                                DecodingParams::greedy()};
  NegationStrategy negation_strategy = NegationStrategy::Prefix;

  int width_at(int depth) const;
  // Decoding params for `depth`, with sample_count set to the width at that depth.
  DecodingParams decoding_at(int depth) const;
  // Upper bound on node count (root included) implied by the schedule.
  std::size_t max_nodes() const;
  void validate() const;

  bool operator==(const TreeConfig&) const = default;
};

}  // namespace maieutic
