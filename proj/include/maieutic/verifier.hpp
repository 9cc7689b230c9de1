#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "maieutic/cache.hpp"
#include "maieutic/cnf.hpp"
#include "maieutic/http.hpp"
#include "maieutic/trace.hpp"
#include "maieutic/tree.hpp"

namespace maieutic::nli {

enum class NliLabel { Entail, Contradict, Neutral };

std::string_view to_string(NliLabel label);
NliLabel nli_label_from_string(std::string_view text);

struct LabelProbs {
  double entail = 0.0;
  double contradict = 0.0;
  double neutral = 0.0;

  double of(NliLabel label) const;
  bool operator==(const LabelProbs&) const = default;
};

struct NliJudgment {
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::Neutral;
  LabelProbs label_probs;

  bool operator==(const NliJudgment&) const = default;
};

// Parses {"label", "probs": {"entail", "contradict", "neutral"}}; probabilities
// default to one-hot on the label. Throws MalformedResponse when they do not
// sum to 1 or the label is not their argmax.
NliJudgment judgment_from_json(std::string premise, std::string hypothesis,
                               const nlohmann::json& body);
nlohmann::json to_json(const NliJudgment& j);

// Three-way natural language inference classifier. Must be callable concurrently.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual std::string id() const = 0;
  virtual NliJudgment judge(const std::string& premise, const std::string& hypothesis) = 0;
};

// Validates inputs, then asks the verifier.
NliJudgment nli(Verifier& verifier, const std::string& premise, const std::string& hypothesis);

// Fixture-backed verifier. Identical premise and hypothesis always entail.
// Fixture file: a list of {premise, hypothesis, label, probs?}, or
// {"default": label, "judgments": [...]} to answer unlisted pairs.
class ScriptedVerifier : public Verifier {
 public:
  explicit ScriptedVerifier(const nlohmann::json& fixture);
  static ScriptedVerifier from_file(const std::string& path);

  std::string id() const override { return id_; }
  NliJudgment judge(const std::string& premise, const std::string& hypothesis) override;

 private:
  std::map<std::pair<std::string, std::string>, nlohmann::json> table_;
  std::optional<NliLabel> default_label_;
  std::string id_;
};

// POST {premise, hypothesis} -> {label, probs}.
class HttpVerifier : public Verifier {
 public:
  // Endpoint falls back to MAIEUTIC_NLI_ENDPOINT when empty.
  explicit HttpVerifier(std::string endpoint, RetryPolicy retry = {});

  std::string id() const override { return "http-nli@" + endpoint_url_; }
  NliJudgment judge(const std::string& premise, const std::string& hypothesis) override;

 private:
  std::string endpoint_url_;
  HttpEndpoint endpoint_;
  RetryPolicy retry_;
};

// Adds the response cache and build trace in front of another verifier.
class CachingVerifier : public Verifier {
 public:
  CachingVerifier(std::shared_ptr<Verifier> inner, std::shared_ptr<lm::ResponseCache> cache,
                  std::shared_ptr<Trace> trace);

  std::string id() const override { return inner_->id(); }
  NliJudgment judge(const std::string& premise, const std::string& hypothesis) override;

 private:
  std::shared_ptr<Verifier> inner_;
  std::shared_ptr<lm::ResponseCache> cache_;
  std::shared_ptr<Trace> trace_;
};

struct RelationOptions {
  // Weight clauses by the verifier's label probability instead of 1.
  bool probability_weights = false;
  std::size_t workers = 4;
};

// Judges every ordered pair of distinct tree nodes (root included).
// Entail(a, b) gives (!a | b), Contradict(a, b) gives (!a | !b); clauses with
// the same literal set are merged, keeping the first in pair order.
std::vector<WeightedClause> relation_clauses(const MaieuticTree& tree, const WeightedCnf& vars,
                                             Verifier& verifier, const RelationOptions& options = {});

}  // namespace maieutic::nli
