#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maieutic/lm_backend.hpp"

namespace maieutic::lm {

// Deterministic backend that answers from a fixture table keyed by
// Request::fixture_key(). Read-only after construction.
//
// Fixture file: {"responses": {"<digest>": <raw response>, ...}}. A sidecar
// "<file>.prompts.json" maps each digest to its request descriptor and
// rendered prompt for human review; it is not needed for loading.
class ScriptedBackend : public LmBackend {
 public:
  explicit ScriptedBackend(nlohmann::json responses);

  static ScriptedBackend from_file(const std::string& path);

  std::string id() const override { return id_; }
  nlohmann::json complete(const Request& request) override;

  std::size_t size() const { return responses_.size(); }

 private:
  nlohmann::json responses_;
  std::string id_;
};

// Authors fixture tables by request content rather than by digest.
class FixtureBuilder {
 public:
  FixtureBuilder& add(const nlohmann::json& descriptor, nlohmann::json response);

  FixtureBuilder& truth(std::string_view statement, double p_true, double p_false);
  // Truth entries for a statement and its prefix negation.
  FixtureBuilder& proposition(std::string_view statement, double p_true, double p_true_negated);
  FixtureBuilder& abduce(std::string_view question, Label label, const DecodingParams& decoding,
                         std::vector<std::string> completions);
  FixtureBuilder& explain(std::string_view question, std::string completion);
  FixtureBuilder& truth_given_explanation(std::string_view question, std::string_view explanation,
                                          double p_true, double p_false);
  FixtureBuilder& likelihood(std::string_view explanation, std::string_view question, Label label,
                             double logprob);
  FixtureBuilder& likelihood_unsupported(std::string_view explanation, std::string_view question,
                                         Label label);
  FixtureBuilder& negate(std::string_view statement, std::string negation);

  // Adds every entry of `other`; entries of `other` win on conflict.
  FixtureBuilder& merge(const FixtureBuilder& other);

  nlohmann::json responses() const;
  // digest -> {"request": descriptor, "prompt": rendered prompt with default demonstrations}
  nlohmann::json sidecar() const;
  ScriptedBackend build() const { return ScriptedBackend(responses()); }
  // Writes the fixture file and its ".prompts.json" sidecar.
  void write(const std::string& path) const;

 private:
  nlohmann::json responses_ = nlohmann::json::object();
  nlohmann::json descriptors_ = nlohmann::json::object();
};

// Compiles an authoring file ({"entries": [{"request": descriptor, "response": ...}]})
// into a builder.
FixtureBuilder fixture_from_authoring(const nlohmann::json& authoring);

}  // namespace maieutic::lm
