#include "maieutic/scripted_backend.hpp"

#include <fstream>

#include "maieutic/digest.hpp"
#include "maieutic/error.hpp"
#include "maieutic/prompts.hpp"
#include "maieutic/serialization.hpp"

namespace maieutic::lm {

using nlohmann::json;

ScriptedBackend::ScriptedBackend(json responses) : responses_(std::move(responses)) {
  if (!responses_.is_object()) throw Error(ErrorCode::InvalidConfig, "fixture responses must be an object");
  id_ = "scripted-" + json_digest(responses_).substr(0, 16);
}

ScriptedBackend ScriptedBackend::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open fixture file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, "bad fixture file " + path + ": " + ex.what());
  }
  if (doc.contains("entries")) return fixture_from_authoring(doc).build();
  return ScriptedBackend(doc.at("responses"));
}

json ScriptedBackend::complete(const Request& request) {
  const auto key = request.fixture_key();
  auto it = responses_.find(key);
  if (it == responses_.end()) {
    throw Error(ErrorCode::MissingFixture, "no fixture for " + request.descriptor.dump());
  }
  return *it;
}

FixtureBuilder& FixtureBuilder::add(const json& descriptor, json response) {
  const auto key = json_digest(descriptor);
  responses_[key] = std::move(response);
  descriptors_[key] = descriptor;
  return *this;
}

FixtureBuilder& FixtureBuilder::merge(const FixtureBuilder& other) {
  for (const auto& [key, response] : other.responses_.items()) {
    responses_[key] = response;
    descriptors_[key] = other.descriptors_.at(key);
  }
  return *this;
}

FixtureBuilder& FixtureBuilder::truth(std::string_view statement, double p_true, double p_false) {
  return add(descriptors::truth(statement), json{{"true", p_true}, {"false", p_false}});
}

FixtureBuilder& FixtureBuilder::proposition(std::string_view statement, double p_true,
                                            double p_true_negated) {
  truth(statement, p_true, 1.0 - p_true);
  return truth(prefix_negation(statement), p_true_negated, 1.0 - p_true_negated);
}

FixtureBuilder& FixtureBuilder::abduce(std::string_view question, Label label,
                                       const DecodingParams& decoding,
                                       std::vector<std::string> completions) {
  return add(descriptors::abduce(question, label, decoding), json{{"completions", completions}});
}

FixtureBuilder& FixtureBuilder::explain(std::string_view question, std::string completion) {
  return add(descriptors::explain(question), json{{"completions", {completion}}});
}

FixtureBuilder& FixtureBuilder::truth_given_explanation(std::string_view question,
                                                        std::string_view explanation,
                                                        double p_true, double p_false) {
  return add(descriptors::truth_given_explanation(question, explanation),
             json{{"true", p_true}, {"false", p_false}});
}

FixtureBuilder& FixtureBuilder::likelihood(std::string_view explanation, std::string_view question,
                                           Label label, double logprob) {
  return add(descriptors::likelihood(explanation, question, label), json{{"logprob", logprob}});
}

FixtureBuilder& FixtureBuilder::likelihood_unsupported(std::string_view explanation,
                                                       std::string_view question, Label label) {
  return add(descriptors::likelihood(explanation, question, label), json{{"unsupported", true}});
}

FixtureBuilder& FixtureBuilder::negate(std::string_view statement, std::string negation) {
  return add(descriptors::negate(statement), json{{"completions", {std::move(negation)}}});
}

json FixtureBuilder::responses() const { return responses_; }

namespace {

std::string render_for_review(const json& d) {
  const auto kind = d.at("kind").get<std::string>();
  try {
    if (kind == "truth" && d.contains("explanation")) {
      return render_answer_with_explanation_prompt(
          d.at("statement").get<std::string>(), d.at("explanation").get<std::string>(),
          default_prompt_set(PromptMode::QaExplanationTriples));
    }
    if (kind == "truth") {
      return render_truth_prompt(d.at("statement").get<std::string>(),
                                 default_prompt_set(PromptMode::QaPairs));
    }
    if (kind == "abduce") {
      return render_abductive_prompt(d.at("question").get<std::string>(),
                                     label_from_string(d.at("label").get<std::string>()),
                                     default_prompt_set(PromptMode::AbductiveTriples));
    }
    if (kind == "explain") {
      return render_explanation_prompt(d.at("question").get<std::string>(),
                                       default_prompt_set(PromptMode::QaExplanationTriples));
    }
    if (kind == "likelihood") {
      return render_abductive_prompt(d.at("question").get<std::string>(),
                                     label_from_string(d.at("label").get<std::string>()),
                                     default_prompt_set(PromptMode::AbductiveTriples)) +
             " " + d.at("explanation").get<std::string>();
    }
    if (kind == "negate") return render_negation_prompt(d.at("statement").get<std::string>());
  } catch (const std::exception&) {
  }
  return {};
}

}  // namespace

json FixtureBuilder::sidecar() const {
  json out = json::object();
  for (const auto& [key, descriptor] : descriptors_.items()) {
    out[key] = json{{"request", descriptor}, {"prompt", render_for_review(descriptor)}};
  }
  return out;
}

void FixtureBuilder::write(const std::string& path) const {
  {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write fixture " + path);
    out << json{{"responses", responses_}}.dump(2) << '\n';
  }
  std::ofstream side(path + ".prompts.json");
  if (!side) throw Error(ErrorCode::InvalidConfig, "cannot write fixture sidecar for " + path);
  side << sidecar().dump(2) << '\n';
}

FixtureBuilder fixture_from_authoring(const json& authoring) {
  FixtureBuilder builder;
  for (const auto& entry : authoring.at("entries")) {
    builder.add(entry.at("request"), entry.at("response"));
  }
  return builder;
}

}  // namespace maieutic::lm
