#include "maieutic/verifier.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "maieutic/digest.hpp"
#include "maieutic/error.hpp"
#include "maieutic/parallel.hpp"

namespace maieutic::nli {

using nlohmann::json;

std::string_view to_string(NliLabel label) {
  switch (label) {
    case NliLabel::Entail: return "Entail";
    case NliLabel::Contradict: return "Contradict";
    case NliLabel::Neutral: return "Neutral";
  }
  return "Neutral";
}

NliLabel nli_label_from_string(std::string_view text) {
  if (text == "Entail" || text == "entailment") return NliLabel::Entail;
  if (text == "Contradict" || text == "contradiction") return NliLabel::Contradict;
  if (text == "Neutral" || text == "neutral") return NliLabel::Neutral;
  throw Error(ErrorCode::MalformedResponse, "unknown NLI label: " + std::string(text));
}

double LabelProbs::of(NliLabel label) const {
  switch (label) {
    case NliLabel::Entail: return entail;
    case NliLabel::Contradict: return contradict;
    case NliLabel::Neutral: return neutral;
  }
  return 0.0;
}

NliJudgment judgment_from_json(std::string premise, std::string hypothesis, const json& body) {
  NliJudgment out;
  out.premise = std::move(premise);
  out.hypothesis = std::move(hypothesis);
  try {
    out.label = nli_label_from_string(body.at("label").get<std::string>());
    if (body.contains("probs") && !body.at("probs").is_null()) {
      const auto& p = body.at("probs");
      out.label_probs = {p.at("entail").get<double>(), p.at("contradict").get<double>(),
                         p.at("neutral").get<double>()};
    } else {
      out.label_probs = {out.label == NliLabel::Entail ? 1.0 : 0.0,
                         out.label == NliLabel::Contradict ? 1.0 : 0.0,
                         out.label == NliLabel::Neutral ? 1.0 : 0.0};
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::MalformedResponse, ex.what());
  }
  const auto& p = out.label_probs;
  for (double v : {p.entail, p.contradict, p.neutral}) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::NonFiniteValue, "NLI label probability");
  }
  if (std::abs(p.entail + p.contradict + p.neutral - 1.0) > 1e-6) {
    throw Error(ErrorCode::MalformedResponse, "NLI probabilities do not sum to 1");
  }
  const double top = std::max({p.entail, p.contradict, p.neutral});
  if (p.of(out.label) < top) throw Error(ErrorCode::MalformedResponse, "NLI label is not the argmax");
  return out;
}

json to_json(const NliJudgment& j) {
  return json{{"premise", j.premise},
              {"hypothesis", j.hypothesis},
              {"label", to_string(j.label)},
              {"probs",
               {{"entail", j.label_probs.entail},
                {"contradict", j.label_probs.contradict},
                {"neutral", j.label_probs.neutral}}}};
}

NliJudgment nli(Verifier& verifier, const std::string& premise, const std::string& hypothesis) {
  if (premise.empty() || hypothesis.empty()) throw std::invalid_argument("NLI inputs must be non-empty");
  return verifier.judge(premise, hypothesis);
}

ScriptedVerifier::ScriptedVerifier(const json& fixture) {
  const json* judgments = &fixture;
  if (fixture.is_object()) {
    if (fixture.contains("default") && !fixture.at("default").is_null()) {
      default_label_ = nli_label_from_string(fixture.at("default").get<std::string>());
    }
    judgments = &fixture.at("judgments");
  }
  for (const auto& entry : *judgments) {
    auto premise = entry.at("premise").get<std::string>();
    auto hypothesis = entry.at("hypothesis").get<std::string>();
    // Validate eagerly so a bad fixture fails at load time.
    judgment_from_json(premise, hypothesis, entry);
    table_[{premise, hypothesis}] = entry;
  }
  id_ = "scripted-nli-" + json_digest(fixture).substr(0, 16);
}

ScriptedVerifier ScriptedVerifier::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open verifier fixture " + path);
  try {
    return ScriptedVerifier(json::parse(in));
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, "bad verifier fixture " + path + ": " + ex.what());
  }
}

NliJudgment ScriptedVerifier::judge(const std::string& premise, const std::string& hypothesis) {
  if (premise == hypothesis) return judgment_from_json(premise, hypothesis, json{{"label", "Entail"}});
  auto it = table_.find({premise, hypothesis});
  if (it != table_.end()) return judgment_from_json(premise, hypothesis, it->second);
  if (default_label_) {
    return judgment_from_json(premise, hypothesis, json{{"label", to_string(*default_label_)}});
  }
  throw Error(ErrorCode::MissingFixture, "no NLI fixture for (" + premise + ", " + hypothesis + ")");
}

namespace {

std::string nli_endpoint(std::string endpoint) {
  if (endpoint.empty()) {
    if (const char* env = std::getenv("MAIEUTIC_NLI_ENDPOINT")) endpoint = env;
  }
  if (endpoint.empty()) throw Error(ErrorCode::InvalidConfig, "no NLI endpoint configured");
  return endpoint;
}

}  // namespace

HttpVerifier::HttpVerifier(std::string endpoint, RetryPolicy retry)
    : endpoint_url_(nli_endpoint(std::move(endpoint))),
      endpoint_(HttpEndpoint::parse(endpoint_url_)),
      retry_(retry) {}

NliJudgment HttpVerifier::judge(const std::string& premise, const std::string& hypothesis) {
  auto res = post_json(endpoint_, json{{"premise", premise}, {"hypothesis", hypothesis}}, {}, retry_);
  if (res.status != 200) {
    throw Error(ErrorCode::BackendUnavailable, "NLI service returned HTTP " + std::to_string(res.status));
  }
  return judgment_from_json(premise, hypothesis, res.body);
}

CachingVerifier::CachingVerifier(std::shared_ptr<Verifier> inner,
                                 std::shared_ptr<lm::ResponseCache> cache,
                                 std::shared_ptr<Trace> trace)
    : inner_(std::move(inner)), cache_(std::move(cache)), trace_(std::move(trace)) {
  if (!inner_) throw std::invalid_argument("null verifier");
}

NliJudgment CachingVerifier::judge(const std::string& premise, const std::string& hypothesis) {
  const auto key = json_digest(json{{"backend", inner_->id()}, {"kind", "nli"},
                                    {"premise", premise}, {"hypothesis", hypothesis}});
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](bool hit) {
    if (!trace_) return;
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    trace_->record({0, key, "nli", inner_->id(), elapsed.count(), hit});
  };
  if (cache_) {
    if (auto hit = cache_->get(key)) {
      finish(true);
      return judgment_from_json(premise, hypothesis, *hit);
    }
  }
  auto judgment = inner_->judge(premise, hypothesis);
  finish(false);
  if (cache_) cache_->put(key, to_json(judgment));
  return judgment;
}

std::vector<WeightedClause> relation_clauses(const MaieuticTree& tree, const WeightedCnf& vars,
                                             Verifier& verifier, const RelationOptions& options) {
  const auto nodes = tree_nodes(tree);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  const auto judgments = parallel_map<NliJudgment>(
      pairs.size(), options.workers, [&](std::size_t i) {
        return nli(verifier, nodes[pairs[i].first].text, nodes[pairs[i].second].text);
      });

  std::vector<WeightedClause> out;
  std::set<std::vector<Literal>> seen;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& j = judgments[i];
    if (j.label == NliLabel::Neutral) continue;
    const VarId premise = vars.var(nodes[pairs[i].first].id);
    const VarId hypothesis = vars.var(nodes[pairs[i].second].id);
    WeightedClause clause;
    clause.origin = ClauseOrigin::Nli;
    clause.literals = {{premise, false}, {hypothesis, j.label == NliLabel::Entail}};
    clause.weight = options.probability_weights ? j.label_probs.of(j.label) : 1.0;
    auto key = clause.literals;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    if (clause.weight < 1e-12) continue;
    out.push_back(std::move(clause));
  }
  return out;
}

}  // namespace maieutic::nli
