#include "maieutic/language_model.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>

#include "maieutic/error.hpp"
#include "maieutic/prompts.hpp"

namespace maieutic::lm {

using nlohmann::json;

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string cut_at_stops(std::string text, const std::vector<std::string>& stops) {
  std::size_t cut = text.size();
  for (const auto& stop : stops) {
    if (stop.empty()) continue;
    // A leading stop (e.g. the newline that precedes a completion) is skipped.
    const auto pos = text.find(stop, text.find_first_not_of(" \t\n"));
    if (pos != std::string::npos) cut = std::min(cut, pos);
  }
  text.resize(cut);
  return text;
}

std::vector<std::string> completions_of(const json& raw) {
  if (!raw.is_object() || !raw.contains("completions") || !raw.at("completions").is_array()) {
    throw Error(ErrorCode::MalformedResponse, "expected a completions list");
  }
  return raw.at("completions").get<std::vector<std::string>>();
}

}  // namespace

TruthResponse renormalize(std::optional<double> raw_true, std::optional<double> raw_false) {
  const double t = raw_true.value_or(0.0);
  const double f = raw_false.value_or(0.0);
  if (!std::isfinite(t) || !std::isfinite(f)) throw Error(ErrorCode::NonFiniteValue, "answer-token probability");
  if (t < 0.0 || f < 0.0) throw Error(ErrorCode::MalformedResponse, "negative answer-token probability");
  if (t + f <= 0.0) throw Error(ErrorCode::MalformedResponse, "answer tokens absent from distribution");
  const double true_prob = t / (t + f);
  return {true_prob, 1.0 - true_prob};
}

LanguageModel::LanguageModel(std::shared_ptr<LmBackend> backend,
                             std::shared_ptr<ResponseCache> cache, std::shared_ptr<Trace> trace,
                             std::optional<std::uint64_t> seed)
    : backend_(std::move(backend)), cache_(std::move(cache)), trace_(std::move(trace)), seed_(seed) {
  if (!backend_) throw std::invalid_argument("null backend");
}

json LanguageModel::dispatch(const Request& request) {
  const auto backend_id = backend_->id();
  const auto key = request.cache_key(backend_id);
  const bool use_cache = cache_ && request.cacheable();
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](bool hit) {
    if (!trace_) return;
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    trace_->record({0, key, std::string(to_string(request.kind)), backend_id, elapsed.count(), hit});
  };
  if (use_cache) {
    if (auto hit = cache_->get(key)) {
      finish(true);
      return *hit;
    }
  }
  json response = backend_->complete(request);
  finish(false);
  if (use_cache) cache_->put(key, response);
  return response;
}

TruthResponse LanguageModel::to_truth(const json& raw, const Request& request) const {
  if (!raw.is_object()) throw Error(ErrorCode::MalformedResponse, "truth response is not an object");
  auto read = [&](const char* k) -> std::optional<double> {
    if (!raw.contains(k) || raw.at(k).is_null()) return std::nullopt;
    if (!raw.at(k).is_number()) throw Error(ErrorCode::MalformedResponse, request.descriptor.dump());
    return raw.at(k).get<double>();
  };
  return renormalize(read("true"), read("false"));
}

TruthResponse LanguageModel::true_prob(std::string_view statement, const PromptSet& qa_pairs) {
  const auto request = truth_request(statement, qa_pairs);
  return to_truth(dispatch(request), request);
}

TruthResponse LanguageModel::true_prob_given_explanation(std::string_view question,
                                                         std::string_view explanation,
                                                         const PromptSet& qa_explanations) {
  const auto request = truth_given_explanation_request(question, explanation, qa_explanations);
  return to_truth(dispatch(request), request);
}

std::vector<std::string> LanguageModel::sample_abductive(std::string_view question, Label label,
                                                         const PromptSet& abductive,
                                                         const DecodingParams& decoding) {
  const auto request = abduce_request(question, label, abductive, decoding, seed_);
  std::vector<std::string> out;
  for (auto& text : completions_of(dispatch(request))) {
    auto clean = trimmed(cut_at_stops(std::move(text), decoding.stop_sequences));
    if (!clean.empty()) out.push_back(std::move(clean));
    if (static_cast<int>(out.size()) == decoding.sample_count) break;
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyGeneration,
                "no usable explanation for " + std::string(question) + " / " + std::string(to_string(label)));
  }
  return out;
}

double LanguageModel::sequence_logprob(std::string_view explanation, std::string_view question,
                                       Label label, const PromptSet& abductive) {
  if (trimmed(explanation).empty()) throw std::invalid_argument("explanation is empty");
  const auto request = likelihood_request(explanation, question, label, abductive);
  const auto raw = dispatch(request);
  if (raw.is_object() && raw.value("unsupported", false)) {
    throw Error(ErrorCode::NotSupported, "backend exposes no sequence log-probabilities");
  }
  if (!raw.is_object() || !raw.contains("logprob") || !raw.at("logprob").is_number()) {
    throw Error(ErrorCode::MalformedResponse, "likelihood response without logprob");
  }
  const double lp = raw.at("logprob").get<double>();
  if (!std::isfinite(lp)) throw Error(ErrorCode::NonFiniteValue, "sequence logprob");
  if (lp > 0.0) throw Error(ErrorCode::MalformedResponse, "positive sequence logprob");
  return lp;
}

std::string LanguageModel::negate(std::string_view statement, NegationStrategy strategy) {
  if (trimmed(statement).empty()) throw std::invalid_argument("cannot negate an empty statement");
  if (strategy == NegationStrategy::Prefix) return prefix_negation(statement);
  const auto request = negate_request(statement);
  for (auto& text : completions_of(dispatch(request))) {
    auto clean = trimmed(cut_at_stops(std::move(text), request.decoding.stop_sequences));
    if (!clean.empty()) return clean;
  }
  throw Error(ErrorCode::EmptyGeneration, "empty negation for " + std::string(statement));
}

std::string LanguageModel::sample_explanation(std::string_view question,
                                              const PromptSet& qa_explanations) {
  const auto request = explain_request(question, qa_explanations);
  for (auto& text : completions_of(dispatch(request))) {
    auto clean = trimmed(cut_at_stops(std::move(text), request.decoding.stop_sequences));
    if (!clean.empty()) return clean;
  }
  return {};
}

}  // namespace maieutic::lm
