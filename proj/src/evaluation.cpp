#include "maieutic/evaluation.hpp"

#include <fstream>
#include <map>
#include <set>

#include "maieutic/parallel.hpp"

namespace maieutic::harness {

using nlohmann::json;

DatasetRecord record_from_json(const json& j) {
  DatasetRecord r;
  r.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
  r.question = j.at("question").get<std::string>();
  if (j.contains("label") && !j.at("label").is_null()) {
    const auto& label = j.at("label");
    r.gold = label.is_boolean() ? label.get<bool>()
                                : label_from_string(label.get<std::string>()) == Label::True;
  }
  auto optional_string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).is_string() ? j.at(key).get<std::string>() : j.at(key).dump();
  };
  r.pair_id = optional_string("pair_id");
  r.contrast_id = optional_string("contrast_id");
  r.split = optional_string("split");
  return r;
}

std::vector<DatasetRecord> load_dataset(const std::string& path,
                                        const std::optional<std::string>& split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open dataset " + path);
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    DatasetRecord r;
    try {
      r = record_from_json(json::parse(line));
    } catch (const std::exception& ex) {
      throw ParseError(line_no, path + ": " + ex.what());
    }
    if (split && r.split && *r.split != *split) continue;
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const RecordResult& r) {
  return json{{"id", r.id},
              {"question", r.question},
              {"gold", r.gold},
              {"predicted", r.predicted ? json(*r.predicted) : json(nullptr)},
              {"correct", r.correct},
              {"fallback_used", r.fallback_used},
              {"true_propositions", r.true_propositions},
              {"error", r.error.empty() ? json(nullptr) : json(r.error)}};
}

json to_json(const MetricsReport& m) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"method", m.method},
              {"records", m.records},
              {"correct", m.correct},
              {"accuracy", m.accuracy},
              {"pairs", m.pairs},
              {"pairwise_accuracy", opt(m.pairwise_accuracy)},
              {"contrast_pairs", m.contrast_pairs},
              {"contrast_accuracy", opt(m.contrast_accuracy)},
              {"failures", m.failures},
              {"warnings", m.warnings}};
}

namespace {

// Unordered pairs linked through `link`, each counted once.
void pair_metric(const std::vector<DatasetRecord>& records, const std::vector<bool>& correct,
                 std::optional<std::string> DatasetRecord::*link, const char* what,
                 std::size_t& pairs, std::optional<double>& accuracy,
                 std::vector<std::string>& warnings) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) index[records[i].id] = i;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t both = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& partner_id = records[i].*link;
    if (!partner_id) continue;
    auto it = index.find(*partner_id);
    if (it == index.end() || it->second == i) {
      warnings.push_back(std::string(what) + " of " + records[i].id + " references missing record " + *partner_id);
      continue;
    }
    const auto key = std::minmax(i, it->second);
    if (!seen.insert(key).second) continue;
    const auto& back = records[it->second].*link;
    if (!back || *back != records[i].id) {
      warnings.push_back(std::string(what) + " link " + records[i].id + " -> " + *partner_id + " is not reciprocated");
    }
    if (correct[i] && correct[it->second]) ++both;
  }
  pairs = seen.size();
  if (pairs > 0) accuracy = static_cast<double>(both) / static_cast<double>(pairs);
}

}  // namespace

MetricsReport compute_metrics(const std::vector<DatasetRecord>& records,
                              const std::vector<bool>& correct) {
  if (records.empty()) throw std::invalid_argument("empty dataset");
  if (records.size() != correct.size()) throw std::invalid_argument("one outcome per record required");
  MetricsReport m;
  m.records = records.size();
  for (bool c : correct) m.correct += c ? 1 : 0;
  m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.records);
  pair_metric(records, correct, &DatasetRecord::pair_id, "pair_id", m.pairs, m.pairwise_accuracy,
              m.warnings);
  pair_metric(records, correct, &DatasetRecord::contrast_id, "contrast_id", m.contrast_pairs,
              m.contrast_accuracy, m.warnings);
  return m;
}

EvaluationOutput evaluate(const std::vector<DatasetRecord>& dataset, Method method,
                          const Engine& engine, std::size_t workers) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  for (const auto& r : dataset) {
    if (!r.gold) throw Error(ErrorCode::MissingGold, "record " + r.id + " has no label");
  }
  EvaluationOutput out;
  out.results = parallel_map<RecordResult>(dataset.size(), workers, [&](std::size_t i) {
    const auto& record = dataset[i];
    RecordResult r;
    r.id = record.id;
    r.question = record.question;
    r.gold = *record.gold;
    try {
      const auto inference = infer(record.question, method, engine);
      r.predicted = inference.answer;
      r.correct = inference.answer == r.gold;
      r.fallback_used = inference.fallback_used;
      r.true_propositions = inference.true_propositions;
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  });
  std::vector<bool> correct;
  for (const auto& r : out.results) {
    correct.push_back(r.correct);
    if (r.predicted) continue;
    ++out.report.failures;
  }
  const auto failures = out.report.failures;
  out.report = compute_metrics(dataset, correct);
  out.report.failures = failures;
  out.report.method = std::string(to_string(method));
  return out;
}

std::string results_to_jsonl(const std::vector<RecordResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace maieutic::harness
