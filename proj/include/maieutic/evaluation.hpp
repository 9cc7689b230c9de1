#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maieutic/harness.hpp"

namespace maieutic::harness {

struct DatasetRecord {
  std::string id;
  std::string question;
  std::optional<bool> gold;
  std::optional<std::string> pair_id;
  std::optional<std::string> contrast_id;
  std::optional<std::string> split;
};

// JSONL with {id, question, label, pair_id?, contrast_id?, split?}; label is a
// boolean or "True"/"False". When `split` is given, records of other splits
// are skipped; records without a split are kept.
std::vector<DatasetRecord> load_dataset(const std::string& path,
                                        const std::optional<std::string>& split = std::nullopt);
DatasetRecord record_from_json(const nlohmann::json& j);

struct RecordResult {
  std::string id;
  std::string question;
  bool gold = false;
  std::optional<bool> predicted;  // absent when inference failed
  bool correct = false;
  bool fallback_used = false;
  std::vector<std::string> true_propositions;
  std::string error;
};

nlohmann::json to_json(const RecordResult& r);

struct MetricsReport {
  std::string method;
  std::size_t records = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::size_t pairs = 0;
  std::optional<double> pairwise_accuracy;
  std::size_t contrast_pairs = 0;
  std::optional<double> contrast_accuracy;
  std::size_t failures = 0;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const MetricsReport& m);

// Accuracy over all records; pairwise accuracy counts each pair (linked by
// pair_id) as correct only when both members are; contrast accuracy does the
// same over contrast_id links. Unpaired records are left out of the pair
// metrics; links to absent records produce warnings.
MetricsReport compute_metrics(const std::vector<DatasetRecord>& records,
                              const std::vector<bool>& correct);

struct EvaluationOutput {
  MetricsReport report;
  std::vector<RecordResult> results;  // input order
};

// Runs `method` over the dataset on `engine`, `workers` records at a time.
// Throws MissingGold for unlabeled records and std::invalid_argument for an empty dataset.
EvaluationOutput evaluate(const std::vector<DatasetRecord>& dataset, Method method,
                          const Engine& engine, std::size_t workers);

std::string results_to_jsonl(const std::vector<RecordResult>& results);

}  // namespace maieutic::harness
