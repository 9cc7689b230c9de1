#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "maieutic/harness.hpp"
#include "maieutic/trace.hpp"

namespace maieutic::harness {

// Run configuration, read from a JSON file. Relative paths resolve against
// the file's directory. Shape:
//   {"backend": {"kind": "scripted", "fixture": "lm.json"}
//             | {"kind": "http", "endpoint", "model", "top_logprobs"},
//    "verifier": {"kind": "scripted", "fixture": "nli.json"} | {"kind": "http", "endpoint"} | null,
//    "cache_dir": "cache", "prompts": {"qa_pairs", "qa_explanations", "abductive"},
//    "tree": {...}, "mode": "Verifier" | "Likelihood", "nli_probability_weights": false,
//    "seed": 0, "parallelism": 4}
// API keys come only from MAIEUTIC_LM_API_KEY.
struct RunConfig {
  nlohmann::json backend = {{"kind", "scripted"}};
  nlohmann::json verifier;
  std::optional<std::filesystem::path> cache_dir;
  lm::PromptBundle prompts;
  TreeConfig tree;
  CompileOptions compile;
  std::optional<std::uint64_t> seed = 0;
  std::size_t parallelism = 4;

  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

// Instantiates backends, cache and trace for a configuration.
Engine make_engine(const RunConfig& config, std::shared_ptr<Trace> trace);

// Reproducibility record: hashes of config and prompts, backend ids, seed.
nlohmann::json run_manifest(const RunConfig& config, const Engine& engine, Method method);

}  // namespace maieutic::harness
