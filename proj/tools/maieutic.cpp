// Command-line front end: infer, eval, tree, wcnf, fixture.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "maieutic/config.hpp"
#include "maieutic/evaluation.hpp"
#include "maieutic/harness.hpp"
#include "maieutic/scripted_backend.hpp"
#include "maieutic/serialization.hpp"
#include "maieutic/wcnf.hpp"

namespace {

using namespace maieutic;
using nlohmann::json;
namespace fs = std::filesystem;

struct Common {
  std::string config;
  std::string fixture;
  std::string mode;
  std::string cache_dir;
  std::string trace;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--fixture", c.fixture, "Use a scripted backend with this fixture file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--mode", c.mode, "Relation clauses: Verifier or Likelihood");
  cmd->add_option("--cache-dir", c.cache_dir, "Response cache directory");
  cmd->add_option("--trace", c.trace, "Write the backend call trace (JSONL) here");
}

harness::RunConfig load_config(const Common& c) {
  harness::RunConfig config;
  if (!c.config.empty()) config = harness::RunConfig::load(c.config);
  if (!c.fixture.empty()) {
    config.backend = {{"kind", "scripted"}, {"fixture", fs::absolute(c.fixture).string()}};
  }
  if (!c.mode.empty()) config.compile.mode = compile_mode_from_string(c.mode);
  if (!c.cache_dir.empty()) config.cache_dir = fs::path(c.cache_dir);
  // Without a verifier, Likelihood is the only usable mode.
  if (c.mode.empty() && c.config.empty() && config.verifier.is_null()) {
    config.compile.mode = CompileMode::Likelihood;
  }
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  out << text;
}

int run_infer(const Common& common, const std::string& question, const std::string& method_name,
              const std::string& explain) {
  const auto config = load_config(common);
  auto trace = std::make_shared<Trace>();
  const auto engine = harness::make_engine(config, trace);
  const auto method = harness::method_from_string(method_name);
  harness::InferenceResult result;
  try {
    result = harness::infer(question, method, engine);
  } catch (const harness::InferenceError& e) {
    if (!common.trace.empty()) write_text(common.trace, e.trace_jsonl());
    throw;
  }
  if (!common.trace.empty()) trace->write_jsonl(common.trace);
  if (explain == "json") {
    std::cout << harness::to_json(result).dump(2) << "\n";
  } else if (explain == "dot") {
    std::cout << harness::explain_dot(result);
  } else {
    std::cout << harness::explain_text(result);
  }
  return 0;
}

struct EvalArgs {
  std::string dataset;
  std::string split;
  std::string method = "maieutic";
  std::string results;
  std::string metrics;
  std::string manifest;
};

int run_eval(const Common& common, const EvalArgs& args) {
  const auto config = load_config(common);
  auto trace = std::make_shared<Trace>();
  const auto engine = harness::make_engine(config, trace);
  const auto method = harness::method_from_string(args.method);
  const auto dataset = harness::load_dataset(
      args.dataset, args.split.empty() ? std::nullopt : std::optional<std::string>(args.split));
  const auto out = harness::evaluate(dataset, method, engine, config.parallelism);

  const auto jsonl = harness::results_to_jsonl(out.results);
  if (args.results.empty()) {
    std::cout << jsonl;
  } else {
    write_text(args.results, jsonl);
  }
  const auto report = harness::to_json(out.report).dump(2) + "\n";
  if (args.metrics.empty()) {
    std::cerr << report;
  } else {
    write_text(args.metrics, report);
  }
  if (!args.manifest.empty()) {
    write_text(args.manifest, harness::run_manifest(config, engine, method).dump(2) + "\n");
  }
  if (!common.trace.empty()) trace->write_jsonl(common.trace);
  for (const auto& w : out.report.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "accuracy " << out.report.correct << "/" << out.report.records << ", "
            << trace->backend_calls() << " backend calls, " << trace->cache_hits() << " cache hits\n";
  return 0;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + ex.what());
  }
}

int run_wcnf(const Common& common, const std::string& question, const std::string& out_path) {
  const auto config = load_config(common);
  const auto engine = harness::make_engine(config, nullptr);
  const auto result = harness::infer_maieutic(question, engine);
  if (!result.cnf) {
    std::cerr << "tree pruned to its root (" << result.fallback_reason << "); nothing to export\n";
    return 1;
  }
  if (out_path.empty()) {
    std::cout << maxsat::to_wcnf(*result.cnf);
  } else {
    maxsat::export_wcnf(*result.cnf, out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maieutic tree inference over language-model explanations"};
  app.require_subcommand(1);

  Common common;
  std::string question;
  std::string method = "maieutic";
  std::string explain = "text";
  auto* infer = app.add_subcommand("infer", "Answer one true/false question");
  add_common(infer, common);
  infer->add_option("question", question, "Question or statement")->required();
  infer->add_option("-m,--method", method, "standard, explanation or maieutic");
  infer->add_option("--explain", explain, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a JSONL dataset");
  add_common(eval, common);
  eval->add_option("dataset", eval_args.dataset, "Dataset (JSONL)")->required()->check(CLI::ExistingFile);
  eval->add_option("--split", eval_args.split, "Keep only this split");
  eval->add_option("-m,--method", eval_args.method, "standard, explanation or maieutic");
  eval->add_option("-o,--results", eval_args.results, "Per-record results (JSONL); stdout by default");
  eval->add_option("--metrics", eval_args.metrics, "Metrics report (JSON); stderr by default");
  eval->add_option("--manifest", eval_args.manifest, "Reproducibility manifest (JSON)");

  std::string tree_path;
  auto* tree = app.add_subcommand("tree", "Render a serialized tree as Graphviz DOT");
  tree->add_option("tree", tree_path, "Tree JSON, or an infer --explain json result")
      ->required()
      ->check(CLI::ExistingFile);

  std::string wcnf_out;
  auto* wcnf = app.add_subcommand("wcnf", "Export the MAX-SAT instance compiled for a question");
  add_common(wcnf, common);
  wcnf->add_option("question", question, "Question or statement")->required();
  wcnf->add_option("-o,--out", wcnf_out, "Output path; a .vars.json sidecar is written next to it");

  std::string authoring;
  std::string fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Compile an authoring fixture into a digest-keyed one");
  fixture->add_option("authoring", authoring, "{\"entries\": [{\"request\", \"response\"}]}")
      ->required()
      ->check(CLI::ExistingFile);
  fixture->add_option("out", fixture_out, "Output fixture; a .prompts.json sidecar is written next to it")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*infer) return run_infer(common, question, method, explain);
    if (*eval) return run_eval(common, eval_args);
    if (*wcnf) return run_wcnf(common, question, wcnf_out);
    if (*tree) {
      auto j = read_json(tree_path);
      if (j.contains("tree")) {
        // An inference result: color nodes by the assignment when present.
        std::map<NodeId, bool> values;
        if (j.contains("assignment")) values = j["assignment"]["values"].get<std::map<NodeId, bool>>();
        std::cout << tree_to_dot(tree_from_json(j["tree"]), values.empty() ? nullptr : &values);
      } else {
        std::cout << tree_to_dot(tree_from_json(j));
      }
      return 0;
    }
    if (*fixture) {
      lm::fixture_from_authoring(read_json(authoring)).write(fixture_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
