#include "maieutic/config.hpp"

#include <fstream>

#include "maieutic/digest.hpp"
#include "maieutic/http_backend.hpp"
#include "maieutic/scripted_backend.hpp"
#include "maieutic/serialization.hpp"

namespace maieutic::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

json resolve_paths(json section, const fs::path& base) {
  if (section.is_object() && section.contains("fixture")) {
    section["fixture"] = resolve(base, section.at("fixture").get<std::string>()).string();
  }
  return section;
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const fs::path& base_dir) {
  RunConfig c;
  try {
    if (j.contains("backend")) c.backend = resolve_paths(j.at("backend"), base_dir);
    if (j.contains("verifier")) c.verifier = resolve_paths(j.at("verifier"), base_dir);
    if (j.contains("cache_dir") && !j.at("cache_dir").is_null()) {
      c.cache_dir = resolve(base_dir, j.at("cache_dir").get<std::string>());
    }
    if (j.contains("prompts")) {
      const auto& p = j.at("prompts");
      if (p.contains("qa_pairs")) c.prompts.qa_pairs = load_prompt_set(resolve(base_dir, p.at("qa_pairs").get<std::string>()).string());
      if (p.contains("qa_explanations")) {
        c.prompts.qa_explanations = load_prompt_set(resolve(base_dir, p.at("qa_explanations").get<std::string>()).string());
      }
      if (p.contains("abductive")) c.prompts.abductive = load_prompt_set(resolve(base_dir, p.at("abductive").get<std::string>()).string());
    }
    if (j.contains("tree")) c.tree = j.at("tree").get<TreeConfig>();
    if (j.contains("mode")) c.compile.mode = compile_mode_from_string(j.at("mode").get<std::string>());
    c.compile.nli_probability_weights = j.value("nli_probability_weights", false);
    if (j.contains("seed")) {
      if (j.at("seed").is_null()) {
        c.seed.reset();
      } else {
        c.seed = j.at("seed").get<std::uint64_t>();
      }
    }
    c.parallelism = j.value("parallelism", std::size_t{4});
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, ex.what());
  } catch (const std::invalid_argument& ex) {
    throw Error(ErrorCode::InvalidConfig, ex.what());
  }
  c.tree.validate();
  c.prompts.validate();
  if (c.parallelism == 0) throw Error(ErrorCode::InvalidConfig, "parallelism must be >= 1");
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + ex.what());
  }
  return from_json(j, path.parent_path());
}

json RunConfig::to_json() const {
  json out{{"backend", backend},
           {"verifier", verifier},
           {"cache_dir", cache_dir ? json(cache_dir->string()) : json(nullptr)},
           {"prompts",
            {{"qa_pairs", prompts.qa_pairs},
             {"qa_explanations", prompts.qa_explanations},
             {"abductive", prompts.abductive}}},
           {"tree", tree},
           {"mode", maieutic::to_string(compile.mode)},
           {"nli_probability_weights", compile.nli_probability_weights},
           {"seed", seed ? json(*seed) : json(nullptr)},
           {"parallelism", parallelism}};
  return out;
}

Engine make_engine(const RunConfig& config, std::shared_ptr<Trace> trace) {
  std::shared_ptr<lm::ResponseCache> cache;
  if (config.cache_dir) cache = std::make_shared<lm::ResponseCache>(*config.cache_dir);

  std::shared_ptr<lm::LmBackend> backend;
  const auto kind = config.backend.value("kind", std::string("scripted"));
  if (kind == "scripted") {
    if (!config.backend.contains("fixture")) throw Error(ErrorCode::InvalidConfig, "scripted backend needs a fixture");
    backend = std::make_shared<lm::ScriptedBackend>(
        lm::ScriptedBackend::from_file(config.backend.at("fixture").get<std::string>()));
  } else if (kind == "http") {
    lm::HttpBackendConfig http;
    http.endpoint = config.backend.value("endpoint", std::string());
    http.model = config.backend.value("model", std::string());
    http.top_logprobs = config.backend.value("top_logprobs", http.top_logprobs);
    http = http.with_environment();
    if (http.endpoint.empty()) throw Error(ErrorCode::InvalidConfig, "http backend needs an endpoint");
    backend = std::make_shared<lm::HttpBackend>(http);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown backend kind " + kind);
  }

  std::shared_ptr<nli::Verifier> verifier;
  if (config.verifier.is_object()) {
    const auto vkind = config.verifier.value("kind", std::string("scripted"));
    if (vkind == "scripted") {
      verifier = std::make_shared<nli::ScriptedVerifier>(
          nli::ScriptedVerifier::from_file(config.verifier.at("fixture").get<std::string>()));
    } else if (vkind == "http") {
      verifier = std::make_shared<nli::HttpVerifier>(config.verifier.value("endpoint", std::string()));
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown verifier kind " + vkind);
    }
    verifier = std::make_shared<nli::CachingVerifier>(verifier, cache, trace);
  }
  if (config.compile.mode == CompileMode::Verifier && !verifier) {
    throw Error(ErrorCode::InvalidConfig, "Verifier mode needs a verifier section");
  }

  Engine engine;
  engine.model = std::make_shared<lm::LanguageModel>(backend, cache, trace, config.seed);
  engine.verifier = verifier;
  engine.prompts = config.prompts;
  engine.tree = config.tree;
  engine.compile = config.compile;
  return engine;
}

json run_manifest(const RunConfig& config, const Engine& engine, Method method) {
  const json prompts{{"qa_pairs", config.prompts.qa_pairs},
                     {"qa_explanations", config.prompts.qa_explanations},
                     {"abductive", config.prompts.abductive}};
  json backends = json::array({engine.model->backend().id()});
  if (engine.verifier) backends.push_back(engine.verifier->id());
  return json{{"config_hash", json_digest(config.to_json())},
              {"prompt_set_hash", json_digest(prompts)},
              {"backend_ids", std::move(backends)},
              {"seed", config.seed ? json(*config.seed) : json(nullptr)},
              {"method", to_string(method)}};
}

}  // namespace maieutic::harness
