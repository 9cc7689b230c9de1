#include "maieutic/cache.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "maieutic/error.hpp"

namespace maieutic::lm {

namespace fs = std::filesystem;
using nlohmann::json;

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

fs::path ResponseCache::path_for(const std::string& key) const {
  if (key.empty() || key.find_first_of("/\\.") != std::string::npos) {
    throw std::invalid_argument("cache key must be a plain digest: " + key);
  }
  return dir_ / (key + ".json");
}

std::optional<json> ResponseCache::get(const std::string& key) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::CacheCorrupt, path.string() + ": " + ex.what());
  }
  if (!doc.is_object() || doc.value("key", std::string()) != key || !doc.contains("response")) {
    throw Error(ErrorCode::CacheCorrupt, "digest mismatch in " + path.string());
  }
  return doc.at("response");
}

void ResponseCache::put(const std::string& key, const json& response) {
  const auto path = path_for(key);
  std::lock_guard lock(write_mutex_);
  if (fs::exists(path)) return;
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id();
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::CacheCorrupt, "cannot write " + tmp.string());
    out << json{{"key", key}, {"response", response}}.dump() << '\n';
  }
  fs::rename(tmp, path);
}

std::size_t ResponseCache::size() const {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() == ".json") ++n;
  }
  return n;
}

}  // namespace maieutic::lm
