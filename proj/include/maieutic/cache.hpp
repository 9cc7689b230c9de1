#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace maieutic::lm {

// Persistent response cache: one JSON file per digest under `dir`.
// Each file stores {"key": digest, "response": ...}; a key that does not
// match its filename raises CacheCorrupt on read.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<nlohmann::json> get(const std::string& key) const;
  // First write wins; later puts for the same key are no-ops.
  void put(const std::string& key, const nlohmann::json& response);

  std::size_t size() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::mutex write_mutex_;
};

}  // namespace maieutic::lm
