#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace maieutic {

struct TraceRecord {
  std::uint64_t seq = 0;
  std::string digest;
  std::string purpose;
  std::string backend;
  double latency_ms = 0.0;
  bool cache_hit = false;
};

void to_json(nlohmann::json& j, const TraceRecord& r);

// Audit log of backend calls, one record per call (cache hits included).
class Trace {
 public:
  void record(TraceRecord r);

  std::vector<TraceRecord> records() const;
  // Calls that reached a backend rather than the cache.
  std::size_t backend_calls() const;
  std::size_t cache_hits() const;

  // One JSON object per line.
  void write_jsonl(const std::string& path) const;
  std::string to_jsonl() const;

 private:
  mutable std::mutex mutex_;
  std::vector<TraceRecord> records_;
};

}  // namespace maieutic
