#include "maieutic/trace.hpp"

#include <fstream>

#include "maieutic/error.hpp"

namespace maieutic {

void to_json(nlohmann::json& j, const TraceRecord& r) {
  j = nlohmann::json{{"seq", r.seq},         {"digest", r.digest},         {"purpose", r.purpose},
                     {"backend", r.backend}, {"latency_ms", r.latency_ms}, {"cache_hit", r.cache_hit}};
}

void Trace::record(TraceRecord r) {
  std::lock_guard lock(mutex_);
  r.seq = records_.size();
  records_.push_back(std::move(r));
}

std::vector<TraceRecord> Trace::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::size_t Trace::backend_calls() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& r : records_) n += r.cache_hit ? 0 : 1;
  return n;
}

std::size_t Trace::cache_hits() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& r : records_) n += r.cache_hit ? 1 : 0;
  return n;
}

std::string Trace::to_jsonl() const {
  std::string out;
  for (const auto& r : records()) {
    out += nlohmann::json(r).dump();
    out += '\n';
  }
  return out;
}

void Trace::write_jsonl(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write trace " + path);
  out << to_jsonl();
}

}  // namespace maieutic
