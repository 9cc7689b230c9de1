#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maieutic/cnf.hpp"

namespace maieutic::maxsat {

// Real weights are multiplied by this and rounded to integers.
inline constexpr double kWcnfScale = 1e6;

struct WcnfDocument {
  WeightedCnf cnf;
  std::vector<bool> hard;  // per clause; hard clauses carry weight top / scale
  std::uint64_t top = 0;
};

// DIMACS WCNF text: "p wcnf <nvars> <nclauses> <top>" with top = total + 1,
// then one "<weight> <lits> 0" line per clause. Variable i is written as i + 1.
// `hard` marks clauses written with weight `top`. Throws WeightOverflow.
std::string to_wcnf(const WeightedCnf& cnf, const std::vector<bool>& hard = {});
// {"scale", "variables": [name by DIMACS index - 1], "origins": [...]}.
nlohmann::json wcnf_sidecar(const WeightedCnf& cnf);

// Throws ParseError with the offending line number.
WcnfDocument parse_wcnf(std::istream& in, const nlohmann::json* sidecar = nullptr);

// Writes `path` and `path + ".vars.json"`.
void export_wcnf(const WeightedCnf& cnf, const std::string& path,
                 const std::vector<bool>& hard = {});
// Reads `path`, plus its sidecar when present.
WcnfDocument import_wcnf_document(const std::string& path);
WeightedCnf import_wcnf(const std::string& path);

}  // namespace maieutic::maxsat
