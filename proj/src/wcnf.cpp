#include "maieutic/wcnf.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "maieutic/error.hpp"

namespace maieutic::maxsat {

using nlohmann::json;

namespace {

std::uint64_t scaled_weight(double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("WCNF export requires positive finite weights");
  }
  const double scaled = std::round(weight * kWcnfScale);
  if (scaled >= 9.0e18) throw Error(ErrorCode::WeightOverflow, "weight " + std::to_string(weight));
  // Weights below half a quantum still need a positive integer.
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(scaled));
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(ErrorCode::WeightOverflow, "total clause weight exceeds 64 bits");
  }
  return a + b;
}

}  // namespace

std::string to_wcnf(const WeightedCnf& cnf, const std::vector<bool>& hard) {
  const auto& clauses = cnf.clauses();
  if (!hard.empty() && hard.size() != clauses.size()) {
    throw std::invalid_argument("hard mask size differs from clause count");
  }
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const bool is_hard = !hard.empty() && hard[i];
    weights.push_back(is_hard ? 0 : scaled_weight(clauses[i].weight));
    total = checked_add(total, weights.back());
  }
  const std::uint64_t top = checked_add(total, 1);
  std::ostringstream out;
  out << "p wcnf " << cnf.num_variables() << ' ' << clauses.size() << ' ' << top << '\n';
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    out << (weights[i] == 0 ? top : weights[i]);
    for (const auto& lit : clauses[i].literals) out << ' ' << (lit.positive ? "" : "-") << lit.var + 1;
    out << " 0\n";
  }
  return out.str();
}

json wcnf_sidecar(const WeightedCnf& cnf) {
  json origins = json::array();
  for (const auto& c : cnf.clauses()) origins.push_back(to_string(c.origin));
  return json{{"scale", static_cast<std::uint64_t>(kWcnfScale)},
              {"variables", cnf.variable_names()},
              {"origins", std::move(origins)}};
}

WcnfDocument parse_wcnf(std::istream& in, const json* sidecar) {
  WcnfDocument doc;
  std::size_t line_no = 0;
  std::size_t declared_vars = 0;
  std::size_t declared_clauses = 0;
  bool have_header = false;
  bool have_top = false;
  std::vector<std::string> names;
  std::vector<std::string> origins;
  if (sidecar) {
    try {
      names = sidecar->at("variables").get<std::vector<std::string>>();
      if (sidecar->contains("origins")) origins = sidecar->at("origins").get<std::vector<std::string>>();
    } catch (const json::exception& ex) {
      throw ParseError(0, std::string("bad variable sidecar: ") + ex.what());
    }
  }

  // Clause under construction; a clause may span several lines.
  bool in_clause = false;
  std::uint64_t weight = 0;
  std::vector<Literal> literals;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string format;
      if (!(tokens >> format) || format != "wcnf") throw ParseError(line_no, "expected 'p wcnf'");
      long long nv = -1;
      long long nc = -1;
      if (!(tokens >> nv >> nc) || nv < 0 || nc < 0) throw ParseError(line_no, "malformed header counts");
      declared_vars = static_cast<std::size_t>(nv);
      declared_clauses = static_cast<std::size_t>(nc);
      std::string top_text;
      if (tokens >> top_text) {
        try {
          std::size_t used = 0;
          doc.top = std::stoull(top_text, &used);
          if (used != top_text.size()) throw std::invalid_argument(top_text);
        } catch (const std::exception&) {
          throw ParseError(line_no, "malformed top weight");
        }
        have_top = true;
      }
      std::string extra;
      if (tokens >> extra) throw ParseError(line_no, "trailing tokens in header");
      if (!names.empty() && names.size() != declared_vars) {
        throw ParseError(line_no, "sidecar variable count differs from header");
      }
      for (std::size_t v = 0; v < declared_vars; ++v) {
        doc.cnf.add_variable(names.empty() ? "x" + std::to_string(v + 1) : names[v]);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before header");
    std::istringstream rest(line);
    std::string tok;
    while (rest >> tok) {
      long long value = 0;
      try {
        std::size_t used = 0;
        value = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "not an integer: " + tok);
      }
      if (!in_clause) {
        if (value <= 0) throw ParseError(line_no, "clause weight must be positive");
        weight = static_cast<std::uint64_t>(value);
        in_clause = true;
        literals.clear();
        continue;
      }
      if (value == 0) {
        if (literals.empty()) throw ParseError(line_no, "empty clause");
        const std::size_t index = doc.cnf.clauses().size();
        if (index >= declared_clauses) throw ParseError(line_no, "more clauses than declared");
        const bool hard = have_top && weight >= doc.top;
        WeightedClause clause;
        clause.literals = literals;
        clause.weight = static_cast<double>(hard ? doc.top : weight) / kWcnfScale;
        if (index < origins.size()) clause.origin = clause_origin_from_string(origins[index]);
        try {
          doc.cnf.add_clause(std::move(clause));
        } catch (const std::invalid_argument& ex) {
          throw ParseError(line_no, ex.what());
        }
        doc.hard.push_back(hard);
        in_clause = false;
        continue;
      }
      const auto var = static_cast<std::size_t>(value < 0 ? -value : value);
      if (var > declared_vars) throw ParseError(line_no, "variable out of range: " + tok);
      literals.push_back({static_cast<VarId>(var - 1), value > 0});
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p wcnf' header");
  if (in_clause) throw ParseError(line_no, "unterminated clause");
  if (doc.cnf.clauses().size() != declared_clauses) {
    throw ParseError(line_no, "declared " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(doc.cnf.clauses().size()));
  }
  return doc;
}

void export_wcnf(const WeightedCnf& cnf, const std::string& path, const std::vector<bool>& hard) {
  const auto text = to_wcnf(cnf, hard);
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
    out << text;
  }
  std::ofstream side(path + ".vars.json");
  if (!side) throw Error(ErrorCode::InvalidConfig, "cannot write " + path + ".vars.json");
  side << wcnf_sidecar(cnf).dump(2) << '\n';
}

WcnfDocument import_wcnf_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  const auto side_path = path + ".vars.json";
  if (std::filesystem::exists(side_path)) {
    std::ifstream side(side_path);
    json sidecar;
    try {
      sidecar = json::parse(side);
    } catch (const json::exception& ex) {
      throw ParseError(0, side_path + ": " + ex.what());
    }
    return parse_wcnf(in, &sidecar);
  }
  return parse_wcnf(in, nullptr);
}

WeightedCnf import_wcnf(const std::string& path) { return import_wcnf_document(path).cnf; }

}  // namespace maieutic::maxsat
