#include "maieutic/cnf.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace maieutic {

std::string_view to_string(ClauseOrigin origin) {
  switch (origin) {
    case ClauseOrigin::Belief: return "Belief";
    case ClauseOrigin::Consistency: return "Consistency";
    case ClauseOrigin::Nli: return "Nli";
  }
  return "Belief";
}

ClauseOrigin clause_origin_from_string(std::string_view text) {
  if (text == "Belief") return ClauseOrigin::Belief;
  if (text == "Consistency") return ClauseOrigin::Consistency;
  if (text == "Nli") return ClauseOrigin::Nli;
  throw std::invalid_argument("unknown clause origin: " + std::string(text));
}

bool WeightedClause::satisfied_by(const std::vector<bool>& values) const {
  for (const auto& lit : literals) {
    if (values.at(lit.var) == lit.positive) return true;
  }
  return false;
}

VarId WeightedCnf::add_variable(std::string name) {
  if (find(name)) throw std::invalid_argument("duplicate variable " + name);
  names_.push_back(std::move(name));
  return static_cast<VarId>(names_.size() - 1);
}

std::optional<VarId> WeightedCnf::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

VarId WeightedCnf::var(std::string_view name) const {
  auto v = find(name);
  if (!v) throw std::out_of_range("unknown variable " + std::string(name));
  return *v;
}

void WeightedCnf::add_clause(WeightedClause clause) {
  if (clause.literals.empty()) throw std::invalid_argument("empty clause");
  if (!(clause.weight > 0.0) || !std::isfinite(clause.weight)) {
    throw std::invalid_argument("clause weight must be positive and finite");
  }
  std::set<VarId> seen;
  for (const auto& lit : clause.literals) {
    if (lit.var < 0 || static_cast<std::size_t>(lit.var) >= names_.size()) {
      throw std::invalid_argument("clause references undeclared variable " + std::to_string(lit.var));
    }
    if (!seen.insert(lit.var).second) {
      throw std::invalid_argument("variable repeated within a clause: " + names_[lit.var]);
    }
  }
  clauses_.push_back(std::move(clause));
}

double WeightedCnf::total_weight() const {
  double total = 0.0;
  for (const auto& c : clauses_) total += c.weight;
  return total;
}

nlohmann::json clauses_to_json(const WeightedCnf& cnf) {
  auto out = nlohmann::json::array();
  for (const auto& c : cnf.clauses()) {
    auto lits = nlohmann::json::array();
    for (const auto& l : c.literals) lits.push_back({{"node", cnf.name(l.var)}, {"positive", l.positive}});
    out.push_back({{"literals", std::move(lits)}, {"weight", c.weight}, {"origin", to_string(c.origin)}});
  }
  return out;
}

}  // namespace maieutic
