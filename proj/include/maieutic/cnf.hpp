#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace maieutic {

using VarId = int;

struct Literal {
  VarId var = 0;
  bool positive = true;

  Literal operator!() const { return {var, !positive}; }
  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

enum class ClauseOrigin { Belief, Consistency, Nli };

std::string_view to_string(ClauseOrigin origin);
ClauseOrigin clause_origin_from_string(std::string_view text);

// Disjunction of literals with a positive weight.
struct WeightedClause {
  std::vector<Literal> literals;
  double weight = 1.0;
  ClauseOrigin origin = ClauseOrigin::Belief;

  bool satisfied_by(const std::vector<bool>& values) const;
  bool operator==(const WeightedClause&) const = default;
};

class WeightedCnf {
 public:
  // Variable ids are dense, assigned in declaration order.
  VarId add_variable(std::string name);
  std::optional<VarId> find(std::string_view name) const;
  VarId var(std::string_view name) const;
  const std::string& name(VarId v) const { return names_.at(v); }
  std::size_t num_variables() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }

  // Rejects empty clauses, unknown variables, repeated variables and
  // non-positive or non-finite weights.
  void add_clause(WeightedClause clause);
  const std::vector<WeightedClause>& clauses() const { return clauses_; }
  double total_weight() const;

  bool operator==(const WeightedCnf&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<WeightedClause> clauses_;
};

// Clause dump: [{"literals": [{"node", "positive"}], "weight", "origin"}].
nlohmann::json clauses_to_json(const WeightedCnf& cnf);

}  // namespace maieutic
