#pragma once

#include <cstddef>
#include <vector>

#include "maieutic/cnf.hpp"

namespace maieutic::maxsat {

inline constexpr std::size_t kMaxBruteForceVariables = 24;

struct Evaluation {
  double satisfied_weight = 0.0;
  std::vector<std::size_t> violated;  // clause indices, ascending
};

struct Assignment {
  std::vector<bool> values;  // indexed by VarId
  double satisfied_weight = 0.0;
  std::vector<std::size_t> violated;

  bool value(VarId v) const { return values.at(v); }
  bool operator==(const Assignment&) const = default;
};

// Sums satisfied clause weights in clause order. Throws UnassignedVariable
// unless `values` covers every variable.
Evaluation evaluate(const WeightedCnf& cnf, const std::vector<bool>& values);

// Exhaustive search. Among optima, returns the lexicographically smallest
// value vector (variables by id, false < true). Throws TooManyVariables
// above kMaxBruteForceVariables.
Assignment solve_brute(const WeightedCnf& cnf);

// Exact branch and bound with the same tie-break as solve_brute.
Assignment solve(const WeightedCnf& cnf);

}  // namespace maieutic::maxsat
