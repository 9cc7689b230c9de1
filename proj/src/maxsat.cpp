#include "maieutic/maxsat.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "maieutic/error.hpp"

namespace maieutic::maxsat {

Evaluation evaluate(const WeightedCnf& cnf, const std::vector<bool>& values) {
  if (values.size() != cnf.num_variables()) {
    throw Error(ErrorCode::UnassignedVariable,
                "expected " + std::to_string(cnf.num_variables()) + " values, got " +
                    std::to_string(values.size()));
  }
  Evaluation out;
  const auto& clauses = cnf.clauses();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].satisfied_by(values)) {
      out.satisfied_weight += clauses[i].weight;
    } else {
      out.violated.push_back(i);
    }
  }
  return out;
}

namespace {

Assignment make_assignment(const WeightedCnf& cnf, std::vector<bool> values) {
  auto eval = evaluate(cnf, values);
  return {std::move(values), eval.satisfied_weight, std::move(eval.violated)};
}

}  // namespace

Assignment solve_brute(const WeightedCnf& cnf) {
  const std::size_t n = cnf.num_variables();
  if (n > kMaxBruteForceVariables) {
    throw Error(ErrorCode::TooManyVariables, std::to_string(n) + " variables");
  }
  // Variable 0 is the most significant bit, so counting up walks value
  // vectors in lexicographic order.
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    double weight = 0;
  };
  std::vector<Masks> masks;
  for (const auto& c : cnf.clauses()) {
    Masks m;
    m.weight = c.weight;
    for (const auto& lit : c.literals) {
      const std::uint32_t bit = 1u << (n - 1 - lit.var);
      (lit.positive ? m.pos : m.neg) |= bit;
    }
    masks.push_back(m);
  }
  const std::uint32_t limit = n == 0 ? 1u : (1u << n);
  std::uint32_t best_mask = 0;
  double best = -1.0;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    double total = 0.0;
    for (const auto& m : masks) {
      if ((mask & m.pos) || (~mask & m.neg)) total += m.weight;
    }
    if (total > best) {
      best = total;
      best_mask = mask;
    }
  }
  std::vector<bool> values(n);
  for (std::size_t v = 0; v < n; ++v) values[v] = (best_mask >> (n - 1 - v)) & 1u;
  return make_assignment(cnf, std::move(values));
}

namespace {

class BranchAndBound {
 public:
  explicit BranchAndBound(const WeightedCnf& cnf)
      : cnf_(cnf), n_(cnf.num_variables()), state_(n_, kUnassigned), unit_pos_(n_), unit_neg_(n_) {
    std::vector<double> incident(n_, 0.0);
    std::vector<double> positive(n_, 0.0);
    for (const auto& c : cnf.clauses()) {
      for (const auto& lit : c.literals) {
        incident[lit.var] += c.weight;
        if (lit.positive) positive[lit.var] += c.weight;
      }
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](VarId a, VarId b) { return incident[a] > incident[b]; });
    prefer_true_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) prefer_true_[v] = positive[v] * 2 > incident[v];
    tolerance_ = 1e-9 * std::max(1.0, cnf.total_weight());
  }

  Assignment run() {
    search(0);
    return make_assignment(cnf_, best_values_);
  }

 private:
  static constexpr std::int8_t kUnassigned = -1;

  // Weight of satisfied and still-open clauses, less the unavoidable loss
  // from opposing unit clauses on the same variable.
  double upper_bound() {
    std::fill(unit_pos_.begin(), unit_pos_.end(), 0.0);
    std::fill(unit_neg_.begin(), unit_neg_.end(), 0.0);
    double bound = 0.0;
    for (const auto& c : cnf_.clauses()) {
      bool satisfied = false;
      int open = 0;
      Literal last{};
      for (const auto& lit : c.literals) {
        const auto s = state_[lit.var];
        if (s == kUnassigned) {
          ++open;
          last = lit;
        } else if ((s == 1) == lit.positive) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) {
        bound += c.weight;
      } else if (open > 0) {
        bound += c.weight;
        if (open == 1) (last.positive ? unit_pos_ : unit_neg_)[last.var] += c.weight;
      }
    }
    for (std::size_t v = 0; v < n_; ++v) bound -= std::min(unit_pos_[v], unit_neg_[v]);
    return bound;
  }

  void search(std::size_t depth) {
    if (have_best_ && upper_bound() < best_weight_ - tolerance_) return;
    if (depth == n_) {
      std::vector<bool> values(n_);
      for (std::size_t v = 0; v < n_; ++v) values[v] = state_[v] == 1;
      const double w = evaluate(cnf_, values).satisfied_weight;
      if (!have_best_ || w > best_weight_ || (w == best_weight_ && values < best_values_)) {
        have_best_ = true;
        best_weight_ = w;
        best_values_ = std::move(values);
      }
      return;
    }
    const VarId v = order_[depth];
    const std::int8_t first = prefer_true_[v] ? 1 : 0;
    for (std::int8_t value : {first, static_cast<std::int8_t>(1 - first)}) {
      state_[v] = value;
      search(depth + 1);
    }
    state_[v] = kUnassigned;
  }

  const WeightedCnf& cnf_;
  std::size_t n_;
  std::vector<std::int8_t> state_;
  std::vector<double> unit_pos_;
  std::vector<double> unit_neg_;
  std::vector<VarId> order_;
  std::vector<bool> prefer_true_;
  double tolerance_ = 0.0;
  bool have_best_ = false;
  double best_weight_ = 0.0;
  std::vector<bool> best_values_;
};

}  // namespace

Assignment solve(const WeightedCnf& cnf) { return BranchAndBound(cnf).run(); }

}  // namespace maieutic::maxsat
