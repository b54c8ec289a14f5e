#ifndef FAIRDIV_RULES_HPP
#define FAIRDIV_RULES_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fairdiv/problem.hpp"

namespace fairdiv {

/// The implemented division rules. The string ids are part of the CLI and
/// file-format contract.
enum class Rule { prop, wprop, mmf, cel, shapley, nucleolus, mood };

std::string_view to_string(Rule r);
std::optional<Rule> parse_rule(std::string_view id);

/// The rules a sweep can evaluate without extra parameters (all but wprop).
std::span<const Rule> sweep_rules();

/// A feasible division of the estate, tagged with the rule that produced it.
/// Construction verifies non-negativity, demand boundedness and efficiency
/// against the problem (1e-9 tolerances), so a rule bug cannot silently
/// escape as a malformed allocation.
class Allocation {
 public:
  Allocation(const AllocationProblem& problem, std::vector<double> amounts, Rule rule);

  std::span<const double> amounts() const { return amounts_; }
  double operator[](std::size_t i) const { return amounts_[i]; }
  std::size_t size() const { return amounts_.size(); }
  Rule rule() const { return rule_; }

 private:
  std::vector<double> amounts_;
  Rule rule_;
};

/// Strictly positive per-user weights for the weighted proportional rule.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// x_i = E * c_i / sum(c).
Allocation proportional(const AllocationProblem& problem);

/// Unique maximizer of sum w_i log x_i under demand boundedness and
/// efficiency, solved exactly by water-filling on x_i = min(c_i, w_i / lambda).
/// With w = c this reduces to the proportional rule.
Allocation weighted_proportional(const AllocationProblem& problem, const WeightVector& weights);

/// Max-min fairness by progressive filling, exact on sorted demands.
Allocation mmf(const AllocationProblem& problem);

/// Constrained equal losses: x_i = max(c_i - lambda, 0) with the common loss
/// lambda chosen so the estate is exhausted.
Allocation cel(const AllocationProblem& problem);

/// Shapley value by exact subset enumeration. Throws CapacityError beyond
/// 20 users.
Allocation shapley(const AllocationProblem& problem);

/// Nucleolus of the induced game, computed in closed form via the
/// Aumann-Maschler contested-garment (Talmud) rule: constrained equal awards
/// on half-demands below the half-total, its self-dual form above.
Allocation nucleolus(const AllocationProblem& problem);

/// The allocation that gives every user the same satisfaction level m within
/// its feasible range: x_i = min_i + m * (max_i - min_i).
Allocation mood_value(const AllocationProblem& problem);

/// Intermediates of the two-phase mood-value computation, exposed so the
/// reduction can be inspected and tested step by step.
struct MoodValueSteps {
  std::vector<double> min_rights;       ///< step 1: guaranteed base amounts
  double reduced_estate = 0.0;          ///< step 2: E' = E - sum of bases
  std::vector<double> reduced_demands;  ///< step 2: c'_i = max_i - min_i
  std::vector<double> reduced_allocation;  ///< step 3: wprop(c', E') with w = c'
  std::vector<double> amounts;          ///< step 4: base + reduced allocation
};

MoodValueSteps mood_value_steps(const AllocationProblem& problem);

/// Mood value computed the long way: assign minimal rights, then divide the
/// remaining estate by the weighted proportional rule on the reduced problem.
/// Agrees with mood_value to within accumulated rounding.
Allocation mood_value_4step(const AllocationProblem& problem);

/// Dispatch by rule id. wprop needs weights and is rejected here.
Allocation apply_rule(Rule rule, const AllocationProblem& problem);

}  // namespace fairdiv

#endif  // FAIRDIV_RULES_HPP
