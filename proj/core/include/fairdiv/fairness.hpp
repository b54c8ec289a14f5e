#ifndef FAIRDIV_FAIRNESS_HPP
#define FAIRDIV_FAIRNESS_HPP

#include <span>
#include <vector>

#include "fairdiv/problem.hpp"

namespace fairdiv {

/// Satisfaction rates and fairness indices of one allocation. Rates are
/// dimensionless; ps entries may leave [0,1] when the allocation is not
/// stable, and that is deliberately not masked.
struct SatisfactionReport {
  std::vector<double> dfs;         ///< satisfied fraction of each demand
  std::vector<double> ps;          ///< position within [min_i, max_i]
  std::vector<double> propensity;  ///< singleton propensity to disrupt, may be +inf
  double jain = 0.0;
  double player_fairness = 0.0;
};

/// Demand fraction satisfaction, x_i / c_i. Zero-demand users count as fully
/// satisfied.
std::vector<double> dfs(const AllocationProblem& problem, std::span<const double> amounts);

/// Player satisfaction, (x_i - min_i) / (max_i - min_i). Users whose feasible
/// range is a single point (zero demand, or total demand equal to the estate)
/// count as fully satisfied.
std::vector<double> ps(const AllocationProblem& problem, std::span<const double> amounts);

/// Player satisfaction of user i through the case-specific formula for its
/// classification; agrees with ps() on every input.
double ps_by_case(const AllocationProblem& problem, std::span<const double> amounts,
                  std::size_t i);

/// Ratio of the complement's loss to the coalition's own loss if the
/// allocation is abandoned. +inf when the coalition gains nothing over going
/// alone; s must be a proper non-empty coalition.
double propensity_to_disrupt(const AllocationProblem& problem, std::span<const double> amounts,
                             Coalition s);

/// Jain index over the DFS rates: (sum r)^2 / (n sum r^2), in [1/n, 1].
/// Throws UndefinedIndexError when every rate is zero.
double jain_index(const AllocationProblem& problem, std::span<const double> amounts);

/// Jain-style index over the PS rates; 1 exactly when all satisfactions are
/// equal, which is the defining property of the mood value.
double player_fairness_index(const AllocationProblem& problem, std::span<const double> amounts);

/// Convenience bundle: both rate vectors, singleton propensities and both
/// indices in one pass.
SatisfactionReport satisfaction_report(const AllocationProblem& problem,
                                       std::span<const double> amounts);

}  // namespace fairdiv

#endif  // FAIRDIV_FAIRNESS_HPP
