#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include "fairdiv/errors.hpp"
#include "fairdiv/random.hpp"

namespace fairdiv::oracle {

namespace {

constexpr double kTol = 1e-9;

void check_capacity(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw CapacityError(std::string(what) + ": supports at most " + std::to_string(cap) +
                        " users");
  }
}

// Subset sums for every mask, built with the low-bit recurrence.
std::vector<double> subset_sums(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::uint64_t mask = 1; mask < sums.size(); ++mask) {
    const std::uint64_t low = mask & (~mask + 1);
    sums[mask] = sums[mask ^ low] + values[static_cast<std::size_t>(std::countr_zero(low))];
  }
  return sums;
}

bool is_imputation(const AllocationProblem& problem, std::span<const double> x) {
  if (x.size() != problem.user_count()) return false;
  double sum = 0.0;
  for (double a : x) sum += a;
  if (std::abs(sum - problem.estate()) > kTol * std::max(1.0, problem.estate())) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < characteristic_value(problem, Coalition::of({i})) - kTol) return false;
  }
  return true;
}

}  // namespace

ExcessVector excess_vector(const AllocationProblem& problem, std::span<const double> amounts) {
  const std::size_t n = problem.user_count();
  check_capacity(n, 20, "excess_vector");
  if (amounts.size() != n) throw ValidationError("allocation length does not match user count");

  const auto demand_sums = subset_sums(problem.demands());
  const auto amount_sums = subset_sums(amounts);
  const double estate = problem.estate();
  const double total = problem.total_demand();

  ExcessVector theta;
  theta.values.resize(demand_sums.size() - 1);
  for (std::uint64_t mask = 1; mask < demand_sums.size(); ++mask) {
    const double value = std::max(estate - (total - demand_sums[mask]), 0.0);
    theta.values[mask - 1] = value - amount_sums[mask];
  }
  std::sort(theta.values.begin(), theta.values.end(), std::greater<>());
  return theta;
}

int lex_compare(const ExcessVector& a, const ExcessVector& b, double tol) {
  if (a.values.size() != b.values.size()) {
    throw ValidationError("excess vectors of different games are not comparable");
  }
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double d = a.values[k] - b.values[k];
    if (std::abs(d) <= tol) continue;
    return d < 0.0 ? -1 : 1;
  }
  return 0;
}

bool core_membership(const AllocationProblem& problem, std::span<const double> amounts) {
  const std::size_t n = problem.user_count();
  check_capacity(n, 20, "core_membership");
  if (amounts.size() != n) throw ValidationError("allocation length does not match user count");

  double sum = 0.0;
  for (double a : amounts) sum += a;
  if (std::abs(sum - problem.estate()) > kTol * std::max(1.0, problem.estate())) return false;

  const auto demand_sums = subset_sums(problem.demands());
  const auto amount_sums = subset_sums(amounts);
  const double estate = problem.estate();
  const double total = problem.total_demand();
  const std::uint64_t grand = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < grand; ++mask) {
    const double value = std::max(estate - (total - demand_sums[mask]), 0.0);
    if (amount_sums[mask] < value - kTol) return false;
  }
  return true;
}

Allocation shapley_by_permutations(const AllocationProblem& problem) {
  const std::size_t n = problem.user_count();
  check_capacity(n, 8, "shapley_by_permutations");
  const auto demands = problem.demands();
  const double estate = problem.estate();
  const double total = problem.total_demand();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> phi(n, 0.0);
  std::size_t count = 0;
  do {
    double inside = 0.0;
    double previous = 0.0;
    for (std::size_t i : order) {
      inside += demands[i];
      const double value = std::max(estate - (total - inside), 0.0);
      phi[i] += value - previous;
      previous = value;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));

  for (double& p : phi) p /= static_cast<double>(count);
  return Allocation(problem, std::move(phi), Rule::shapley);
}

DominanceResult lexicographic_dominance_check(const AllocationProblem& problem,
                                              std::span<const double> candidate,
                                              std::size_t trials, std::uint64_t seed) {
  const std::size_t n = problem.user_count();
  check_capacity(n, 12, "lexicographic_dominance_check");
  if (!is_imputation(problem, candidate)) {
    throw DomainError("candidate is not an imputation");
  }

  DominanceResult result;
  result.candidate_excesses = excess_vector(problem, candidate);

  std::vector<double> min_rights(n);
  double min_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    min_rights[i] = characteristic_value(problem, Coalition::of({i}));
    min_sum += min_rights[i];
  }
  const double slack = std::max(problem.estate() - min_sum, 0.0);

  std::vector<double> y(n);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 g = SplitMix64::keyed(seed, {static_cast<std::uint64_t>(t)});
    if (n > 1 && g.next_unit() < 0.5) {
      // Fresh imputation: minimal rights plus a uniform simplex split of the
      // slack (normalized exponential draws).
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = -std::log1p(-g.next_unit());
        sum += y[i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = min_rights[i] + (sum > 0.0 ? slack * y[i] / sum : slack / static_cast<double>(n));
      }
    } else {
      // Perturbation: shift mass between users, staying above minimal
      // rights. Magnitudes are log-uniform over [1e-6, 1e-1] * E to probe
      // both local and global dominance.
      y.assign(candidate.begin(), candidate.end());
      if (n > 1) {
        const std::size_t moves = 1 + static_cast<std::size_t>(g.next_below(3));
        for (std::size_t mv = 0; mv < moves; ++mv) {
          const auto from = static_cast<std::size_t>(g.next_below(n));
          auto to = static_cast<std::size_t>(g.next_below(n - 1));
          if (to >= from) ++to;
          const double magnitude =
              problem.estate() * std::pow(10.0, -6.0 + 5.0 * g.next_unit());
          const double shift = std::min(magnitude, y[from] - min_rights[from]);
          if (shift <= 0.0) continue;
          y[from] -= shift;
          y[to] += shift;
        }
      }
    }
    ExcessVector theta = excess_vector(problem, y);
    if (lex_compare(theta, result.candidate_excesses) < 0) {
      result.dominant = false;
      result.witness = y;
      result.witness_excesses = std::move(theta);
      return result;
    }
  }
  result.dominant = true;
  return result;
}

}  // namespace fairdiv::oracle
