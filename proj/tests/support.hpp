// Shared helpers for the test suites: seeded random problem generators and
// small vector utilities. Everything is deterministic for a fixed seed.
#ifndef FAIRDIV_TESTS_SUPPORT_HPP
#define FAIRDIV_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/problem.hpp"
#include "fairdiv/random.hpp"
#include "fairdiv/sim.hpp"

namespace testsupport {

inline fairdiv::sim::DemandDistribution random_distribution(fairdiv::SplitMix64& g) {
  if (g.next_unit() < 0.5) {
    return fairdiv::sim::DemandDistribution::uniform(0.0, 100.0);
  }
  return fairdiv::sim::DemandDistribution::weibull(1.4, 40.0);
}

/// Random bankruptcy problem: n demands from a random distribution, estate a
/// random fraction (5%..95%) of the total demand.
inline fairdiv::AllocationProblem random_problem(fairdiv::SplitMix64& g, std::size_t n) {
  const auto dist = random_distribution(g);
  const auto demands = fairdiv::sim::generate_demands(dist, n, g);
  const double ratio = 0.05 + 0.9 * g.next_unit();
  return fairdiv::sim::make_instance(demands, ratio);
}

/// Problem in which every user demands at least the whole estate.
inline fairdiv::AllocationProblem all_greedy_problem(fairdiv::SplitMix64& g, std::size_t n) {
  const double estate = 1.0 + 99.0 * g.next_unit();
  std::vector<double> demands(n);
  for (auto& c : demands) c = estate * (1.0 + g.next_unit());
  return fairdiv::AllocationProblem(std::move(demands), estate);
}

/// Problem in which every user is in the Gm case: each demand is below the
/// estate and the other users' demands always cover the estate.
inline fairdiv::AllocationProblem all_moderate_problem(fairdiv::SplitMix64& g, std::size_t n) {
  for (;;) {
    std::vector<double> demands(n);
    double total = 0.0;
    double largest = 0.0;
    for (auto& c : demands) {
      c = 1.0 + 99.0 * g.next_unit();
      total += c;
      largest = std::max(largest, c);
    }
    if (2.0 * largest >= total) continue;  // needs max(c) < E < total - max(c)
    const double estate = largest + (0.01 + 0.98 * g.next_unit()) * (total - 2.0 * largest);
    return fairdiv::AllocationProblem(std::move(demands), estate);
  }
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

inline double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace testsupport

#endif  // FAIRDIV_TESTS_SUPPORT_HPP
