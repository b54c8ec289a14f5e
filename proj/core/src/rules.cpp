#include "fairdiv/rules.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

constexpr double kFeasibilityTol = 1e-9;

// Pascal-row binomial; exact in double for the sizes used here.
double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    b = b * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return b;
}

// Solves max sum w_i log x_i s.t. 0 <= x_i <= c_i, sum x_i = estate, via the
// breakpoint form of x_i = min(c_i, w_i / lambda). Users with c_i = 0 stay at
// zero; their weights are ignored. Assumes 0 <= estate <= sum(c).
std::vector<double> water_fill(std::span<const double> claims, std::span<const double> weights,
                               double estate) {
  const std::size_t n = claims.size();
  std::vector<double> x(n, 0.0);
  if (estate <= 0.0) return x;

  std::vector<std::size_t> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (claims[i] > 0.0) active.push_back(i);
  }
  // Users cap at their claim in decreasing order of w_i / c_i as the water
  // level 1/lambda rises.
  std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
    return weights[a] * claims[b] > weights[b] * claims[a];
  });

  double capped_claims = 0.0;
  double uncapped_weight = 0.0;
  for (std::size_t i : active) uncapped_weight += weights[i];

  for (std::size_t k = 0; k < active.size(); ++k) {
    const double remaining = estate - capped_claims;
    if (remaining <= 0.0) break;  // capped prefix already exhausts the estate
    const std::size_t u = active[k];
    const double lambda = uncapped_weight / remaining;
    if (lambda * claims[u] >= weights[u]) {
      // lambda lies at or above the next breakpoint ratio: users k.. stay
      // interior at w_i / lambda.
      for (std::size_t j = k; j < active.size(); ++j) {
        const std::size_t i = active[j];
        x[i] = weights[i] / lambda;
      }
      return x;
    }
    x[u] = claims[u];
    capped_claims += claims[u];
    uncapped_weight -= weights[u];
  }
  // Reached only when the estate equals the claims of the capped users up to
  // rounding; the remainder stays at zero.
  return x;
}

// Constrained equal awards: x_i = min(c_i, lambda) with sum x = estate.
// Assumes 0 <= estate <= sum(c).
std::vector<double> cea_amounts(std::span<const double> claims, double estate) {
  const std::size_t n = claims.size();
  std::vector<double> x(n, 0.0);
  if (estate <= 0.0) return x;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return claims[a] < claims[b]; });

  double saturated = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t remaining_users = n - k;
    const double lambda = (estate - saturated) / static_cast<double>(remaining_users);
    if (lambda <= claims[order[k]]) {
      for (std::size_t j = k; j < n; ++j) x[order[j]] = lambda;
      return x;
    }
    x[order[k]] = claims[order[k]];
    saturated += claims[order[k]];
  }
  return x;  // estate == sum(claims): everyone saturated
}

}  // namespace

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::prop: return "prop";
    case Rule::wprop: return "wprop";
    case Rule::mmf: return "mmf";
    case Rule::cel: return "cel";
    case Rule::shapley: return "shapley";
    case Rule::nucleolus: return "nucleolus";
    case Rule::mood: return "mood";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view id) {
  for (Rule r : {Rule::prop, Rule::wprop, Rule::mmf, Rule::cel, Rule::shapley, Rule::nucleolus,
                 Rule::mood}) {
    if (id == to_string(r)) return r;
  }
  return std::nullopt;
}

std::span<const Rule> sweep_rules() {
  static constexpr std::array<Rule, 6> kRules = {Rule::prop,    Rule::mmf,       Rule::cel,
                                                 Rule::shapley, Rule::nucleolus, Rule::mood};
  return kRules;
}

Allocation::Allocation(const AllocationProblem& problem, std::vector<double> amounts, Rule rule)
    : amounts_(std::move(amounts)), rule_(rule) {
  if (amounts_.size() != problem.user_count()) {
    throw ValidationError("allocation length does not match user count");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < amounts_.size(); ++i) {
    const double a = amounts_[i];
    if (!std::isfinite(a) || a < 0.0) {
      throw ValidationError("allocation[" + std::to_string(i) + "]: must be finite and >= 0");
    }
    if (a > problem.demands()[i] + kFeasibilityTol) {
      throw ValidationError("allocation[" + std::to_string(i) + "]: exceeds the demand");
    }
    sum += a;
  }
  if (std::abs(sum - problem.estate()) > kFeasibilityTol * std::max(1.0, problem.estate())) {
    throw ValidationError("allocation does not exhaust the estate");
  }
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("weights: need at least one entry");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      throw ValidationError("weights[" + std::to_string(i) + "]: must be finite and > 0");
    }
  }
}

Allocation proportional(const AllocationProblem& problem) {
  const auto demands = problem.demands();
  const double scale = problem.estate() / problem.total_demand();
  std::vector<double> x(problem.user_count());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = demands[i] * scale;
  return Allocation(problem, std::move(x), Rule::prop);
}

Allocation weighted_proportional(const AllocationProblem& problem, const WeightVector& weights) {
  if (weights.size() != problem.user_count()) {
    throw ValidationError("weights length does not match user count");
  }
  return Allocation(problem, water_fill(problem.demands(), weights.weights(), problem.estate()),
                    Rule::wprop);
}

Allocation mmf(const AllocationProblem& problem) {
  const auto demands = problem.demands();
  const std::size_t n = problem.user_count();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return demands[a] < demands[b]; });

  std::vector<double> x(n, 0.0);
  double remaining = problem.estate();
  for (std::size_t k = 0; k < n; ++k) {
    const double share = remaining / static_cast<double>(n - k);
    const std::size_t i = order[k];
    if (demands[i] <= share) {
      x[i] = demands[i];
      remaining -= demands[i];
    } else {
      // Nobody left saturates: split the rest evenly.
      for (std::size_t j = k; j < n; ++j) x[order[j]] = share;
      break;
    }
  }
  return Allocation(problem, std::move(x), Rule::mmf);
}

Allocation cel(const AllocationProblem& problem) {
  const auto demands = problem.demands();
  const std::size_t n = problem.user_count();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return demands[a] < demands[b]; });

  // Find the common loss lambda with sum max(c_i - lambda, 0) = estate by
  // walking the sorted breakpoints.
  double suffix = problem.total_demand();
  double lambda = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double cand = (suffix - problem.estate()) / static_cast<double>(n - k);
    if (cand <= demands[order[k]]) {
      lambda = std::max(cand, 0.0);
      break;
    }
    suffix -= demands[order[k]];
  }

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::max(demands[i] - lambda, 0.0);
  return Allocation(problem, std::move(x), Rule::cel);
}

Allocation shapley(const AllocationProblem& problem) {
  const std::size_t n = problem.user_count();
  if (n > 20) {
    throw CapacityError("shapley: exact subset enumeration supports at most 20 users");
  }
  const auto demands = problem.demands();
  const double estate = problem.estate();
  const double total = problem.total_demand();

  // weight(s) = (s-1)!(n-s)!/n! = 1 / (n * C(n-1, s-1)), kept exact as a
  // ratio of representable doubles.
  std::vector<double> weight(n + 1, 0.0);
  for (std::size_t s = 1; s <= n; ++s) {
    weight[s] = 1.0 / (static_cast<double>(n) * binomial(n - 1, s - 1));
  }

  std::vector<double> phi(n, 0.0);
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < top; ++mask) {
    double inside = 0.0;
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
      inside += demands[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    const double slack = estate - (total - inside);
    if (slack <= 0.0) continue;  // v(S) = 0, so every marginal inside is 0
    const double w = weight[static_cast<std::size_t>(std::popcount(mask))];
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(bits));
      const double without = std::max(slack - demands[i], 0.0);
      phi[i] += w * (slack - without);
    }
  }
  return Allocation(problem, std::move(phi), Rule::shapley);
}

Allocation nucleolus(const AllocationProblem& problem) {
  const auto demands = problem.demands();
  const std::size_t n = problem.user_count();
  const double total = problem.total_demand();
  const double estate = problem.estate();

  std::vector<double> half(n);
  for (std::size_t i = 0; i < n; ++i) half[i] = demands[i] / 2.0;

  std::vector<double> x;
  if (estate <= total / 2.0) {
    x = cea_amounts(half, estate);
  } else {
    x = cea_amounts(half, total - estate);
    for (std::size_t i = 0; i < n; ++i) x[i] = demands[i] - x[i];
  }
  return Allocation(problem, std::move(x), Rule::nucleolus);
}

Allocation mood_value(const AllocationProblem& problem) {
  const RightsProfile rp = rights_profile(problem);
  std::vector<double> x(problem.user_count());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rp.min_rights[i] + rp.mood * rp.range(i);
  }
  return Allocation(problem, std::move(x), Rule::mood);
}

MoodValueSteps mood_value_steps(const AllocationProblem& problem) {
  const std::size_t n = problem.user_count();
  const RightsProfile rp = rights_profile(problem);

  MoodValueSteps steps;
  steps.min_rights = rp.min_rights;
  steps.reduced_demands.assign(n, 0.0);
  steps.reduced_allocation.assign(n, 0.0);
  steps.amounts.assign(n, 0.0);

  if (problem.is_degenerate()) {
    // The only allocation is x = c, already granted by step 1.
    steps.amounts.assign(problem.demands().begin(), problem.demands().end());
    return steps;
  }

  double min_sum = 0.0;
  for (double v : rp.min_rights) min_sum += v;
  steps.reduced_estate = std::max(problem.estate() - min_sum, 0.0);
  for (std::size_t i = 0; i < n; ++i) steps.reduced_demands[i] = rp.range(i);

  steps.reduced_allocation =
      water_fill(steps.reduced_demands, steps.reduced_demands, steps.reduced_estate);
  for (std::size_t i = 0; i < n; ++i) {
    steps.amounts[i] = rp.min_rights[i] + steps.reduced_allocation[i];
  }
  return steps;
}

Allocation mood_value_4step(const AllocationProblem& problem) {
  return Allocation(problem, mood_value_steps(problem).amounts, Rule::mood);
}

Allocation apply_rule(Rule rule, const AllocationProblem& problem) {
  switch (rule) {
    case Rule::prop: return proportional(problem);
    case Rule::mmf: return mmf(problem);
    case Rule::cel: return cel(problem);
    case Rule::shapley: return shapley(problem);
    case Rule::nucleolus: return nucleolus(problem);
    case Rule::mood: return mood_value(problem);
    case Rule::wprop: break;
  }
  throw ValidationError("rule 'wprop' requires explicit weights");
}

}  // namespace fairdiv
