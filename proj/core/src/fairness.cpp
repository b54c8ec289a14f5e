#include "fairdiv/fairness.hpp"

#include <cmath>
#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

void check_length(const AllocationProblem& problem, std::span<const double> amounts) {
  if (amounts.size() != problem.user_count()) {
    throw ValidationError("allocation length does not match user count");
  }
}

double squared_mean_over_mean_square(std::span<const double> rates) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double r : rates) {
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq == 0.0) {
    throw UndefinedIndexError("fairness index undefined: all rates are zero");
  }
  return (sum * sum) / (static_cast<double>(rates.size()) * sum_sq);
}

}  // namespace

std::vector<double> dfs(const AllocationProblem& problem, std::span<const double> amounts) {
  check_length(problem, amounts);
  const auto demands = problem.demands();
  std::vector<double> rates(amounts.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    rates[i] = demands[i] > 0.0 ? amounts[i] / demands[i] : 1.0;
  }
  return rates;
}

std::vector<double> ps(const AllocationProblem& problem, std::span<const double> amounts) {
  check_length(problem, amounts);
  const RightsProfile rp = rights_profile(problem);
  std::vector<double> rates(amounts.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double range = rp.range(i);
    rates[i] = range > 0.0 ? (amounts[i] - rp.min_rights[i]) / range : 1.0;
  }
  return rates;
}

double ps_by_case(const AllocationProblem& problem, std::span<const double> amounts,
                  std::size_t i) {
  check_length(problem, amounts);
  const UserCase c = classify_user(problem, i);  // range-checks i
  const RightsProfile rp = rights_profile(problem);
  const double v_i = rp.min_rights[i];
  double numerator = 0.0;
  double denominator = 0.0;
  switch (c) {
    case UserCase::Gm:
      numerator = amounts[i];
      denominator = problem.demands()[i];
      break;
    case UserCase::Gg:
      numerator = amounts[i];
      denominator = problem.estate();
      break;
    case UserCase::Mm:
      numerator = amounts[i] - v_i;
      denominator = problem.demands()[i] - v_i;
      break;
    case UserCase::Mg:
      numerator = amounts[i] - v_i;
      denominator = problem.estate() - v_i;
      break;
  }
  return denominator > 0.0 ? numerator / denominator : 1.0;
}

double propensity_to_disrupt(const AllocationProblem& problem, std::span<const double> amounts,
                             Coalition s) {
  check_length(problem, amounts);
  const std::size_t n = problem.user_count();
  if (s.is_empty() || s == Coalition::grand(n)) {
    throw DomainError("propensity to disrupt is undefined for the empty and grand coalitions");
  }
  const Coalition complement = s.complement_in(n);
  double inside = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (s.contains(i) ? inside : outside) += amounts[i];
  }
  const double numerator = outside - characteristic_value(problem, complement);
  const double denominator = inside - characteristic_value(problem, s);
  if (denominator == 0.0) {
    // A coalition pinned at its own worth: infinitely unhappy unless the
    // complement is pinned too, in which case nobody has anything to lose.
    if (numerator == 0.0) return 0.0;
    return numerator > 0.0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  }
  return numerator / denominator;
}

double jain_index(const AllocationProblem& problem, std::span<const double> amounts) {
  const auto rates = dfs(problem, amounts);
  return squared_mean_over_mean_square(rates);
}

double player_fairness_index(const AllocationProblem& problem, std::span<const double> amounts) {
  const auto rates = ps(problem, amounts);
  return squared_mean_over_mean_square(rates);
}

SatisfactionReport satisfaction_report(const AllocationProblem& problem,
                                       std::span<const double> amounts) {
  SatisfactionReport report;
  report.dfs = dfs(problem, amounts);
  report.ps = ps(problem, amounts);
  report.propensity.resize(problem.user_count());
  if (problem.user_count() == 1) {
    // No proper singleton coalition exists; the lone user holds the whole
    // estate and has nothing to disrupt.
    report.propensity[0] = 0.0;
  } else {
    for (std::size_t i = 0; i < problem.user_count(); ++i) {
      report.propensity[i] = propensity_to_disrupt(problem, amounts, Coalition::of({i}));
    }
  }
  report.jain = squared_mean_over_mean_square(report.dfs);
  report.player_fairness = squared_mean_over_mean_square(report.ps);
  return report;
}

}  // namespace fairdiv
