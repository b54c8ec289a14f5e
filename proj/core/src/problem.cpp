#include "fairdiv/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace fairdiv {

AllocationProblem::AllocationProblem(std::vector<double> demands, double estate)
    : demands_(std::move(demands)), estate_(estate) {
  if (demands_.empty()) {
    throw ValidationError("demands: need at least one user");
  }
  if (demands_.size() > 64) {
    throw ValidationError("demands: at most 64 users supported");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < demands_.size(); ++i) {
    const double c = demands_[i];
    if (!std::isfinite(c) || c < 0.0) {
      throw ValidationError("demands[" + std::to_string(i) + "]: must be finite and >= 0");
    }
    any_positive = any_positive || c > 0.0;
  }
  if (!any_positive) {
    throw ValidationError("demands: at least one demand must be positive");
  }
  if (!std::isfinite(estate_) || estate_ < 0.0) {
    throw ValidationError("estate: must be finite and >= 0");
  }
  total_ = 0.0;
  for (double c : demands_) total_ += c;
  if (total_ < estate_) {
    throw NotBankruptcyError("not a bankruptcy problem: total demand < estate");
  }
}

double AllocationProblem::demand(std::size_t i) const {
  if (i >= demands_.size()) {
    throw ValidationError("user index " + std::to_string(i) + " out of range");
  }
  return demands_[i];
}

Coalition Coalition::grand(std::size_t n) {
  if (n > 64) throw ValidationError("coalition: at most 64 users supported");
  if (n == 64) return Coalition{~std::uint64_t{0}};
  return Coalition{(std::uint64_t{1} << n) - 1};
}

Coalition Coalition::of(std::initializer_list<std::size_t> members) {
  Coalition s;
  for (std::size_t i : members) s = s.with(i);
  return s;
}

std::size_t Coalition::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

Coalition Coalition::with(std::size_t i) const {
  if (i >= 64) throw ValidationError("coalition member index " + std::to_string(i) + " out of range");
  return Coalition{mask_ | (std::uint64_t{1} << i)};
}

Coalition Coalition::without(std::size_t i) const {
  if (i >= 64) throw ValidationError("coalition member index " + std::to_string(i) + " out of range");
  return Coalition{mask_ & ~(std::uint64_t{1} << i)};
}

std::string_view to_string(UserCase c) {
  switch (c) {
    case UserCase::Gm: return "Gm";
    case UserCase::Gg: return "Gg";
    case UserCase::Mm: return "Mm";
    case UserCase::Mg: return "Mg";
  }
  return "?";
}

double characteristic_value(const AllocationProblem& problem, Coalition s) {
  const std::size_t n = problem.user_count();
  if (n < 64 && (s.mask() >> n) != 0) {
    throw ValidationError("coalition names users outside the problem");
  }
  if (s.is_empty()) return 0.0;
  double outside = 0.0;
  const auto demands = problem.demands();
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.contains(i)) outside += demands[i];
  }
  return std::max(problem.estate() - outside, 0.0);
}

RightsProfile rights_profile(const AllocationProblem& problem) {
  const std::size_t n = problem.user_count();
  const double estate = problem.estate();
  const double total = problem.total_demand();
  const auto demands = problem.demands();

  RightsProfile rp;
  rp.min_rights.resize(n);
  rp.max_rights.resize(n);

  if (problem.is_degenerate()) {
    // Total demand equals the estate: every feasible range collapses to the
    // demand itself and the mood is 1 by definition.
    rp.min_rights.assign(demands.begin(), demands.end());
    rp.max_rights.assign(demands.begin(), demands.end());
    rp.mood = 1.0;
    return rp;
  }

  double min_sum = 0.0;
  double max_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double max_i = std::min(demands[i], estate);
    // v({i}) = max(E - sum of other demands, 0); the clamp to [0, max_i]
    // absorbs rounding of (total - c_i) near the degenerate boundary.
    const double min_i = std::clamp(estate - (total - demands[i]), 0.0, max_i);
    rp.min_rights[i] = min_i;
    rp.max_rights[i] = max_i;
    min_sum += min_i;
    max_sum += max_i;
  }
  const double span = max_sum - min_sum;
  // span = 0 outside the degenerate case only when a single user holds all
  // positive demand; everyone is then pinned at its unique feasible point.
  rp.mood = span > 0.0 ? std::clamp((estate - min_sum) / span, 0.0, 1.0) : 1.0;
  return rp;
}

UserCase classify_user(const AllocationProblem& problem, std::size_t i) {
  const double c_i = problem.demand(i);  // range-checks i
  const double v_i = characteristic_value(problem, Coalition::of({i}));
  const bool greedy_user = c_i >= problem.estate();
  if (v_i > 0.0) {
    return greedy_user ? UserCase::Mg : UserCase::Mm;
  }
  return greedy_user ? UserCase::Gg : UserCase::Gm;
}

}  // namespace fairdiv
