#ifndef FAIRDIV_PROBLEM_HPP
#define FAIRDIV_PROBLEM_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// A division problem: n non-negative demands competing for an estate that
/// the total demand covers. Immutable once constructed.
class AllocationProblem {
 public:
  /// Validates and takes ownership of the demand vector.
  /// Throws ValidationError on shape/sign violations and NotBankruptcyError
  /// when the total demand is smaller than the estate.
  AllocationProblem(std::vector<double> demands, double estate);

  std::size_t user_count() const { return demands_.size(); }
  std::span<const double> demands() const { return demands_; }
  double demand(std::size_t i) const;
  double estate() const { return estate_; }
  double total_demand() const { return total_; }

  /// True when the estate exactly covers the total demand. Every rule then
  /// has the single solution x = demands.
  bool is_degenerate() const { return total_ <= estate_; }

 private:
  std::vector<double> demands_;
  double estate_;
  double total_;
};

/// A subset of users encoded as a bitmask (user i <-> bit i). Supports up to
/// 64 users; the enumeration-based operations impose tighter caps themselves.
class Coalition {
 public:
  constexpr Coalition() = default;

  static constexpr Coalition empty() { return Coalition{}; }
  static Coalition grand(std::size_t n);
  static Coalition of(std::initializer_list<std::size_t> members);
  static constexpr Coalition from_mask(std::uint64_t mask) { return Coalition{mask}; }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool contains(std::size_t i) const { return i < 64 && (mask_ >> i) & 1u; }
  constexpr bool is_empty() const { return mask_ == 0; }
  std::size_t size() const;

  Coalition with(std::size_t i) const;
  Coalition without(std::size_t i) const;
  constexpr Coalition complement_in(std::size_t n) const;

  friend constexpr bool operator==(Coalition a, Coalition b) { return a.mask_ == b.mask_; }

 private:
  constexpr explicit Coalition(std::uint64_t mask) : mask_(mask) {}

  std::uint64_t mask_ = 0;
};

constexpr Coalition Coalition::complement_in(std::size_t n) const {
  const std::uint64_t all = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return Coalition{all & ~mask_};
}

/// Per-user feasible range [min_i, max_i] for stable allocations, and the
/// common satisfaction level an efficient allocation can give everyone.
struct RightsProfile {
  std::vector<double> min_rights;  ///< worth of going alone, v({i})
  std::vector<double> max_rights;  ///< marginal worth in the full group, min(c_i, E)
  double mood = 1.0;               ///< (E - sum min) / (sum max - sum min), 1 if degenerate

  double range(std::size_t i) const { return max_rights[i] - min_rights[i]; }
};

/// Demand-side / group-side classification of one user.
/// First letter: the other n-1 users together are Greedy (their demands cover
/// the estate, so v({i}) = 0) or Moderate. Second letter: the user itself is
/// moderate (c_i < E) or greedy (c_i >= E).
enum class UserCase { Gm, Gg, Mm, Mg };

std::string_view to_string(UserCase c);

/// Worth of a coalition: what remains of the estate after everyone outside
/// takes their full demand, floored at zero. O(n) per call.
/// Throws ValidationError if the coalition names users beyond the problem.
double characteristic_value(const AllocationProblem& problem, Coalition s);

/// Computes minimal rights, maximal rights and the mood in one O(n) pass.
RightsProfile rights_profile(const AllocationProblem& problem);

/// Classifies user i per the four-case scheme. Throws ValidationError when
/// i is out of range.
UserCase classify_user(const AllocationProblem& problem, std::size_t i);

}  // namespace fairdiv

#endif  // FAIRDIV_PROBLEM_HPP
