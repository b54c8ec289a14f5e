#ifndef FAIRDIV_ORACLE_HPP
#define FAIRDIV_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/problem.hpp"
#include "fairdiv/rules.hpp"

namespace fairdiv::oracle {

/// Brute-force verifiers. Everything here enumerates coalitions or
/// permutations outright, so it is independent of the closed forms in the
/// rules module and deliberately capped at desk-scale sizes.

/// Dissatisfaction of every non-empty coalition, v(S) - x(S), sorted in
/// decreasing order; length 2^n - 1.
struct ExcessVector {
  std::vector<double> values;
};

/// Throws CapacityError beyond 20 users.
ExcessVector excess_vector(const AllocationProblem& problem, std::span<const double> amounts);

/// Lexicographic comparison with tolerance ties: -1 / 0 / +1 for the first
/// component pair differing by more than tol.
int lex_compare(const ExcessVector& a, const ExcessVector& b, double tol = 1e-9);

/// True iff the allocation is efficient and no coalition prefers its own
/// worth, within 1e-9. Throws CapacityError beyond 20 users.
bool core_membership(const AllocationProblem& problem, std::span<const double> amounts);

/// Shapley value as the plain average of marginal contributions over all n!
/// arrival orders. Throws CapacityError beyond 8 users.
Allocation shapley_by_permutations(const AllocationProblem& problem);

struct DominanceResult {
  bool dominant = false;            ///< no sampled imputation beat the candidate
  std::vector<double> witness;      ///< a strictly better imputation, when found
  ExcessVector candidate_excesses;  ///< theta of the candidate
  ExcessVector witness_excesses;    ///< theta of the witness, when found
};

/// Samples `trials` random imputations (a mix of fresh simplex draws and
/// perturbations of the candidate) and checks that the candidate's sorted
/// excess vector is lexicographically minimal among them. A refutation is
/// sound; a pass is probabilistic evidence. Deterministic for a fixed seed,
/// with per-trial streams derived from (seed, trial index).
/// Throws CapacityError beyond 12 users and DomainError when the candidate
/// is not an imputation.
DominanceResult lexicographic_dominance_check(const AllocationProblem& problem,
                                              std::span<const double> candidate,
                                              std::size_t trials, std::uint64_t seed);

}  // namespace fairdiv::oracle

#endif  // FAIRDIV_ORACLE_HPP
