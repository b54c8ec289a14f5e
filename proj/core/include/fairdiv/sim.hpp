#ifndef FAIRDIV_SIM_HPP
#define FAIRDIV_SIM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/problem.hpp"
#include "fairdiv/random.hpp"
#include "fairdiv/rules.hpp"

namespace fairdiv::sim {

/// Demand generator: uniform over [lo, hi), or Weibull(shape, scale) by
/// inversion. Draws of exactly zero are redrawn so instances stay valid.
struct DemandDistribution {
  enum class Kind { uniform, weibull };

  Kind kind = Kind::uniform;
  double a = 0.0;  ///< uniform: lo;   weibull: shape k
  double b = 0.0;  ///< uniform: hi;   weibull: scale lambda

  static DemandDistribution uniform(double lo, double hi);
  static DemandDistribution weibull(double shape, double scale);
};

std::vector<double> generate_demands(const DemandDistribution& dist, std::size_t n,
                                     SplitMix64& stream);

/// Builds the problem whose estate is the given fraction of the total
/// demand; ratio must lie in (0, 1).
AllocationProblem make_instance(std::span<const double> demands, double ratio);

enum class IndexKind { jain, player_fairness };
enum class RateKind { dfs, ps };

std::string_view to_string(IndexKind k);
std::string_view to_string(RateKind k);

struct SweepConfig {
  DemandDistribution distribution;
  std::size_t users = 0;
  std::vector<double> ratios;       ///< estate / total demand, each in (0,1)
  std::size_t reps = 1;             ///< instances per ratio
  std::uint64_t seed = 0;
  std::vector<std::string> rules;   ///< rule ids; wprop is not sweepable
  /// Test hook: use these demands for every instance instead of drawing.
  std::optional<std::vector<double>> fixed_demands;
};

/// Mean and quartiles of one fairness index for one (ratio, rule) cell.
struct IndexStats {
  double ratio;
  Rule rule;
  IndexKind index;
  double mean, q1, q3;
};

/// How the classified user cases split at one ratio, over users x reps.
struct CaseFractions {
  double ratio;
  double gm, gg, mm, mg;
};

/// Five-number summary of one satisfaction rate pooled over users and
/// instances, for one (ratio, rule) cell. Whiskers are the plain min/max.
struct SatisfactionBox {
  double ratio;
  Rule rule;
  RateKind rate;
  double min, q1, median, q3, max;
};

struct SweepResult {
  std::vector<IndexStats> index_stats;
  std::vector<CaseFractions> case_fractions;
  std::vector<SatisfactionBox> boxstats;
  std::size_t instance_count = 0;
};

/// Runs the full sweep: for every (ratio, rep) a fresh instance is drawn
/// from the stream keyed by (seed, ratio index, rep index), every configured
/// rule is evaluated, and the per-cell statistics are aggregated. Output is
/// a pure function of the config.
SweepResult run_sweep(const SweepConfig& config);

/// Just the pooled satisfaction boxes of run_sweep (same instances).
std::vector<SatisfactionBox> satisfaction_boxstats(const SweepConfig& config);

/// Quantile with linear interpolation between order statistics (inclusive
/// method); input must be sorted ascending and non-empty.
double quantile(std::span<const double> sorted_values, double q);

}  // namespace fairdiv::sim

#endif  // FAIRDIV_SIM_HPP
