#include "fairdiv/sim.hpp"

#include <algorithm>
#include <cmath>

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv::sim {

DemandDistribution DemandDistribution::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || lo < 0.0 || hi < lo || hi <= 0.0) {
    throw ValidationError("uniform distribution: need 0 <= lo <= hi with hi > 0");
  }
  return DemandDistribution{Kind::uniform, lo, hi};
}

DemandDistribution DemandDistribution::weibull(double shape, double scale) {
  if (!(std::isfinite(shape) && std::isfinite(scale)) || shape <= 0.0 || scale <= 0.0) {
    throw ValidationError("weibull distribution: need shape > 0 and scale > 0");
  }
  return DemandDistribution{Kind::weibull, shape, scale};
}

std::vector<double> generate_demands(const DemandDistribution& dist, std::size_t n,
                                     SplitMix64& stream) {
  std::vector<double> demands(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    do {
      const double u = stream.next_unit();
      if (dist.kind == DemandDistribution::Kind::uniform) {
        d = dist.a + (dist.b - dist.a) * u;
      } else {
        d = dist.b * std::pow(-std::log1p(-u), 1.0 / dist.a);
      }
    } while (d == 0.0);
    demands[i] = d;
  }
  return demands;
}

AllocationProblem make_instance(std::span<const double> demands, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ValidationError("estate ratio must lie in (0, 1)");
  }
  double total = 0.0;
  for (double c : demands) total += c;
  return AllocationProblem(std::vector<double>(demands.begin(), demands.end()), ratio * total);
}

std::string_view to_string(IndexKind k) {
  return k == IndexKind::jain ? "jain" : "player_fairness";
}

std::string_view to_string(RateKind k) { return k == RateKind::dfs ? "dfs" : "ps"; }

double quantile(std::span<const double> sorted_values, double q) {
  if (sorted_values.empty()) throw ValidationError("quantile of an empty sample");
  q = std::clamp(q, 0.0, 1.0);
  const double h = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted_values.size()) return sorted_values.back();
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

namespace {

std::vector<Rule> parse_rules(const std::vector<std::string>& ids) {
  if (ids.empty()) throw ValidationError("sweep needs at least one rule");
  std::vector<Rule> rules;
  rules.reserve(ids.size());
  for (const auto& id : ids) {
    const auto rule = parse_rule(id);
    if (!rule) throw ValidationError("unknown rule id '" + id + "'");
    if (*rule == Rule::wprop) {
      throw ValidationError("rule 'wprop' requires per-user weights and cannot be swept");
    }
    rules.push_back(*rule);
  }
  return rules;
}

struct CellAccumulator {
  std::vector<double> jain;
  std::vector<double> pf;
  std::vector<double> dfs_pool;
  std::vector<double> ps_pool;
};

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  if (config.users == 0) throw ValidationError("sweep needs at least one user");
  if (config.reps == 0) throw ValidationError("sweep needs at least one rep per ratio");
  if (config.ratios.empty()) throw ValidationError("sweep needs at least one ratio");
  for (double r : config.ratios) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("estate ratio must lie in (0, 1)");
  }
  if (config.fixed_demands && config.fixed_demands->size() != config.users) {
    throw ValidationError("fixed demands length does not match user count");
  }
  const std::vector<Rule> rules = parse_rules(config.rules);

  SweepResult result;
  result.instance_count = config.ratios.size() * config.reps;

  for (std::size_t ri = 0; ri < config.ratios.size(); ++ri) {
    const double ratio = config.ratios[ri];
    std::vector<CellAccumulator> cells(rules.size());
    for (auto& cell : cells) {
      cell.jain.reserve(config.reps);
      cell.pf.reserve(config.reps);
      cell.dfs_pool.reserve(config.reps * config.users);
      cell.ps_pool.reserve(config.reps * config.users);
    }
    std::size_t case_counts[4] = {0, 0, 0, 0};

    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      SplitMix64 stream = SplitMix64::keyed(
          config.seed, {static_cast<std::uint64_t>(ri), static_cast<std::uint64_t>(rep)});
      const std::vector<double> demands =
          config.fixed_demands ? *config.fixed_demands
                               : generate_demands(config.distribution, config.users, stream);
      const AllocationProblem problem = make_instance(demands, ratio);

      for (std::size_t i = 0; i < config.users; ++i) {
        case_counts[static_cast<std::size_t>(classify_user(problem, i))]++;
      }

      for (std::size_t k = 0; k < rules.size(); ++k) {
        const Allocation x = apply_rule(rules[k], problem);
        const auto dfs_rates = dfs(problem, x.amounts());
        const auto ps_rates = ps(problem, x.amounts());
        cells[k].jain.push_back(jain_index(problem, x.amounts()));
        cells[k].pf.push_back(player_fairness_index(problem, x.amounts()));
        cells[k].dfs_pool.insert(cells[k].dfs_pool.end(), dfs_rates.begin(), dfs_rates.end());
        cells[k].ps_pool.insert(cells[k].ps_pool.end(), ps_rates.begin(), ps_rates.end());
      }
    }

    for (std::size_t k = 0; k < rules.size(); ++k) {
      auto& cell = cells[k];
      std::sort(cell.jain.begin(), cell.jain.end());
      std::sort(cell.pf.begin(), cell.pf.end());
      result.index_stats.push_back({ratio, rules[k], IndexKind::jain, mean_of(cell.jain),
                                    quantile(cell.jain, 0.25), quantile(cell.jain, 0.75)});
      result.index_stats.push_back({ratio, rules[k], IndexKind::player_fairness,
                                    mean_of(cell.pf), quantile(cell.pf, 0.25),
                                    quantile(cell.pf, 0.75)});

      std::sort(cell.dfs_pool.begin(), cell.dfs_pool.end());
      std::sort(cell.ps_pool.begin(), cell.ps_pool.end());
      for (RateKind rate : {RateKind::dfs, RateKind::ps}) {
        const auto& pool = rate == RateKind::dfs ? cell.dfs_pool : cell.ps_pool;
        result.boxstats.push_back({ratio, rules[k], rate, pool.front(), quantile(pool, 0.25),
                                   quantile(pool, 0.5), quantile(pool, 0.75), pool.back()});
      }
    }

    const auto classified = static_cast<double>(config.users * config.reps);
    result.case_fractions.push_back(
        {ratio, static_cast<double>(case_counts[static_cast<std::size_t>(UserCase::Gm)]) / classified,
         static_cast<double>(case_counts[static_cast<std::size_t>(UserCase::Gg)]) / classified,
         static_cast<double>(case_counts[static_cast<std::size_t>(UserCase::Mm)]) / classified,
         static_cast<double>(case_counts[static_cast<std::size_t>(UserCase::Mg)]) / classified});
  }
  return result;
}

std::vector<SatisfactionBox> satisfaction_boxstats(const SweepConfig& config) {
  return run_sweep(config).boxstats;
}

}  // namespace fairdiv::sim
