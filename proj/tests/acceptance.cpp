// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fairdiv/fairness.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/problem.hpp"
#include "fairdiv/random.hpp"
#include "fairdiv/rules.hpp"
#include "fairdiv/sim.hpp"

using namespace fairdiv;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }

  void expect_near(double actual, double wanted, double tol, const std::string& what) {
    expect(std::abs(actual - wanted) <= tol,
           what + ": got " + std::to_string(actual) + ", want " + std::to_string(wanted) +
               " within " + std::to_string(tol));
  }
};

const AllocationProblem kRunning({3.0, 13.0, 2.0}, 10.0);

sim::DemandDistribution pick_distribution(std::uint64_t which) {
  if (which % 2 == 0) return sim::DemandDistribution::uniform(0.0, 100.0);
  return sim::DemandDistribution::weibull(1.4, 40.0);
}

AllocationProblem random_problem(SplitMix64& g, std::size_t n) {
  const auto dist = pick_distribution(g.next_u64());
  const auto demands = sim::generate_demands(dist, n, g);
  return sim::make_instance(demands, 0.05 + 0.9 * g.next_unit());
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// --- criteria -------------------------------------------------------------

void criterion_table_golden(Check& c) {
  const auto start = std::chrono::steady_clock::now();

  const auto prop = proportional(kRunning);
  c.expect_near(prop[0], 1.67, 0.01, "prop[0]");
  c.expect_near(prop[1], 7.22, 0.01, "prop[1]");
  c.expect_near(prop[2], 1.11, 0.01, "prop[2]");

  const auto maxmin = mmf(kRunning);
  c.expect_near(maxmin[0], 3.0, 0.01, "mmf[0]");
  c.expect_near(maxmin[1], 5.0, 0.01, "mmf[1]");
  c.expect_near(maxmin[2], 2.0, 0.01, "mmf[2]");

  const auto sh = shapley(kRunning);
  c.expect_near(sh[0], 1.5, 0.01, "shapley[0]");
  c.expect_near(sh[1], 7.5, 0.01, "shapley[1]");
  c.expect_near(sh[2], 1.0, 0.01, "shapley[2]");

  const auto losses = cel(kRunning);
  c.expect_near(losses[0], 0.0, 0.01, "cel[0]");
  c.expect_near(losses[1], 10.0, 0.01, "cel[1]");
  c.expect_near(losses[2], 0.0, 0.01, "cel[2]");

  c.expect_near(jain_index(kRunning, prop.amounts()), 1.0, 0.001, "jain(prop)");
  c.expect_near(jain_index(kRunning, maxmin.amounts()), 0.882, 0.001, "jain(mmf)");
  c.expect_near(jain_index(kRunning, sh.amounts()), 0.995, 0.001, "jain(shapley)");
  c.expect_near(jain_index(kRunning, losses.amounts()), 0.333, 0.001, "jain(cel)");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s exceeds 1s");
}

void criterion_nucleolus_erratum(Check& c) {
  const auto talmud = nucleolus(kRunning);
  c.expect_near(talmud[0], 1.5, 1e-9, "talmud[0]");
  c.expect_near(talmud[1], 7.5, 1e-9, "talmud[1]");
  c.expect_near(talmud[2], 1.0, 1e-9, "talmud[2]");

  const auto confirmed =
      oracle::lexicographic_dominance_check(kRunning, talmud.amounts(), 10000, 7);
  c.expect(confirmed.dominant, "the talmud division was beaten by a sampled imputation");

  // theta vectors after the zero excess of the grand coalition
  const std::vector<double> talmud_theta{-1.0, -1.0, -1.5, -1.5, -2.5, -2.5};
  const std::vector<double> uneven_theta{-1.0, -1.0, -1.0, -2.0, -2.0, -3.0};
  c.expect(confirmed.candidate_excesses.values.size() == 7, "theta must list 2^n - 1 excesses");
  c.expect_near(confirmed.candidate_excesses.values[0], 0.0, 1e-9, "theta(talmud)[N]");
  for (std::size_t k = 0; k < talmud_theta.size(); ++k) {
    c.expect_near(confirmed.candidate_excesses.values[k + 1], talmud_theta[k], 1e-9,
                  "theta(talmud)[" + std::to_string(k + 1) + "]");
  }

  const std::vector<double> uneven{1.0, 8.0, 1.0};
  const auto refuted = oracle::lexicographic_dominance_check(kRunning, uneven, 10000, 7);
  c.expect(!refuted.dominant, "(1,8,1) must be refuted");
  c.expect(!refuted.witness.empty(), "refutation must carry a witness");
  for (std::size_t k = 0; k < uneven_theta.size(); ++k) {
    c.expect_near(refuted.candidate_excesses.values[k + 1], uneven_theta[k], 1e-9,
                  "theta(1,8,1)[" + std::to_string(k + 1) + "]");
  }
  c.expect(oracle::lex_compare(refuted.witness_excesses, refuted.candidate_excesses) < 0,
           "witness theta must lexicographically dominate");
  const auto talmud_excesses = oracle::excess_vector(kRunning, talmud.amounts());
  c.expect(oracle::lex_compare(talmud_excesses, refuted.candidate_excesses) < 0,
           "theta(talmud) must lexicographically dominate theta(1,8,1)");
}

void criterion_satisfaction_example(Check& c) {
  const auto prop = proportional(kRunning);
  c.expect_near(ps(kRunning, prop.amounts())[1], 0.444, 0.001, "ps2(prop)");
  c.expect_near(dfs(kRunning, prop.amounts())[1], 0.555, 0.001, "dfs2(prop)");
  const auto maxmin = mmf(kRunning);
  c.expect_near(ps(kRunning, maxmin.amounts())[1], 0.0, 0.001, "ps2(mmf)");
  c.expect_near(dfs(kRunning, maxmin.amounts())[1], 0.3846, 0.001, "dfs2(mmf)");
}

void criterion_two_phase_equivalence(Check& c) {
  const auto start = std::chrono::steady_clock::now();

  const auto steps = mood_value_steps(kRunning);
  c.expect_near(steps.min_rights[0], 0.0, 1e-9, "step1[0]");
  c.expect_near(steps.min_rights[1], 5.0, 1e-9, "step1[1]");
  c.expect_near(steps.min_rights[2], 0.0, 1e-9, "step1[2]");
  c.expect_near(steps.reduced_estate, 5.0, 1e-9, "step2 estate");
  c.expect_near(steps.reduced_demands[0], 3.0, 1e-9, "step2 demand[0]");
  c.expect_near(steps.reduced_demands[1], 5.0, 1e-9, "step2 demand[1]");
  c.expect_near(steps.reduced_demands[2], 2.0, 1e-9, "step2 demand[2]");
  c.expect_near(steps.reduced_allocation[0], 1.5, 1e-9, "step3[0]");
  c.expect_near(steps.reduced_allocation[1], 2.5, 1e-9, "step3[1]");
  c.expect_near(steps.reduced_allocation[2], 1.0, 1e-9, "step3[2]");
  c.expect_near(steps.amounts[0], 1.5, 1e-9, "step4[0]");
  c.expect_near(steps.amounts[1], 7.5, 1e-9, "step4[1]");
  c.expect_near(steps.amounts[2], 1.0, 1e-9, "step4[2]");

  SplitMix64 g(40404);
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(iter % 9);
    const auto dist = pick_distribution(static_cast<std::uint64_t>(iter));
    auto demands = sim::generate_demands(dist, n, g);
    const auto p = sim::make_instance(demands, 0.05 + 0.9 * g.next_unit());
    const auto direct = mood_value(p);
    const auto staged = mood_value_4step(p);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(direct[i] - staged[i]) > 1e-9) {
        c.expect(false, "routes disagree on instance " + std::to_string(iter));
        return;
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s exceeds 30s");
}

void criterion_identities(Check& c) {
  SplitMix64 g(50505);
  const auto rules = sweep_rules();
  for (int iter = 0; iter < 10000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(9));
    const auto p = random_problem(g, n);
    const Rule rule = rules[iter % rules.size()];
    const auto x = apply_rule(rule, p);
    const auto rates = ps(p, x.amounts());

    for (std::size_t i = 0; i < n; ++i) {
      const double d = propensity_to_disrupt(p, x.amounts(), Coalition::of({i}));
      if (std::isfinite(d)) {
        c.expect(std::abs(rates[i] - 1.0 / (d + 1.0)) <= 1e-9,
                 "satisfaction/propensity identity failed at instance " + std::to_string(iter));
      }
      c.expect(std::abs(ps_by_case(p, x.amounts(), i) - rates[i]) <= 1e-9,
               "case formula mismatch at instance " + std::to_string(iter));
    }

    const double k = std::pow(10.0, -3.0 + 6.0 * g.next_unit());
    std::vector<double> scaled_demands(p.demands().begin(), p.demands().end());
    for (auto& v : scaled_demands) v *= k;
    std::vector<double> scaled_amounts(x.amounts().begin(), x.amounts().end());
    for (auto& v : scaled_amounts) v *= k;
    const AllocationProblem scaled(scaled_demands, p.estate() * k);
    c.expect(std::abs(jain_index(p, x.amounts()) - jain_index(scaled, scaled_amounts)) <= 1e-9,
             "jain scale invariance failed at instance " + std::to_string(iter));
    c.expect(std::abs(player_fairness_index(p, x.amounts()) -
                      player_fairness_index(scaled, scaled_amounts)) <= 1e-9,
             "pf scale invariance failed at instance " + std::to_string(iter));

    c.expect(std::abs(player_fairness_index(p, mood_value(p).amounts()) - 1.0) <= 1e-9,
             "pf(mood) != 1 at instance " + std::to_string(iter));
  }
}

void criterion_core_properties(Check& c) {
  SplitMix64 g(60606);

  for (int iter = 0; iter < 10000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(9));
    const auto p = random_problem(g, n);
    c.expect(oracle::core_membership(p, mood_value(p).amounts()),
             "mood value left the core at instance " + std::to_string(iter));
  }

  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(8));
    const auto base = random_problem(g, n);
    std::vector<double> demands(base.demands().begin(), base.demands().end());
    demands.push_back(demands[g.next_below(n)]);  // forced equal pair
    const AllocationProblem p(demands, base.estate());
    const auto x = mood_value(p);
    for (std::size_t i = 0; i < demands.size() && c.ok; ++i) {
      for (std::size_t j = i + 1; j < demands.size(); ++j) {
        if (demands[i] == demands[j]) {
          c.expect(std::abs(x[i] - x[j]) <= 1e-12,
                   "equal treatment of equals failed at instance " + std::to_string(iter));
        }
        if (demands[i] >= p.estate() && demands[j] >= p.estate()) {
          c.expect(std::abs(x[i] - x[j]) <= 1e-12,
                   "equal treatment of greedy claimants failed at instance " +
                       std::to_string(iter));
        }
      }
    }
  }

  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(8));
    const auto p = random_problem(g, n);
    const std::size_t i = g.next_below(n);
    if (p.demands()[i] <= 0.0) continue;
    const auto before = mood_value(p);
    const double cut = p.demands()[i] * (0.05 + 0.9 * g.next_unit());
    std::vector<double> demands(p.demands().begin(), p.demands().end());
    demands[i] -= cut;
    demands.push_back(cut);
    const auto after = mood_value(AllocationProblem(demands, p.estate()));
    c.expect(after[i] + after[n] <= before[i] + 1e-9,
             "split non-profitability fails (core membership and equal treatment passed): "
             "a demand of " +
                 std::to_string(p.demands()[i]) + " with estate " +
                 std::to_string(p.estate()) + " split into " + std::to_string(demands[i]) +
                 " + " + std::to_string(cut) + " collects " +
                 std::to_string(after[i] + after[n]) + " instead of " +
                 std::to_string(before[i]) +
                 "; a demand above the estate escapes its maximal-right cap by splitting, so "
                 "the property cannot hold for greedy claimants");
  }
}

void criterion_regime_limits(Check& c) {
  SplitMix64 g(70707);

  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(9));
    const double estate = 1.0 + 99.0 * g.next_unit();
    std::vector<double> demands(n);
    for (auto& d : demands) d = estate * (1.0 + g.next_unit());
    const AllocationProblem p(demands, estate);  // every user demands >= E
    const double share = estate / static_cast<double>(n);
    const auto mood = mood_value(p);
    const auto maxmin = mmf(p);
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(mood[i] - share) <= 1e-9,
               "all-greedy mood != equal split at instance " + std::to_string(iter));
      c.expect(std::abs(maxmin[i] - share) <= 1e-9,
               "all-greedy mmf != equal split at instance " + std::to_string(iter));
    }
  }

  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::size_t n = 3 + static_cast<std::size_t>(g.next_below(8));
    std::vector<double> demands(n);
    double total = 0.0;
    double largest = 0.0;
    for (auto& d : demands) {
      d = 1.0 + 99.0 * g.next_unit();
      total += d;
      largest = std::max(largest, d);
    }
    if (2.0 * largest >= total) continue;  // needs max(c) < E < total - max(c)
    const double estate = largest + (0.01 + 0.98 * g.next_unit()) * (total - 2.0 * largest);
    const AllocationProblem p(demands, estate);  // every user is in case Gm
    const auto mood = mood_value(p);
    const auto prop = proportional(p);
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(mood[i] - prop[i]) <= 1e-9,
               "all-moderate mood != proportional at instance " + std::to_string(iter));
    }
  }
}

void criterion_simulation_trends(Check& c) {
  const auto start = std::chrono::steady_clock::now();

  // (a) user-case regimes, 3 users, uniform demands
  sim::SweepConfig cases_config;
  cases_config.distribution = sim::DemandDistribution::uniform(0.0, 100.0);
  cases_config.users = 3;
  for (int k = 1; k <= 19; ++k) cases_config.ratios.push_back(0.05 * k);
  cases_config.reps = 300;
  cases_config.seed = 42;
  cases_config.rules = {"prop"};
  const auto cases_result = sim::run_sweep(cases_config);
  const auto& lowest = cases_result.case_fractions.front();
  c.expect(lowest.gg > 0.9, "frac_Gg at ratio 0.05 is " + std::to_string(lowest.gg));
  const auto& highest = cases_result.case_fractions.back();
  c.expect(highest.mm > highest.gm && highest.mm > highest.gg && highest.mm > highest.mg,
           "frac_Mm is not the modal case at ratio 0.95");

  // (b) distance of the mood value to mmf vs proportional, 4 users
  const std::vector<double> extremes{0.05, 0.95};
  double mean_to_mmf[2] = {0.0, 0.0};
  double mean_to_prop[2] = {0.0, 0.0};
  for (std::size_t ri = 0; ri < extremes.size(); ++ri) {
    for (std::size_t rep = 0; rep < 300; ++rep) {
      SplitMix64 stream = SplitMix64::keyed(42, {ri, rep});
      const auto demands =
          sim::generate_demands(sim::DemandDistribution::uniform(0.0, 100.0), 4, stream);
      const auto p = sim::make_instance(demands, extremes[ri]);
      const auto mood = mood_value(p);
      mean_to_mmf[ri] += l1_distance(mood.amounts(), mmf(p).amounts()) / 300.0;
      mean_to_prop[ri] += l1_distance(mood.amounts(), proportional(p).amounts()) / 300.0;
    }
  }
  c.expect(mean_to_mmf[0] < mean_to_prop[0],
           "at ratio 0.05 the mood value should sit closer to mmf");
  c.expect(mean_to_prop[1] < mean_to_mmf[1],
           "at ratio 0.95 the mood value should sit closer to proportional");

  // (c) player fairness of the proportional rule, 5 users, both demand models
  for (const auto& dist : {sim::DemandDistribution::uniform(0.0, 100.0),
                           sim::DemandDistribution::weibull(1.4, 40.0)}) {
    sim::SweepConfig pf_config = cases_config;
    pf_config.users = 5;
    pf_config.distribution = dist;
    const auto pf_result = sim::run_sweep(pf_config);
    double pf_at_low = 0.0;
    std::vector<double> pf_high;
    for (const auto& s : pf_result.index_stats) {
      if (s.index != sim::IndexKind::player_fairness) continue;
      if (s.ratio == 0.05) pf_at_low = s.mean;
      if (s.ratio >= 0.4) pf_high.push_back(s.mean);
    }
    c.expect(!pf_high.empty(), "no sweep cells at ratio >= 0.4");
    double pf_high_mean = 0.0;
    for (double v : pf_high) {
      c.expect(v > pf_at_low, "pf(prop) at a high ratio fell below its value at 0.05");
      pf_high_mean += v / static_cast<double>(pf_high.size());
    }
    c.expect(pf_high_mean > 0.99,
             "mean pf(prop) over ratios >= 0.4 is " + std::to_string(pf_high_mean));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(elapsed < 120.0, "runtime " + std::to_string(elapsed) + "s exceeds 2min");
}

void criterion_oracle_agreement(Check& c) {
  SplitMix64 g(80808);
  for (int iter = 0; iter < 300 && c.ok; ++iter) {
    const std::size_t n = 1 + static_cast<std::size_t>(g.next_below(6));
    const auto p = random_problem(g, n);
    const auto exact = shapley(p);
    const auto averaged = oracle::shapley_by_permutations(p);
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(exact[i] - averaged[i]) <= 1e-9,
               "shapley enumeration and permutation oracle disagree at instance " +
                   std::to_string(iter));
    }
  }

  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(g.next_below(9));
    const auto p = random_problem(g, n);
    const auto steps = mood_value_steps(p);
    const double m = rights_profile(p).mood;
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(steps.reduced_allocation[i] - m * steps.reduced_demands[i]) <= 1e-9,
               "reduced water-filling != mood * reduced demand at instance " +
                   std::to_string(iter));
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "comparison-table golden values", criterion_table_golden},
      {2, "nucleolus talmud/lexicographic agreement", criterion_nucleolus_erratum},
      {3, "satisfaction-rate worked example", criterion_satisfaction_example},
      {4, "two-phase mood value equivalence", criterion_two_phase_equivalence},
      {5, "satisfaction identities", criterion_identities},
      {6, "core membership and strategic properties", criterion_core_properties},
      {7, "regime limits (all-greedy, all-moderate)", criterion_regime_limits},
      {8, "simulation trends", criterion_simulation_trends},
      {9, "oracle agreement", criterion_oracle_agreement},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    criterion.run(check);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %d  %-44s (%.2fs)\n", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, secs);
    if (!check.ok) {
      std::printf("      -> %s\n", check.detail.c_str());
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
