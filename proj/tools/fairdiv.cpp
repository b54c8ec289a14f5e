// Command-line front end: load division problems, compute allocations and
// satisfaction reports, and run demand sweeps that write CSV summaries.
//
// Exit codes: 0 ok, 2 parse/validation error, 3 not a bankruptcy problem,
// 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/problem.hpp"
#include "fairdiv/rules.hpp"
#include "fairdiv/sim.hpp"

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

struct Cell {
  bool numeric = false;
  std::string text;
};

Cell num_cell(double v, int precision) { return {true, format_number(v, precision)}; }
Cell text_cell(std::string s) { return {false, std::move(s)}; }

struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << (c ? "," : "") << columns[c];
    }
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << (c ? "," : "") << row[c].text;
      }
      os << '\n';
    }
  }

  void write_json(std::ostream& os) const {
    os << "{\n  \"columns\": [";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << (c ? ", " : "") << '"' << columns[c] << '"';
    }
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << (r ? ",\n    " : "\n    ") << '[';
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        os << (c ? ", " : "");
        if (rows[r][c].numeric) {
          os << rows[r][c].text;
        } else {
          os << '"' << rows[r][c].text << '"';
        }
      }
      os << ']';
    }
    os << "\n  ]\n}\n";
  }
};

void emit(const OutputTable& table, const std::string& format, const std::string& out_path) {
  std::ostringstream body;
  if (format == "json") {
    table.write_json(body);
  } else {
    table.write_csv(body);
  }
  if (out_path.empty()) {
    std::cout << body.str();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + out_path + "' for writing");
  f << body.str();
  f.flush();
  if (!f) throw IoError("failed writing '" + out_path + "'");
}

json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  return json::parse(f);  // json::parse_error maps to exit 2
}

std::vector<double> parse_number_array(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw fairdiv::ValidationError("field '" + field + "': expected a non-empty array of numbers");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (const auto& el : j) {
    if (!el.is_number()) {
      throw fairdiv::ValidationError("field '" + field + "': expected a non-empty array of numbers");
    }
    values.push_back(el.get<double>());
  }
  return values;
}

void reject_unknown_fields(const json& j, std::initializer_list<std::string_view> known,
                           const std::string& what) {
  if (!j.is_object()) throw fairdiv::ValidationError(what + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw fairdiv::ValidationError(what + ": unknown field '" + item.key() + "'");
    }
  }
  for (std::string_view field : known) {
    if (!j.contains(field)) {
      throw fairdiv::ValidationError(what + ": missing field '" + std::string(field) + "'");
    }
  }
}

fairdiv::AllocationProblem load_problem(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_fields(j, {"demands", "estate"}, "problem file");
  if (!j["estate"].is_number()) {
    throw fairdiv::ValidationError("field 'estate': expected a number");
  }
  return fairdiv::AllocationProblem(parse_number_array(j["demands"], "demands"),
                                    j["estate"].get<double>());
}

std::vector<double> load_allocation(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_fields(j, {"amounts"}, "allocation file");
  return parse_number_array(j["amounts"], "amounts");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw fairdiv::ValidationError(what + ": '" + s + "' is not a number");
  }
}

std::vector<std::string> expand_rule_ids(const std::string& spec) {
  std::vector<std::string> ids;
  if (spec == "all") {
    for (fairdiv::Rule r : fairdiv::sweep_rules()) ids.emplace_back(fairdiv::to_string(r));
  } else {
    for (const auto& part : split(spec, ',')) {
      if (!part.empty()) ids.push_back(part);
    }
  }
  if (ids.empty()) throw fairdiv::ValidationError("no rules requested");
  return ids;
}

std::vector<double> parse_ratio_spec(const std::string& spec) {
  std::vector<double> ratios;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw fairdiv::ValidationError("ratios: expected start:stop:step or a comma list");
    }
    const double start = parse_double(parts[0], "ratios");
    const double stop = parse_double(parts[1], "ratios");
    const double step = parse_double(parts[2], "ratios");
    if (step <= 0.0 || stop < start) {
      throw fairdiv::ValidationError("ratios: need step > 0 and stop >= start");
    }
    for (int k = 0;; ++k) {
      const double r = start + k * step;
      if (r > stop + step * 1e-9) break;
      ratios.push_back(r);
    }
  } else {
    for (const auto& part : split(spec, ',')) {
      if (!part.empty()) ratios.push_back(parse_double(part, "ratios"));
    }
  }
  if (ratios.empty()) throw fairdiv::ValidationError("ratios: empty list");
  return ratios;
}

fairdiv::sim::DemandDistribution parse_distribution(const std::string& spec) {
  const auto head = split(spec, ':');
  if (head.size() == 2) {
    const auto params = split(head[1], ',');
    if (head[0] == "uniform" && params.size() == 2) {
      return fairdiv::sim::DemandDistribution::uniform(parse_double(params[0], "dist"),
                                                       parse_double(params[1], "dist"));
    }
    if (head[0] == "weibull" && params.size() == 2) {
      return fairdiv::sim::DemandDistribution::weibull(parse_double(params[0], "dist"),
                                                       parse_double(params[1], "dist"));
    }
  }
  throw fairdiv::ValidationError(
      "dist: expected uniform:<lo>,<hi> or weibull:<shape>,<scale>, got '" + spec + "'");
}

struct AllocateOptions {
  std::string problem_path;
  std::string rules = "all";
  std::string weights;
  std::string format = "csv";
  std::string out_path;
  int precision = 6;
};

int run_allocate(const AllocateOptions& opt) {
  const auto problem = load_problem(opt.problem_path);
  auto ids = expand_rule_ids(opt.rules);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::optional<fairdiv::WeightVector> weights;
  if (!opt.weights.empty()) {
    std::vector<double> w;
    for (const auto& part : split(opt.weights, ',')) w.push_back(parse_double(part, "weights"));
    weights.emplace(std::move(w));
  }

  OutputTable table;
  table.columns = {"rule", "user", "amount", "note"};
  for (const auto& id : ids) {
    const auto rule = fairdiv::parse_rule(id);
    if (!rule) throw fairdiv::ValidationError("unknown rule id '" + id + "'");
    fairdiv::Allocation x = [&] {
      if (*rule != fairdiv::Rule::wprop) return fairdiv::apply_rule(*rule, problem);
      if (!weights) {
        throw fairdiv::ValidationError("rule 'wprop' requires --weights");
      }
      return fairdiv::weighted_proportional(problem, *weights);
    }();
    const std::string note = *rule == fairdiv::Rule::nucleolus ? "talmud" : "";
    for (std::size_t i = 0; i < x.size(); ++i) {
      table.rows.push_back({text_cell(id), num_cell(static_cast<double>(i + 1), 17),
                            num_cell(x[i], opt.precision), text_cell(note)});
    }
  }
  emit(table, opt.format, opt.out_path);
  return 0;
}

struct EvaluateOptions {
  std::string problem_path;
  std::string allocation_path;
  std::string format = "csv";
  std::string out_path;
  int precision = 6;
};

int run_evaluate(const EvaluateOptions& opt) {
  const auto problem = load_problem(opt.problem_path);
  const auto amounts = load_allocation(opt.allocation_path);
  const auto report = fairdiv::satisfaction_report(problem, amounts);

  OutputTable table;
  table.columns = {"user", "case", "dfs", "ps", "jain", "player_fairness"};
  for (std::size_t i = 0; i < problem.user_count(); ++i) {
    table.rows.push_back({num_cell(static_cast<double>(i + 1), 17),
                          text_cell(std::string(to_string(fairdiv::classify_user(problem, i)))),
                          num_cell(report.dfs[i], opt.precision),
                          num_cell(report.ps[i], opt.precision),
                          num_cell(report.jain, opt.precision),
                          num_cell(report.player_fairness, opt.precision)});
  }
  emit(table, opt.format, opt.out_path);
  return 0;
}

struct SimulateOptions {
  std::string dist = "uniform:0,100";
  std::size_t users = 3;
  std::string ratios = "0.05:0.95:0.05";
  std::size_t reps = 300;
  std::uint64_t seed = 42;
  bool seed_given = false;
  std::string rules = "all";
  std::string out_prefix;
  bool boxstats = false;
  int precision = 6;
};

int run_simulate(const SimulateOptions& opt) {
  fairdiv::sim::SweepConfig config;
  config.distribution = parse_distribution(opt.dist);
  config.users = opt.users;
  config.ratios = parse_ratio_spec(opt.ratios);
  config.reps = opt.reps;
  config.rules = expand_rule_ids(opt.rules);

  config.seed = opt.seed;
  if (!opt.seed_given) {
    if (const char* env = std::getenv("FAIRDIV_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        throw fairdiv::ValidationError("FAIRDIV_SEED: '" + std::string(env) +
                                       "' is not an unsigned integer");
      }
      config.seed = v;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const fairdiv::sim::SweepResult result = fairdiv::sim::run_sweep(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto sorted_index_stats = result.index_stats;
  std::sort(sorted_index_stats.begin(), sorted_index_stats.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.ratio, to_string(a.rule), fairdiv::sim::to_string(a.index)) <
           std::tuple(b.ratio, to_string(b.rule), fairdiv::sim::to_string(b.index));
  });
  OutputTable sweep;
  sweep.columns = {"ratio", "rule", "index", "mean", "q1", "q3"};
  for (const auto& s : sorted_index_stats) {
    sweep.rows.push_back({num_cell(s.ratio, opt.precision),
                          text_cell(std::string(to_string(s.rule))),
                          text_cell(std::string(fairdiv::sim::to_string(s.index))),
                          num_cell(s.mean, opt.precision), num_cell(s.q1, opt.precision),
                          num_cell(s.q3, opt.precision)});
  }
  emit(sweep, "csv", opt.out_prefix + "_sweep.csv");

  auto sorted_cases = result.case_fractions;
  std::sort(sorted_cases.begin(), sorted_cases.end(),
            [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
  OutputTable cases;
  cases.columns = {"ratio", "frac_Gm", "frac_Gg", "frac_Mm", "frac_Mg"};
  for (const auto& c : sorted_cases) {
    cases.rows.push_back({num_cell(c.ratio, opt.precision), num_cell(c.gm, opt.precision),
                          num_cell(c.gg, opt.precision), num_cell(c.mm, opt.precision),
                          num_cell(c.mg, opt.precision)});
  }
  emit(cases, "csv", opt.out_prefix + "_cases.csv");

  std::string box_note;
  if (opt.boxstats) {
    auto sorted_box = result.boxstats;
    std::sort(sorted_box.begin(), sorted_box.end(), [](const auto& a, const auto& b) {
      return std::tuple(a.ratio, to_string(a.rule), fairdiv::sim::to_string(a.rate)) <
             std::tuple(b.ratio, to_string(b.rule), fairdiv::sim::to_string(b.rate));
    });
    OutputTable box;
    box.columns = {"ratio", "rule", "rate", "min", "q1", "median", "q3", "max"};
    for (const auto& s : sorted_box) {
      box.rows.push_back({num_cell(s.ratio, opt.precision),
                          text_cell(std::string(to_string(s.rule))),
                          text_cell(std::string(fairdiv::sim::to_string(s.rate))),
                          num_cell(s.min, opt.precision), num_cell(s.q1, opt.precision),
                          num_cell(s.median, opt.precision), num_cell(s.q3, opt.precision),
                          num_cell(s.max, opt.precision)});
    }
    emit(box, "csv", opt.out_prefix + "_boxstats.csv");
    box_note = ", " + opt.out_prefix + "_boxstats.csv";
  }

  std::cout << "simulate: " << result.instance_count << " instances, "
            << config.rules.size() << " rules, " << format_number(elapsed, 3) << " s; wrote "
            << opt.out_prefix << "_sweep.csv, " << opt.out_prefix << "_cases.csv" << box_note
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair division of a scarce resource: allocation rules, satisfaction rates, "
               "fairness indices and sweep simulations"};
  app.require_subcommand(1);

  AllocateOptions alloc_opt;
  auto* alloc_cmd = app.add_subcommand("allocate", "Compute allocations for a problem file");
  alloc_cmd->add_option("--problem", alloc_opt.problem_path, "Problem JSON file")->required();
  alloc_cmd->add_option("--rules", alloc_opt.rules, "Comma list of rule ids, or 'all'");
  alloc_cmd->add_option("--weights", alloc_opt.weights, "Comma list of weights for wprop");
  alloc_cmd->add_option("--format", alloc_opt.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  alloc_cmd->add_option("-o,--out", alloc_opt.out_path, "Output file (default stdout)");
  alloc_cmd->add_option("--precision", alloc_opt.precision, "Significant digits (default 6)")
      ->check(CLI::Range(1, 17));

  EvaluateOptions eval_opt;
  auto* eval_cmd = app.add_subcommand("evaluate", "Satisfaction report for an allocation file");
  eval_cmd->add_option("--problem", eval_opt.problem_path, "Problem JSON file")->required();
  eval_cmd->add_option("--allocation", eval_opt.allocation_path, "Allocation JSON file")
      ->required();
  eval_cmd->add_option("--format", eval_opt.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  eval_cmd->add_option("-o,--out", eval_opt.out_path, "Output file (default stdout)");
  eval_cmd->add_option("--precision", eval_opt.precision, "Significant digits (default 6)")
      ->check(CLI::Range(1, 17));

  SimulateOptions sim_opt;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo sweep over estate ratios");
  sim_cmd->add_option("--dist", sim_opt.dist, "uniform:<lo>,<hi> or weibull:<shape>,<scale>");
  sim_cmd->add_option("--users", sim_opt.users, "Number of users (default 3)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--ratios", sim_opt.ratios, "start:stop:step or comma list, in (0,1)");
  sim_cmd->add_option("--reps", sim_opt.reps, "Instances per ratio (default 300)")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = sim_cmd->add_option("--seed", sim_opt.seed,
                                       "RNG seed (FAIRDIV_SEED env applies when absent)");
  sim_cmd->add_option("--rules", sim_opt.rules, "Comma list of rule ids, or 'all'");
  sim_cmd->add_option("--out", sim_opt.out_prefix, "Output file prefix")->required();
  sim_cmd->add_flag("--boxstats", sim_opt.boxstats, "Also write pooled satisfaction boxstats");
  sim_cmd->add_option("--precision", sim_opt.precision, "Significant digits (default 6)")
      ->check(CLI::Range(1, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  sim_opt.seed_given = seed_opt->count() > 0;

  try {
    if (alloc_cmd->parsed()) return run_allocate(alloc_opt);
    if (eval_cmd->parsed()) return run_evaluate(eval_opt);
    return run_simulate(sim_opt);
  } catch (const IoError& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return 4;
  } catch (const fairdiv::NotBankruptcyError& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fairdiv: " << e.what() << "\n";
    return 2;
  }
}
