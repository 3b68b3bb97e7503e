// ttp2: build, check and measure TTP-2 schedules from the command line.
//
// Exit codes: 0 ok, 1 usage or input error, 2 construction failure, 3 the
// schedule breaks a rule. TTP2_SEED overrides the default seed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ttp2/ttp2.hpp>

using namespace ttp2;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

enum Exit { ok = 0, usage = 1, construction = 2, invalid = 3 };

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TTP2_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("TTP2_SEED is not a number: ") + env);
    }
  }
  return kDefaultSeed;
}

// Non-metric input still gets a schedule, but the ratio guarantee no longer holds.
Instance warn_if_not_metric(Instance inst) {
  auto m = check_metric(inst);
  if (!m.triangle_ok && m.worst_violation)
    std::cerr << "warning: triangle inequality fails (d(" << m.worst_violation->i << "," << m.worst_violation->k
              << ") exceeds the path through " << m.worst_violation->j << " by " << m.worst_violation->magnitude
              << "); the approximation bound does not apply\n";
  return inst;
}

struct Source {
  std::string path;
  std::string format;  // empty: guess from extension
  std::string kind = "euclidean";
  int n = 0;
  std::optional<std::uint64_t> seed;

  void add_options(CLI::App* app, const char* input_flag, const char* input_help) {
    app->add_option(input_flag, path, input_help);
    app->add_option("--format", format, "instance format: matrix, csv, json");
    app->add_option("--gen", kind, "generate an instance: euclidean, unit, random_metric");
    app->add_option("--n", n, "number of teams for --gen");
    app->add_option("--seed", seed, "seed for --gen");
  }

  bool given() const { return !path.empty() || n != 0; }

  Instance load() const {
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw InputError("cannot open " + path);
      auto fmt = format.empty() ? format_from_path(path) : parse_instance_format(format);
      try {
        return warn_if_not_metric(load_instance(in, fmt));
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what(), e.row(), e.column());
      }
    }
    if (n == 0) throw InputError("give an instance file or --n");
    if (n % 4 != 0) throw InputError("n must be divisible by 4, got " + std::to_string(n));
    return generate_instance(n, parse_instance_kind(kind), seed ? *seed : default_seed());
  }
};

Schedule read_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return load_schedule(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what(), e.row(), e.column());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : detail::split(s, ',')) {
    auto t = detail::trim(part);
    if (t.empty()) continue;
    try {
      out.push_back(std::stoi(t));
    } catch (const std::exception&) {
      throw InputError("not an integer in list: '" + t + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

int cmd_gen(const Source& src, const std::string& out_format, const std::string& output) {
  auto inst = src.load();
  auto text = emit_instance_string(inst, parse_instance_format(out_format));
  if (output.empty()) std::cout << text;
  else write_file(output, text);
  return ok;
}

int cmd_schedule(const Source& src, const std::string& output, bool table, bool days, bool json) {
  if (!src.given()) throw InputError("give an instance file (-i) or --n");
  auto inst = src.load();
  Schedule s;
  try {
    s = build_schedule(inst);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  auto violations = validate_schedule(s.days, s.n);
  if (!violations.ok()) {
    std::cerr << "internal error: constructed schedule is invalid\n" << describe(violations);
    return construction;
  }
  auto report = evaluation_report(s, inst);
  if (!output.empty()) write_file(output, schedule_to_json(s).dump(2) + "\n");
  if (json) {
    auto j = to_json(report);
    j["schedule"] = schedule_to_json(s);
    std::cout << j.dump(2) << '\n';
    return ok;
  }
  if (table) std::cout << level_table(s.levels);
  if (days) write_day_list(s.days, std::cout);
  std::cout << "n: " << s.n << '\n'
            << "flips: " << s.flips << " (budget " << flip_budget_ceil(s.n) << ")\n"
            << "lower bound: " << fixed(report.lower_bound, 2) << '\n'
            << "total travel: " << fixed(report.total_travel, 2) << '\n'
            << "ratio: " << (report.ratio ? fixed(*report.ratio, 6) : std::string("not applicable")) << '\n'
            << "factor: " << fixed(factor_ours(s.n), 6) << '\n';
  return ok;
}

int cmd_validate(const std::string& path, const Source& src, bool json) {
  auto s = read_schedule(path);
  if (src.given()) {
    auto inst = src.load();
    if (inst.n() != s.n) throw InputError("schedule has " + std::to_string(s.n) + " teams, instance has " +
                                          std::to_string(inst.n()));
  }
  ViolationReport r;
  try {
    r = validate_schedule(s.days, s.n);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  if (json) {
    auto list = nlohmann::json::array();
    for (const auto& v : r.violations)
      list.push_back({{"constraint", to_string(v.constraint)}, {"day", v.day}, {"team", v.team}, {"other", v.other},
                      {"detail", v.detail}});
    std::cout << nlohmann::json{{"valid", r.ok()}, {"violations", list}}.dump(2) << '\n';
  } else if (r.ok()) {
    std::cout << "valid: " << s.days.size() << " days, " << s.n << " teams\n";
  } else {
    std::cout << r.violations.size() << " violation(s)\n" << describe(r);
  }
  return r.ok() ? ok : invalid;
}

int cmd_evaluate(const std::string& path, const Source& src, bool json, bool itineraries) {
  if (!src.given()) throw InputError("evaluate needs an instance (-d or --n)");
  auto s = read_schedule(path);
  auto inst = src.load();
  if (inst.n() != s.n)
    throw InputError("schedule has " + std::to_string(s.n) + " teams, instance has " + std::to_string(inst.n()));
  EvaluationReport r;
  try {
    r = evaluation_report(s.days, s.levels.empty() ? 0 : count_flips(s), inst);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  if (json) {
    std::cout << to_json(r, itineraries).dump(2) << '\n';
  } else {
    write_report_header(std::cout);
    write_report_row(r, std::cout);
    if (itineraries)
      for (const auto& it : r.per_team) {
        std::cout << "team " << it.team << ":";
        for (int v : it.venues) std::cout << ' ' << v;
        std::cout << "  travel " << fixed(it.travel, 2) << '\n';
      }
    if (!r.valid) std::cout << r.violations << " violation(s)\n";
  }
  return r.valid ? ok : invalid;
}

struct BenchRow {
  int n;
  std::uint64_t seed;
  EvaluationReport report;
  bool valid;
  double millis;
};

int cmd_bench(const std::string& n_set, int trials, std::optional<std::uint64_t> seed, const std::string& kind,
              bool csv) {
  if (trials < 1) throw InputError("trials must be at least 1");
  auto sizes = parse_int_list(n_set);
  for (int n : sizes)
    if (n < 8 || n > kMaxScheduleTeams || n % 4 != 0)
      throw InputError("n must be divisible by 4 and within [8, " + std::to_string(kMaxScheduleTeams) + "], got " +
                       std::to_string(n));
  auto base = seed ? *seed : default_seed();
  auto instance_kind = parse_instance_kind(kind);

  std::vector<BenchRow> rows;
  for (int n : sizes)
    for (int t = 0; t < trials; ++t) {
      std::uint64_t s = base + static_cast<std::uint64_t>(t);
      auto inst = generate_instance(n, instance_kind, s);
      auto t0 = std::chrono::steady_clock::now();
      auto sched = build_schedule(inst);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      auto rep = evaluation_report(sched, inst);
      rows.push_back({n, s, rep, rep.valid && rep.within_flip_budget(), ms});
    }

  bool all_good = true;
  std::map<int, double> worst;
  if (csv) std::cout << "n,seed,LB,total,ratio,flips,budget,factor_ours,factor_XK,valid,millis\n";
  else
    std::cout << std::setw(4) << "n" << std::setw(8) << "seed" << std::setw(16) << "LB" << std::setw(16) << "total"
              << std::setw(10) << "ratio" << std::setw(7) << "flips" << std::setw(8) << "budget" << std::setw(13)
              << "factor_ours" << std::setw(11) << "factor_XK" << std::setw(7) << "valid" << std::setw(10)
              << "millis\n";
  for (const auto& r : rows) {
    const auto& e = r.report;
    double ratio = e.ratio.value_or(0.0);
    worst[r.n] = std::max(worst[r.n], ratio);
    all_good = all_good && r.valid;
    if (csv) {
      std::cout << r.n << ',' << r.seed << ',' << fixed(e.lower_bound, 4) << ',' << fixed(e.total_travel, 4) << ','
                << fixed(ratio, 6) << ',' << e.flips << ',' << flip_budget_ceil(r.n) << ','
                << fixed(*e.factor_ours, 6) << ',' << fixed(*e.factor_xiao_kou, 6) << ','
                << (r.valid ? "true" : "false") << ',' << fixed(r.millis, 3) << '\n';
    } else {
      std::cout << std::setw(4) << r.n << std::setw(8) << r.seed << std::setw(16) << fixed(e.lower_bound, 2)
                << std::setw(16) << fixed(e.total_travel, 2) << std::setw(10) << fixed(ratio, 6) << std::setw(7)
                << e.flips << std::setw(8) << flip_budget_ceil(r.n) << std::setw(13) << fixed(*e.factor_ours, 6)
                << std::setw(11) << fixed(*e.factor_xiao_kou, 6) << std::setw(7) << (r.valid ? "true" : "false")
                << std::setw(10) << fixed(r.millis, 3) << '\n';
    }
  }
  if (csv) std::cout << "\nn,max_ratio,factor_ours\n";
  else std::cout << "\n" << std::setw(4) << "n" << std::setw(12) << "max ratio" << std::setw(13) << "factor_ours\n";
  for (auto [n, w] : worst) {
    if (csv) std::cout << n << ',' << fixed(w, 6) << ',' << fixed(factor_ours(n), 6) << '\n';
    else std::cout << std::setw(4) << n << std::setw(12) << fixed(w, 6) << std::setw(13) << fixed(factor_ours(n), 6) << '\n';
  }
  return all_good ? ok : invalid;
}

int cmd_factors(int n_max, bool csv) {
  if (n_max < 8) throw InputError("n-max must be at least 8");
  if (csv) std::cout << "n,budget,factor_ours,factor_XK,ours_below\n";
  else
    std::cout << std::setw(4) << "n" << std::setw(9) << "budget" << std::setw(13) << "factor_ours" << std::setw(11)
              << "factor_XK" << "  ours<XK\n";
  for (int n = 8; n <= n_max; n += 4) {
    auto f = flip_budget_exact(n);
    std::string budget = f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
    bool below = factor_ours_exact(n) < factor_xiao_kou_exact(n);
    if (csv)
      std::cout << n << ',' << budget << ',' << fixed(factor_ours(n), 6) << ',' << fixed(factor_xiao_kou(n), 6) << ','
                << (below ? "true" : "false") << '\n';
    else
      std::cout << std::setw(4) << n << std::setw(9) << budget << std::setw(13) << fixed(factor_ours(n), 6)
                << std::setw(11) << fixed(factor_xiao_kou(n), 6) << "  " << (below ? "yes" : "no") << '\n';
  }
  return ok;
}

int cmd_oracle(const Source& src, std::uint64_t node_budget, bool json) {
  if (!src.given()) throw InputError("give an instance file (-i) or --n");
  Instance inst = [&] {
    if (!src.path.empty()) return src.load();
    if (src.n != 4 && src.n != 6) throw InputError("the oracle handles n = 4 or 6");
    return generate_instance(src.n, parse_instance_kind(src.kind), src.seed ? *src.seed : default_seed());
  }();
  OracleResult r;
  try {
    r = inst.n() == 4 ? brute_force_optimal(inst) : best_effort_optimal(inst, node_budget);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  double lb = lower_bound(inst);
  if (json) {
    nlohmann::json j{{"n", inst.n()},   {"optimum", r.optimum},          {"lower_bound", lb},
                     {"nodes", r.nodes}, {"proven_optimal", r.proven_optimal}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "optimum: " << detail::format_double(r.optimum) << (r.proven_optimal ? "" : " (budget hit, best found)")
              << '\n'
              << "lower bound: " << detail::format_double(lb) << '\n'
              << "nodes: " << r.nodes << '\n';
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TTP-2 schedule construction, validation and evaluation"};
  app.require_subcommand(1);
  bool json = false, csv = false;
  app.add_flag("--json", json, "machine-readable JSON output");
  app.add_flag("--csv", csv, "CSV output where tables are printed");

  Source gen_src;
  std::string gen_format = "matrix", gen_output;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", gen_src.kind, "euclidean, unit, random_metric");
  gen->add_option("--n", gen_src.n, "number of teams")->required();
  gen->add_option("--seed", gen_src.seed, "seed");
  gen->add_option("--format", gen_format, "output format: matrix, csv, json");
  gen->add_option("-o,--output", gen_output, "output file (default stdout)");

  Source sched_src;
  std::string sched_output;
  bool table = false, show_days = false;
  auto* sched = app.add_subcommand("schedule", "construct a schedule");
  sched_src.add_options(sched, "-i,--input", "instance file");
  sched->add_option("-o,--output", sched_output, "write the schedule as JSON");
  sched->add_flag("--table", table, "print the level table");
  sched->add_flag("--days", show_days, "print the day list");

  Source val_src;
  std::string val_schedule;
  auto* val = app.add_subcommand("validate", "check a schedule against the rules");
  val->add_option("-i,--input", val_schedule, "schedule file (JSON or day list)")->required();
  val_src.add_options(val, "-d,--instance", "instance file (optional)");

  Source eval_src;
  std::string eval_schedule;
  bool itineraries = false;
  auto* eval = app.add_subcommand("evaluate", "travel, lower bound and ratio of a schedule");
  eval->add_option("-i,--input", eval_schedule, "schedule file (JSON or day list)")->required();
  eval_src.add_options(eval, "-d,--instance", "instance file");
  eval->add_flag("--itineraries", itineraries, "include per-team itineraries");

  std::string n_set = "8,12,16,20,24,28,32", bench_kind = "euclidean";
  int trials = 10;
  std::optional<std::uint64_t> bench_seed;
  auto* bench = app.add_subcommand("bench", "construct and measure many seeded instances");
  bench->add_option("--n-set", n_set, "comma separated team counts");
  bench->add_option("--trials", trials, "instances per n");
  bench->add_option("--seed", bench_seed, "first seed");
  bench->add_option("--kind", bench_kind, "instance kind");

  int n_max = 40;
  auto* factors = app.add_subcommand("factors", "flip budget and approximation factors per n");
  factors->add_option("--n-max", n_max, "largest n");

  Source oracle_src;
  std::uint64_t node_budget = 50'000'000;
  auto* oracle = app.add_subcommand("oracle", "exact optimum for tiny instances");
  oracle_src.add_options(oracle, "-i,--input", "instance file");
  oracle->add_option("--node-budget", node_budget, "search limit for n = 6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_gen(gen_src, gen_format, gen_output);
    if (*sched) return cmd_schedule(sched_src, sched_output, table, show_days, json);
    if (*val) return cmd_validate(val_schedule, val_src, json);
    if (*eval) return cmd_evaluate(eval_schedule, eval_src, json, itineraries);
    if (*bench) return cmd_bench(n_set, trials, bench_seed, bench_kind, csv);
    if (*factors) return cmd_factors(n_max, csv);
    if (*oracle) return cmd_oracle(oracle_src, node_budget, json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what();
    if (e.row()) std::cerr << " (row " << *e.row() << (e.column() ? ", column " + std::to_string(*e.column()) : "") << ")";
    std::cerr << '\n';
    return usage;
  } catch (const ConstructionError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return construction;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return construction;
  }
  return usage;
}
