#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "instance.hpp"
#include "matching.hpp"
#include "scheduler.hpp"

namespace ttp2 {

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kBruteForceMatchingLimit = 12;

// Tries all (m-1)!! perfect matchings in lexicographic order; keeps the first
// minimum, which is the lexicographically smallest one.
inline PairMatching brute_force_matching(const Matrix& w) {
  int m = w.size();
  if (m > kBruteForceMatchingLimit)
    throw std::invalid_argument("brute-force matching is limited to " + std::to_string(kBruteForceMatchingLimit) +
                                " vertices");
  detail::check_matching_input(w);
  std::vector<VertexPair> path, best;
  double best_weight = std::numeric_limits<double>::infinity();
  std::vector<char> used(m, 0);
  auto recurse = [&](auto&& self, double partial) -> void {
    int v = 0;
    while (v < m && used[v]) ++v;
    if (v == m) {
      if (partial < best_weight) {
        best_weight = partial;
        best = path;
      }
      return;
    }
    used[v] = 1;
    for (int u = v + 1; u < m; ++u) {
      if (used[u]) continue;
      used[u] = 1;
      path.emplace_back(v, u);
      self(self, partial + w(v, u));
      path.pop_back();
      used[u] = 0;
    }
    used[v] = 0;
  };
  recurse(recurse, 0.0);
  return detail::finish(w, best);
}

struct OracleResult {
  double optimum = 0.0;
  Schedule schedule;
  std::uint64_t explored = 0;  // complete schedules reached
  std::uint64_t nodes = 0;
  bool proven_optimal = true;
};

namespace detail {

// All ways to play one day: perfect matchings with both orientations,
// in lexicographic order of their fixture lists.
inline std::vector<Day> day_options(int n) {
  std::vector<Day> out;
  Day cur;
  std::vector<char> used(n, 0);
  auto recurse = [&](auto&& self) -> void {
    int t = 0;
    while (t < n && used[t]) ++t;
    if (t == n) {
      out.push_back(cur);
      return;
    }
    used[t] = 1;
    for (int u = t + 1; u < n; ++u) {
      if (used[u]) continue;
      used[u] = 1;
      for (Fixture f : {Fixture{t, u}, Fixture{u, t}}) {
        cur.push_back(f);
        self(self);
        cur.pop_back();
      }
      used[u] = 0;
    }
    used[t] = 0;
  };
  recurse(recurse);
  return out;
}

// Day-by-day exhaustive search with C1/C2/C4 pruning and a running-cost cut.
class OptimalSearch {
 public:
  OptimalSearch(const Instance& inst, std::uint64_t node_budget)
      : inst_(inst), n_(inst.n()), days_total_(2 * n_ - 2), budget_(node_budget), options_(day_options(n_)),
        played_(n_, std::vector<char>(n_, 0)), loc_(n_), run_(n_, 0), side_(n_, 0),
        metric_(check_metric(inst).metric()) {
    for (int t = 0; t < n_; ++t) loc_[t] = t;
  }

  OracleResult run() {
    days_.clear();
    days_.reserve(days_total_);  // search keeps a pointer to the previous day
    search(0, 0.0);
    OracleResult r;
    r.explored = explored_;
    r.nodes = nodes_;
    r.proven_optimal = !exhausted_;
    if (best_days_.empty()) throw SearchBudgetExceeded("no valid schedule found within the node budget");
    r.optimum = best_;
    r.schedule.n = n_;
    r.schedule.days = best_days_;
    return r;
  }

 private:
  bool allowed(const Day& day, const Day* prev) const {
    for (const auto& f : day) {
      if (played_[f.home][f.away]) return false;
      if (prev)
        for (const auto& g : *prev)
          if ((g.home == f.home && g.away == f.away) || (g.home == f.away && g.away == f.home)) return false;
      if (side_[f.home] == 1 && run_[f.home] >= 2) return false;
      if (side_[f.away] == -1 && run_[f.away] >= 2) return false;
    }
    return true;
  }

  double remaining_bound() const {
    if (!metric_) return 0.0;
    double b = 0.0;
    for (int t = 0; t < n_; ++t) b += inst_.d(loc_[t], t);
    return b;
  }

  void search(int day, double cost) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (day == days_total_) {
      ++explored_;
      double total = cost;
      for (int t = 0; t < n_; ++t) total += inst_.d(loc_[t], t);
      if (total < best_) {
        best_ = total;
        best_days_ = days_;
      }
      return;
    }
    if (cost + remaining_bound() >= best_) return;
    const Day* prev = days_.empty() ? nullptr : &days_.back();
    for (const auto& option : options_) {
      if (!allowed(option, prev)) continue;
      auto saved_loc = loc_;
      auto saved_run = run_;
      auto saved_side = side_;
      double step = 0.0;
      for (const auto& f : option) {
        played_[f.home][f.away] = 1;
        step += inst_.d(loc_[f.home], f.home) + inst_.d(loc_[f.away], f.home);
        loc_[f.home] = f.home;
        loc_[f.away] = f.home;
        run_[f.home] = side_[f.home] == 1 ? run_[f.home] + 1 : 1;
        side_[f.home] = 1;
        run_[f.away] = side_[f.away] == -1 ? run_[f.away] + 1 : 1;
        side_[f.away] = -1;
      }
      days_.push_back(option);
      if (cost + step < best_) search(day + 1, cost + step);
      days_.pop_back();
      for (const auto& f : option) played_[f.home][f.away] = 0;
      loc_ = std::move(saved_loc);
      run_ = std::move(saved_run);
      side_ = std::move(saved_side);
      if (exhausted_) return;
    }
  }

  const Instance& inst_;
  int n_;
  int days_total_;
  std::uint64_t budget_;
  std::vector<Day> options_;
  std::vector<std::vector<char>> played_;
  std::vector<int> loc_, run_, side_;
  bool metric_;
  std::vector<Day> days_, best_days_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0, explored_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

// Exact optimum for four teams by exhaustive search.
inline OracleResult brute_force_optimal(const Instance& inst) {
  if (inst.n() != 4) throw std::invalid_argument("exact oracle needs n = 4, got " + std::to_string(inst.n()));
  return detail::OptimalSearch(inst, std::numeric_limits<std::uint64_t>::max()).run();
}

// Same search for n = 4 or 6, stopped after `node_budget` nodes. The result is
// the best schedule found; proven_optimal tells whether the search finished.
inline OracleResult best_effort_optimal(const Instance& inst, std::uint64_t node_budget) {
  if (inst.n() != 4 && inst.n() != 6)
    throw std::invalid_argument("best-effort oracle supports n = 4 or 6, got " + std::to_string(inst.n()));
  return detail::OptimalSearch(inst, node_budget).run();
}

struct SampledSchedule {
  Schedule schedule;
  double travel = 0.0;
};

namespace detail {

// Randomized backtracking over days; inside a day the lowest free team picks
// a random opponent and venue.
class ScheduleSampler {
 public:
  ScheduleSampler(int n, std::uint64_t seed) : n_(n), days_total_(2 * n - 2), rng_(seed) {}

  std::optional<std::vector<Day>> attempt(std::uint64_t node_limit) {
    played_.assign(n_, std::vector<char>(n_, 0));
    run_.assign(n_, 0);
    side_.assign(n_, 0);
    home_left_.assign(n_, n_ - 1);
    away_left_.assign(n_, n_ - 1);
    days_.assign(1, Day{});
    nodes_ = 0;
    limit_ = node_limit;
    used_.assign(n_, 0);
    if (fill(0)) return std::vector<Day>(days_.begin(), days_.end() - 1);
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool met_yesterday(int a, int b, int day) const {
    if (day == 0) return false;
    for (const auto& f : days_[day - 1])
      if ((f.home == a && f.away == b) || (f.home == b && f.away == a)) return true;
    return false;
  }

  // Home/away counts left must still fit runs of at most two.
  bool balance_ok(int t) const {
    int h = home_left_[t], a = away_left_[t];
    int h_cap = 2 * (a + 1) - (side_[t] == 1 ? run_[t] : 0);
    int a_cap = 2 * (h + 1) - (side_[t] == -1 ? run_[t] : 0);
    return h <= h_cap && a <= a_cap;
  }

  bool can_host(int t) const { return !(side_[t] == 1 && run_[t] >= 2) && home_left_[t] > 0; }
  bool can_visit(int t) const { return !(side_[t] == -1 && run_[t] >= 2) && away_left_[t] > 0; }

  void apply(int t, int s) {
    run_[t] = side_[t] == s ? run_[t] + 1 : 1;
    side_[t] = s;
    (s == 1 ? home_left_ : away_left_)[t]--;
  }

  bool fill(int day) {
    if (day == days_total_) return true;
    if (++nodes_ > limit_) return false;
    int t = 0;
    while (t < n_ && used_[t]) ++t;
    if (t == n_) {
      auto saved_used = used_;
      used_.assign(n_, 0);
      days_.push_back(Day{});
      if (fill(day + 1)) return true;
      days_.pop_back();
      used_ = std::move(saved_used);
      return false;
    }
    std::vector<Fixture> cands;
    for (int u = 0; u < n_; ++u) {
      if (u == t || used_[u] || met_yesterday(t, u, day)) continue;
      if (!played_[u][t] && can_visit(t) && can_host(u)) cands.push_back({t, u});
      if (!played_[t][u] && can_host(t) && can_visit(u)) cands.push_back({u, t});
    }
    std::shuffle(cands.begin(), cands.end(), rng_);
    for (const auto& f : cands) {
      auto saved = std::tuple(run_, side_);
      played_[f.home][f.away] = 1;
      apply(f.home, 1);
      apply(f.away, -1);
      used_[f.home] = used_[f.away] = 1;
      days_[day].push_back(f);
      if (balance_ok(f.home) && balance_ok(f.away) && fill(day)) return true;
      days_[day].pop_back();
      used_[f.home] = used_[f.away] = 0;
      played_[f.home][f.away] = 0;
      home_left_[f.home]++;
      away_left_[f.away]++;
      std::tie(run_, side_) = std::move(saved);
      if (nodes_ > limit_) return false;
    }
    return false;
  }

  int n_;
  int days_total_;
  std::mt19937_64 rng_;
  std::vector<std::vector<char>> played_;
  std::vector<int> run_, side_, home_left_, away_left_;
  std::vector<char> used_;
  std::vector<Day> days_;
  std::uint64_t nodes_ = 0, limit_ = 0;
};

}  // namespace detail

// `count` valid schedules for small n (at most 8), drawn by randomized
// backtracking with restarts. Throws SearchBudgetExceeded when the total node
// budget runs out first.
inline std::vector<SampledSchedule> sample_valid_schedules(const Instance& inst, int count, std::uint64_t seed,
                                                           std::uint64_t node_budget = 50'000'000) {
  int n = inst.n();
  if (n > 8) throw std::invalid_argument("schedule sampling supports n <= 8, got " + std::to_string(n));
  if (count < 0) throw std::invalid_argument("sample count must be non-negative");
  detail::ScheduleSampler sampler(n, seed);
  std::vector<SampledSchedule> out;
  std::uint64_t spent = 0;
  const std::uint64_t per_attempt = 2000;
  while (static_cast<int>(out.size()) < count) {
    if (spent >= node_budget)
      throw SearchBudgetExceeded("sampling stopped after " + std::to_string(spent) + " nodes with " +
                                 std::to_string(out.size()) + " schedules");
    auto days = sampler.attempt(per_attempt);
    spent += sampler.nodes();
    if (!days) continue;
    SampledSchedule s;
    s.schedule.n = n;
    s.schedule.days = std::move(*days);
    s.travel = total_travel(s.schedule.days, inst);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ttp2
