#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocks.hpp"

namespace ttp2 {

enum class Constraint {
  double_round_robin,    // every ordered pair plays exactly once
  no_repeater,           // the same two teams never meet on consecutive days
  max_run,               // no three consecutive home (or away) games
  one_game_per_day,
  day_count,
};

inline std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::double_round_robin: return "C1_double_round_robin";
    case Constraint::no_repeater: return "C2_repeater";
    case Constraint::max_run: return "C4_max_run";
    case Constraint::one_game_per_day: return "structural_one_game_per_day";
    case Constraint::day_count: return "structural_day_count";
  }
  return "?";
}

struct Violation {
  Constraint constraint;
  int day = -1;   // 0-based, -1 when not tied to one day
  int team = -1;  // -1 when not tied to one team
  int other = -1;
  std::string detail;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::size_t count(Constraint c) const {
    std::size_t k = 0;
    for (const auto& v : violations) k += v.constraint == c;
    return k;
  }
};

// Checks a day list for n teams against the TTP-2 rules and reports every
// violation found. Out-of-range team indices and self-games are input errors.
inline ViolationReport validate_schedule(const std::vector<Day>& days, int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("team count must be positive and even");
  for (std::size_t d = 0; d < days.size(); ++d)
    for (const auto& f : days[d]) {
      if (f.away < 0 || f.away >= n || f.home < 0 || f.home >= n)
        throw std::invalid_argument("day " + std::to_string(d) + ": team index out of range");
      if (f.away == f.home)
        throw std::invalid_argument("day " + std::to_string(d) + ": team " + std::to_string(f.home) + " plays itself");
    }

  ViolationReport report;
  auto add = [&](Constraint c, int day, int team, int other, std::string detail) {
    report.violations.push_back({c, day, team, other, std::move(detail)});
  };

  int expected_days = 2 * n - 2;
  if (static_cast<int>(days.size()) != expected_days)
    add(Constraint::day_count, -1, -1, -1,
        "expected " + std::to_string(expected_days) + " days, found " + std::to_string(days.size()));

  // venue[d][t]: +1 home, -1 away, 0 idle
  std::vector<std::vector<int>> venue(days.size(), std::vector<int>(n, 0));
  std::vector<std::vector<int>> played(n, std::vector<int>(n, 0));  // played[home][away]
  for (std::size_t d = 0; d < days.size(); ++d) {
    std::vector<int> games(n, 0);
    for (const auto& f : days[d]) {
      ++games[f.away];
      ++games[f.home];
      venue[d][f.away] = -1;
      venue[d][f.home] = 1;
      ++played[f.home][f.away];
    }
    for (int t = 0; t < n; ++t)
      if (games[t] != 1)
        add(Constraint::one_game_per_day, static_cast<int>(d), t, -1,
            "team " + std::to_string(t) + " plays " + std::to_string(games[t]) + " games on day " + std::to_string(d));
  }

  for (int h = 0; h < n; ++h)
    for (int a = 0; a < n; ++a) {
      if (h == a || played[h][a] == 1) continue;
      add(Constraint::double_round_robin, -1, a, h,
          "team " + std::to_string(a) + " visits team " + std::to_string(h) + " " + std::to_string(played[h][a]) +
              " times");
    }

  for (std::size_t d = 1; d < days.size(); ++d)
    for (const auto& f : days[d])
      for (const auto& g : days[d - 1])
        if ((f.away == g.away && f.home == g.home) || (f.away == g.home && f.home == g.away))
          add(Constraint::no_repeater, static_cast<int>(d), std::min(f.away, f.home), std::max(f.away, f.home),
              "teams " + std::to_string(f.away) + " and " + std::to_string(f.home) + " meet on days " +
                  std::to_string(d - 1) + " and " + std::to_string(d));

  for (int t = 0; t < n; ++t) {
    int run = 0, kind = 0;
    for (std::size_t d = 0; d < days.size(); ++d) {
      int v = venue[d][t];
      run = (v != 0 && v == kind) ? run + 1 : (v != 0 ? 1 : 0);
      kind = v;
      if (run == 3)
        add(Constraint::max_run, static_cast<int>(d), t, -1,
            "team " + std::to_string(t) + " plays a third consecutive " + (v > 0 ? "home" : "away") +
                " game on day " + std::to_string(d));
    }
  }
  return report;
}

inline std::string describe(const ViolationReport& r) {
  std::ostringstream os;
  for (const auto& v : r.violations) os << to_string(v.constraint) << ": " << v.detail << '\n';
  return os.str();
}

}  // namespace ttp2
