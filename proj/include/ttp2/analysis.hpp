#pragma once

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blocks.hpp"
#include "bounds.hpp"
#include "instance.hpp"
#include "matching.hpp"
#include "scheduler.hpp"
#include "validator.hpp"

namespace ttp2 {

// Where a team is each day. venues[0] is its home, venues[d+1] the venue of
// day d; travel includes the trip back home after the last day.
struct Itinerary {
  int team = 0;
  std::vector<int> venues;
  double travel = 0.0;
};

// A team with no game on some day stays where it is.
inline Itinerary team_itinerary(const std::vector<Day>& days, const Instance& inst, int team) {
  if (team < 0 || team >= inst.n()) throw std::out_of_range("team " + std::to_string(team) + " out of range");
  Itinerary it{team, {team}, 0.0};
  int here = team;
  for (const auto& day : days) {
    for (const auto& f : day) {
      if (f.home == team) here = team;
      else if (f.away == team) here = f.home;
    }
    it.travel += inst.d(it.venues.back(), here);
    it.venues.push_back(here);
  }
  it.travel += inst.d(here, team);
  return it;
}

inline Itinerary team_itinerary(const Schedule& s, const Instance& inst, int team) {
  if (s.n != inst.n()) throw std::invalid_argument("schedule and instance disagree on n");
  return team_itinerary(s.days, inst, team);
}

// Summed in team order so the result does not depend on evaluation order.
inline double total_travel(const std::vector<Day>& days, const Instance& inst) {
  double total = 0.0;
  for (int t = 0; t < inst.n(); ++t) total += team_itinerary(days, inst, t).travel;
  return total;
}

inline double total_travel(const Schedule& s, const Instance& inst) {
  if (s.n != inst.n()) throw std::invalid_argument("schedule and instance disagree on n");
  return total_travel(s.days, inst);
}

inline double sum_of_distances(const Instance& inst) {
  double total = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    for (int j = i + 1; j < inst.n(); ++j) total += inst.d(i, j);
  return total;
}

// 2 * (sum of all distances) + n * (minimum perfect matching weight).
inline double lower_bound(const Instance& inst, const PairMatching& teams) {
  return 2.0 * sum_of_distances(inst) + inst.n() * teams.weight;
}

inline double lower_bound(const Instance& inst) { return lower_bound(inst, team_matching(inst)); }

struct EvaluationReport {
  int n = 0;
  double total_travel = 0.0;
  double lower_bound = 0.0;
  std::optional<double> ratio;  // empty when the lower bound is zero
  int flips = 0;
  std::optional<double> flip_budget;  // only defined for n divisible by 4, n >= 8
  std::optional<double> factor_ours;
  std::optional<double> factor_xiao_kou;
  std::vector<Itinerary> per_team;
  double sum_of_distances = 0.0;
  double matching_weight = 0.0;
  bool valid = false;
  bool metric = false;
  std::size_t violations = 0;

  bool bound_satisfied() const { return ratio && factor_ours && *ratio <= *factor_ours + kTolerance; }
  bool within_flip_budget() const {
    return flip_budget && flips <= static_cast<int>(std::ceil(*flip_budget - kTolerance));
  }
};

// `teams_hint` may carry an already computed minimum team matching of `inst`.
inline EvaluationReport evaluation_report(const std::vector<Day>& days, int flips, const Instance& inst,
                                          const std::optional<PairMatching>& teams_hint = std::nullopt) {
  EvaluationReport r;
  r.n = inst.n();
  r.flips = flips;
  auto violations = validate_schedule(days, inst.n());
  r.valid = violations.ok();
  r.violations = violations.violations.size();
  r.metric = check_metric(inst).metric();
  for (int t = 0; t < inst.n(); ++t) {
    r.per_team.push_back(team_itinerary(days, inst, t));
    r.total_travel += r.per_team.back().travel;
  }
  auto teams = teams_hint ? *teams_hint : team_matching(inst);
  r.sum_of_distances = sum_of_distances(inst);
  r.matching_weight = teams.weight;
  r.lower_bound = lower_bound(inst, teams);
  if (r.lower_bound > 0.0) r.ratio = r.total_travel / r.lower_bound;
  if (inst.n() % 4 == 0 && inst.n() >= 8) {
    r.flip_budget = flip_budget(inst.n());
    r.factor_ours = factor_ours(inst.n());
    r.factor_xiao_kou = factor_xiao_kou(inst.n());
  }
  return r;
}

inline EvaluationReport evaluation_report(const Schedule& s, const Instance& inst) {
  if (s.n != inst.n()) throw std::invalid_argument("schedule and instance disagree on n");
  return evaluation_report(s.days, count_flips(s), inst, s.team_matching);
}

inline nlohmann::json to_json(const EvaluationReport& r, bool with_itineraries = false) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(); };
  nlohmann::json j{
      {"n", r.n},
      {"total_travel", r.total_travel},
      {"lower_bound", r.lower_bound},
      {"ratio", r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json("not applicable")},
      {"flips", r.flips},
      {"flip_budget", opt(r.flip_budget)},
      {"factor_ours", opt(r.factor_ours)},
      {"factor_xiao_kou", opt(r.factor_xiao_kou)},
      {"W_t", r.sum_of_distances},
      {"W_m", r.matching_weight},
      {"valid", r.valid},
      {"violations", r.violations},
      {"metric", r.metric},
      {"bound_satisfied", r.bound_satisfied()},
  };
  if (with_itineraries) {
    auto teams = nlohmann::json::array();
    for (const auto& it : r.per_team) teams.push_back({{"team", it.team}, {"venues", it.venues}, {"travel", it.travel}});
    j["per_team"] = std::move(teams);
  }
  return j;
}

inline void write_report_header(std::ostream& out) {
  out << std::setw(4) << "n" << std::setw(16) << "LB" << std::setw(16) << "ALG" << std::setw(10) << "ratio"
      << std::setw(7) << "flips" << std::setw(8) << "ceilF" << std::setw(13) << "factor_ours" << std::setw(11)
      << "factor_XK" << '\n';
}

inline void write_report_row(const EvaluationReport& r, std::ostream& out) {
  std::ostringstream row;
  row << std::fixed;
  row << std::setw(4) << r.n << std::setw(16) << std::setprecision(2) << r.lower_bound << std::setw(16)
      << r.total_travel;
  if (r.ratio) row << std::setw(10) << std::setprecision(6) << *r.ratio;
  else row << std::setw(10) << "n/a";
  row << std::setw(7) << r.flips;
  if (r.flip_budget) {
    row << std::setw(8) << static_cast<int>(std::ceil(*r.flip_budget - kTolerance)) << std::setw(13)
        << std::setprecision(6) << *r.factor_ours << std::setw(11) << *r.factor_xiao_kou;
  } else {
    row << std::setw(8) << "-" << std::setw(13) << "-" << std::setw(11) << "-";
  }
  out << row.str() << '\n';
}

}  // namespace ttp2
