#pragma once

#include <algorithm>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "instance.hpp"
#include "scheduler.hpp"

namespace ttp2 {

inline nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json j;
  j["n"] = s.n;
  auto days = nlohmann::json::array();
  for (const auto& day : s.days) {
    auto games = nlohmann::json::array();
    for (const auto& f : day) games.push_back({{"away", f.away}, {"home", f.home}});
    days.push_back(std::move(games));
  }
  j["days"] = std::move(days);
  auto levels = nlohmann::json::array();
  for (const auto& lp : s.levels) {
    auto blocks = nlohmann::json::array();
    for (const auto& sm : lp.super_matches)
      blocks.push_back({{"a_pair", sm.a_pair}, {"b_pair", sm.b_pair}, {"type", to_int(sm.type)}});
    levels.push_back({{"round", lp.round}, {"level", lp.level}, {"blocks", std::move(blocks)}});
  }
  j["levels"] = std::move(levels);
  auto pairs = nlohmann::json::array();
  for (const auto& p : s.team_pairs) pairs.push_back({p.first, p.second});
  j["team_pairs"] = std::move(pairs);
  auto supers = nlohmann::json::array();
  for (const auto& p : s.super_pairs) supers.push_back({p.first, p.second});
  j["super_pairs"] = std::move(supers);
  j["flips"] = s.flips;
  return j;
}

// Only "days" is required; n defaults to one more than the largest team index.
inline Schedule schedule_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("days")) throw InputError("schedule JSON needs a 'days' array");
    Schedule s;
    int max_team = -1;
    const auto& days = j.at("days");
    for (std::size_t d = 0; d < days.size(); ++d) {
      Day day;
      for (const auto& g : days[d]) {
        Fixture f{g.at("away").get<int>(), g.at("home").get<int>()};
        if (f.away < 0 || f.home < 0)
          throw InputError("negative team index on day " + std::to_string(d), static_cast<int>(d));
        max_team = std::max({max_team, f.away, f.home});
        day.push_back(f);
      }
      s.days.push_back(std::move(day));
    }
    s.n = j.contains("n") ? j.at("n").get<int>() : max_team + 1;
    if (max_team >= s.n) throw InputError("team index " + std::to_string(max_team) + " exceeds n");
    if (j.contains("levels"))
      for (const auto& l : j.at("levels")) {
        LevelPlan lp{l.value("round", 1), l.value("level", 1), {}};
        for (const auto& b : l.at("blocks"))
          lp.super_matches.push_back(
              {b.at("a_pair").get<int>(), b.at("b_pair").get<int>(), block_type_from_int(b.at("type").get<int>())});
        s.levels.push_back(std::move(lp));
      }
    if (j.contains("team_pairs"))
      for (const auto& p : j.at("team_pairs")) s.team_pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    if (j.contains("super_pairs"))
      for (const auto& p : j.at("super_pairs")) s.super_pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    s.flips = j.contains("flips") ? j.at("flips").get<int>() : count_flips(s.levels);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid schedule JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid schedule JSON: ") + e.what());
  }
}

// Plain text, one line per day: "day 0: 0@1 2@3" (away@home, 0-based).
inline void write_day_list(const std::vector<Day>& days, std::ostream& out) {
  for (std::size_t d = 0; d < days.size(); ++d) {
    out << "day " << d << ':';
    for (const auto& f : days[d]) out << ' ' << f.away << '@' << f.home;
    out << '\n';
  }
}

inline std::vector<Day> read_day_list(std::istream& in) {
  std::vector<Day> days;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    auto colon = text.find(':');
    std::istringstream head(text.substr(0, colon == std::string::npos ? 0 : colon));
    std::string word;
    int index = -1;
    if (colon == std::string::npos || !(head >> word >> index) || word != "day")
      throw InputError("line " + std::to_string(line_no) + ": expected 'day k: a@h ...'", line_no);
    if (index != static_cast<int>(days.size()))
      throw InputError("line " + std::to_string(line_no) + ": expected day " + std::to_string(days.size()) +
                           ", found day " + std::to_string(index),
                       line_no);
    Day day;
    std::istringstream games(text.substr(colon + 1));
    std::string token;
    int column = 0;
    while (games >> token) {
      ++column;
      auto at = token.find('@');
      auto away = at == std::string::npos ? std::nullopt : detail::parse_double(token.substr(0, at));
      auto home = at == std::string::npos ? std::nullopt : detail::parse_double(token.substr(at + 1));
      if (!away || !home || *away < 0 || *home < 0 || *away != static_cast<int>(*away) ||
          *home != static_cast<int>(*home))
        throw InputError("line " + std::to_string(line_no) + ": malformed game '" + token + "'", line_no, column);
      day.push_back({static_cast<int>(*away), static_cast<int>(*home)});
    }
    days.push_back(std::move(day));
  }
  return days;
}

// Accepts either a schedule JSON object or the plain day list.
inline Schedule load_schedule(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed schedule JSON: ") + e.what());
    }
    return schedule_from_json(j);
  }
  std::istringstream is(text);
  Schedule s;
  s.days = read_day_list(is);
  int max_team = -1;
  for (const auto& day : s.days)
    for (const auto& f : day) max_team = std::max({max_team, f.away, f.home});
  s.n = max_team + 1;
  return s;
}

}  // namespace ttp2
