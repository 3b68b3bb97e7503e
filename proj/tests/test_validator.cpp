#include <catch_amalgamated.hpp>

#include <ttp2/scheduler.hpp>
#include <ttp2/validator.hpp>

using namespace ttp2;

namespace {

std::vector<Violation> of(const ViolationReport& r, Constraint c) {
  std::vector<Violation> out;
  for (const auto& v : r.violations)
    if (v.constraint == c) out.push_back(v);
  return out;
}

// A valid four-team schedule: a Type-3 block.
std::vector<Day> four_team_valid() { return expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3}); }

}  // namespace

TEST_CASE("a Type-3 block is a valid four-team schedule") {
  CHECK(validate_schedule(four_team_valid(), 4).ok());
}

TEST_CASE("a third consecutive home game is reported once, on the third day") {
  std::vector<Day> days{
      {{1, 0}, {3, 2}}, {{0, 2}, {1, 3}}, {{0, 3}, {2, 1}},
      {{1, 0}, {2, 3}}, {{2, 0}, {3, 1}}, {{3, 0}, {1, 2}},
  };
  auto r = validate_schedule(days, 4);
  std::vector<Violation> team0;
  for (const auto& v : of(r, Constraint::max_run))
    if (v.team == 0) team0.push_back(v);
  REQUIRE(team0.size() == 1);
  CHECK(team0[0].day == 5);
}

TEST_CASE("every kind of violation is reported") {
  SECTION("repeater regardless of venue") {
    auto days = four_team_valid();
    // days 4 and 5 are (A1@B2, A2@B1) and (B1@A1, B2@A2); make day 5 a rematch of day 4 with venues swapped
    days[5] = {{3, 0}, {2, 1}};
    auto r = validate_schedule(days, 4);
    CHECK(of(r, Constraint::no_repeater).size() == 2);
    CHECK_FALSE(of(r, Constraint::double_round_robin).empty());
  }
  SECTION("missing team and wrong day count") {
    auto days = four_team_valid();
    days[2].pop_back();
    days.pop_back();
    auto r = validate_schedule(days, 4);
    CHECK(of(r, Constraint::day_count).size() == 1);
    CHECK(of(r, Constraint::one_game_per_day).size() == 2);
    CHECK_FALSE(of(r, Constraint::double_round_robin).empty());
  }
  SECTION("double booking") {
    auto days = four_team_valid();
    days[0] = {{0, 2}, {1, 2}};
    auto r = validate_schedule(days, 4);
    CHECK(of(r, Constraint::one_game_per_day).size() == 2);  // team 2 twice, team 3 never
  }
}

TEST_CASE("malformed schedules are input errors") {
  CHECK_THROWS_AS(validate_schedule({{{0, 7}}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_schedule({{{1, 1}}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_schedule({}, 3), std::invalid_argument);
}

TEST_CASE("consecutive blocks in a built schedule stay valid") {
  for (int n : {8, 12, 16, 24, 32})
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto s = build_schedule(generate_instance(n, InstanceKind::random_metric, seed));
      auto r = validate_schedule(s.days, n);
      INFO(describe(r));
      CHECK(r.ok());
    }
}
