#include <catch_amalgamated.hpp>

#include <set>
#include <tuple>

#include <ttp2/analysis.hpp>
#include <ttp2/scheduler.hpp>

using namespace ttp2;

namespace {

using Row = std::tuple<int, int, int>;  // 1-based A label, 1-based B label, type

std::vector<std::vector<Row>> rows(const std::vector<LevelPlan>& levels) {
  std::vector<std::vector<Row>> out;
  for (const auto& lp : levels) {
    std::vector<Row> r;
    for (const auto& sm : lp.super_matches) r.emplace_back(sm.a_pair + 1, sm.b_pair + 1, to_int(sm.type));
    out.push_back(r);
  }
  return out;
}

std::vector<VertexPair> labels(std::initializer_list<VertexPair> one_based) {
  std::vector<VertexPair> out;
  for (auto [a, b] : one_based) out.push_back({a - 1, b - 1});
  return out;
}

std::vector<std::vector<Row>> as_set_rows(std::vector<std::vector<Row>> r) {
  for (auto& l : r) std::sort(l.begin(), l.end());
  return r;
}

}  // namespace

TEST_CASE("round sizes") {
  CHECK(round_sizes(8) == std::vector<int>{2, 1});
  CHECK(round_sizes(12) == std::vector<int>{3, 1, 1});
  CHECK(round_sizes(16) == std::vector<int>{4, 2, 1});
  CHECK(round_sizes(20) == std::vector<int>{5, 2, 1, 1});
  CHECK(round_sizes(24) == std::vector<int>{6, 3, 1, 1});
  CHECK(round_sizes(28) == std::vector<int>{7, 3, 2, 1});
  CHECK(round_sizes(32) == std::vector<int>{8, 4, 2, 1});
}

TEST_CASE("twelve-team level table") {
  auto typed = assign_flips(plan_levels(12, labels({{1, 5}, {2, 3}, {4, 6}})), 12);
  std::vector<std::vector<Row>> expected{
      {{1, 2, 1}, {3, 4, 1}, {5, 6, 1}},
      {{1, 4, 1}, {3, 6, 2}, {5, 2, 1}},
      {{1, 3, 1}, {6, 2, 2}, {5, 4, 1}},
      {{1, 6, 2}, {2, 4, 1}, {5, 3, 1}},
      {{6, 4, 3}, {2, 3, 3}, {5, 1, 3}},
  };
  CHECK(as_set_rows(rows(typed.levels)) == as_set_rows(expected));
  CHECK(typed.flips == 3);
  CHECK(typed.levels[3].round == 2);
  CHECK(typed.levels[4].round == 3);
}

TEST_CASE("sixteen-team level table") {
  auto typed = assign_flips(plan_levels(16, labels({{1, 5}, {2, 6}, {3, 7}, {4, 8}})), 16);
  std::vector<std::vector<Row>> expected{
      {{1, 2, 1}, {3, 4, 1}, {5, 6, 1}, {7, 8, 1}},
      {{1, 4, 1}, {3, 6, 1}, {5, 8, 1}, {7, 2, 1}},
      {{1, 6, 1}, {3, 8, 1}, {5, 2, 1}, {7, 4, 1}},
      {{1, 8, 1}, {3, 2, 2}, {5, 4, 1}, {7, 6, 2}},
      {{1, 3, 1}, {5, 7, 1}, {2, 8, 1}, {6, 4, 1}},
      {{1, 7, 1}, {5, 3, 2}, {2, 4, 1}, {6, 8, 2}},
      {{1, 5, 3}, {3, 7, 3}, {2, 6, 3}, {8, 4, 3}},
  };
  CHECK(as_set_rows(rows(typed.levels)) == as_set_rows(expected));
  CHECK(typed.flips == 4);
  CHECK(level_table(typed.levels).find("M3 --Type-2--> M2") != std::string::npos);
}

TEST_CASE("level plans are round robins ending in the requested final matching") {
  for (int n = 8; n <= 64; n += 4) {
    int m = n / 2;
    std::vector<VertexPair> finals;
    for (int i = 0; i < m; i += 2) finals.push_back({(i + 3) % m, (i + 4) % m});
    auto levels = plan_levels(n, finals);
    REQUIRE(static_cast<int>(levels.size()) == m - 1);
    std::set<std::pair<int, int>> met;
    for (const auto& lp : levels) {
      std::set<int> seen;
      for (const auto& sm : lp.super_matches) {
        CHECK(seen.insert(sm.a_pair).second);
        CHECK(seen.insert(sm.b_pair).second);
        CHECK(met.insert(std::minmax(sm.a_pair, sm.b_pair)).second);
      }
      CHECK(static_cast<int>(seen.size()) == m);
    }
    std::vector<VertexPair> last;
    for (const auto& sm : levels.back().super_matches) last.push_back({sm.a_pair, sm.b_pair});
    CHECK(normalized_pairs(last) == normalized_pairs(finals));
  }
}

TEST_CASE("flip assignment stays within budget and keeps roles consistent") {
  for (int n = 8; n <= 32; n += 4) {
    std::vector<VertexPair> finals;
    for (int i = 0; i < n / 2; i += 2) finals.push_back({i, i + 1});
    auto levels = plan_levels(n, finals);
    auto typed = assign_flips(levels, n);
    CHECK(typed.flips <= flip_budget_ceil(n));
    CHECK(typed.flips == count_flips(typed.levels));
    CHECK_FALSE(find_role_conflict(typed.levels, n).has_value());
    for (const auto& sm : typed.levels.back().super_matches) CHECK(sm.type == BlockType::type3);
    REQUIRE(typed.roles.size() == typed.levels.size());
    for (std::size_t t = 0; t < typed.levels.size(); ++t)
      for (const auto& sm : typed.levels[t].super_matches) {
        CHECK(typed.roles[t][sm.a_pair] == Role::A);
        CHECK(typed.roles[t][sm.b_pair] == Role::B);
      }
  }
}

TEST_CASE("an all Type-1 typing is caught as a role conflict") {
  auto levels = plan_levels(8, {{0, 1}, {2, 3}});
  for (std::size_t t = 0; t + 1 < levels.size(); ++t)
    for (auto& sm : levels[t].super_matches) sm.type = BlockType::type1;
  auto conflict = find_role_conflict(levels, 8);
  REQUIRE(conflict.has_value());
  CHECK(conflict->level_index > 0);
}

TEST_CASE("schedule construction") {
  for (int n : {8, 12, 16, 20}) {
    auto inst = generate_instance(n, InstanceKind::euclidean, 99 + n);
    auto s = build_schedule(inst);
    CHECK(s.n == n);
    CHECK(static_cast<int>(s.days.size()) == 2 * n - 2);
    for (const auto& day : s.days) CHECK(static_cast<int>(day.size()) == n / 2);
    CHECK(validate_schedule(s.days, n).ok());
    CHECK(s.flips <= flip_budget_ceil(n));
    CHECK(s.flips == count_flips(s));

    // every team appears in exactly one pair, and pairs are the optimal matching
    std::vector<VertexPair> pairs;
    for (auto p : s.team_pairs) {
      CHECK(p.first < p.second);
      pairs.push_back({p.first, p.second});
    }
    CHECK(normalized_pairs(pairs) == team_matching(inst).pairs);

    int type3 = 0;
    for (std::size_t t = 0; t < s.levels.size(); ++t)
      for (const auto& sm : s.levels[t].super_matches)
        if (sm.type == BlockType::type3) {
          ++type3;
          CHECK(t + 1 == s.levels.size());
        }
    CHECK(type3 == n / 4);
  }
}

TEST_CASE("construction rejects unsupported sizes") {
  CHECK_THROWS_WITH(build_schedule(generate_instance(10, InstanceKind::unit, 0)),
                    Catch::Matchers::ContainsSubstring("n must be divisible by 4"));
  CHECK_THROWS_AS(build_schedule(generate_instance(4, InstanceKind::unit, 0)), std::invalid_argument);
  CHECK_THROWS_AS(build_schedule(generate_instance(36, InstanceKind::unit, 0)), std::invalid_argument);
  CHECK_THROWS_AS(plan_levels(10, {}), std::invalid_argument);
  CHECK_THROWS_AS(plan_levels(8, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("unit metric schedule") {
  auto s = build_schedule(generate_instance(8, InstanceKind::unit, 0));
  CHECK(validate_schedule(s.days, 8).ok());
  CHECK(s.flips == 1);
}
