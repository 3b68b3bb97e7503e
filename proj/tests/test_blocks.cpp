#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include <ttp2/blocks.hpp>

using namespace ttp2;
using Catch::Approx;

namespace {

// Independent travel walk: every team starts home, follows its games, returns home.
double walk(const std::vector<Day>& days, const Matrix& d) {
  std::map<int, int> at;
  for (const auto& day : days)
    for (const auto& f : day) at[f.away] = f.away, at[f.home] = f.home;
  double total = 0;
  for (const auto& day : days)
    for (const auto& f : day) {
      total += d(at[f.home], f.home) + d(at[f.away], f.home);
      at[f.home] = f.home;
      at[f.away] = f.home;
    }
  for (auto [team, pos] : at) total += d(pos, team);
  return total;
}

Matrix random_metric4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 100);
  double x[4], y[4];
  for (int i = 0; i < 4; ++i) x[i] = u(rng), y[i] = u(rng);
  Matrix m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::hypot(x[i] - x[j], y[i] - y[j]);
  return m;
}

}  // namespace

TEST_CASE("home/away profiles of the three block types") {
  CHECK(role_profile(BlockType::type1, Slot::a1) == "aahh");
  CHECK(role_profile(BlockType::type1, Slot::a2) == "aahh");
  CHECK(role_profile(BlockType::type1, Slot::b1) == "hhaa");
  CHECK(role_profile(BlockType::type1, Slot::b2) == "hhaa");
  CHECK(role_profile(BlockType::type2, Slot::a1) == "ahha");
  CHECK(role_profile(BlockType::type2, Slot::a2) == "ahha");
  CHECK(role_profile(BlockType::type2, Slot::b1) == "haah");
  CHECK(role_profile(BlockType::type2, Slot::b2) == "haah");
  CHECK(role_profile(BlockType::type3, Slot::a1) == "aahhah");
  CHECK(role_profile(BlockType::type3, Slot::a2) == "ahhaah");
  CHECK(role_profile(BlockType::type3, Slot::b1) == "hhaaha");
  CHECK(role_profile(BlockType::type3, Slot::b2) == "haahha");
}

TEST_CASE("role transitions") {
  CHECK(block_role_transition(BlockType::type1, Role::A) == Role::A);
  CHECK(block_role_transition(BlockType::type1, Role::B) == Role::B);
  CHECK(block_role_transition(BlockType::type2, Role::A) == Role::B);
  CHECK(block_role_transition(BlockType::type2, Role::B) == Role::A);
  CHECK_FALSE(block_role_transition(BlockType::type3, Role::A).has_value());
}

TEST_CASE("expanded blocks") {
  TeamPair a{0, 1}, b{2, 3};
  auto t1 = expand_block(BlockType::type1, a, b);
  REQUIRE(t1.size() == 4);
  CHECK(t1[0] == Day{{0, 2}, {1, 3}});
  CHECK(t1[1] == Day{{0, 3}, {1, 2}});
  CHECK(t1[2] == Day{{2, 0}, {3, 1}});
  CHECK(t1[3] == Day{{2, 1}, {3, 0}});

  auto t2 = expand_block(BlockType::type2, a, b);
  CHECK(t2[1] == Day{{3, 0}, {2, 1}});
  CHECK(t2[3] == Day{{0, 3}, {1, 2}});

  auto t3 = expand_block(BlockType::type3, a, b);
  REQUIRE(t3.size() == 6);
  CHECK(t3[1] == Day{{0, 1}, {3, 2}});
  CHECK(t3[3] == Day{{1, 0}, {2, 3}});

  // Type-1 and Type-2 play every cross game once; Type-3 is a full double round robin of four teams.
  for (auto t : {BlockType::type1, BlockType::type2, BlockType::type3}) {
    std::set<std::pair<int, int>> games;
    for (const auto& day : expand_block(t, a, b))
      for (const auto& f : day) CHECK(games.insert({f.away, f.home}).second);
    CHECK(games.size() == (t == BlockType::type3 ? 12u : 8u));
  }
  CHECK_THROWS_AS(expand_block(BlockType::type1, TeamPair{0, 1}, TeamPair{1, 2}), std::invalid_argument);
}

TEST_CASE("Type-3 itinerary of A1") {
  auto days = expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3});
  std::vector<int> path{0};
  for (const auto& day : days)
    for (const auto& f : day) {
      if (f.away == 0) path.push_back(f.home);
      if (f.home == 0) path.push_back(0);
    }
  // home -> B1 -> A2 -> home -> home -> B2 -> home
  CHECK(path == std::vector<int>{0, 2, 1, 0, 0, 3, 0});
}

TEST_CASE("block travel on unit distances") {
  BlockDistances one{1, 1, 1, 1, 1, 1};
  CHECK(block_travel(BlockType::type3, one) == 20.0);
  CHECK(block_travel(BlockType::type2, one) == 14.0);
  CHECK(block_travel(BlockType::type1, one) == 12.0);
}

TEST_CASE("block travel formulas match a walk over the expanded block") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix d = random_metric4(rng);
    BlockDistances bd{d(0, 2), d(1, 2), d(0, 1), d(0, 3), d(1, 3), d(2, 3)};
    for (auto t : {BlockType::type1, BlockType::type2, BlockType::type3})
      CHECK(block_travel(t, bd) == Approx(walk(expand_block(t, TeamPair{0, 1}, TeamPair{2, 3}), d)).epsilon(1e-12));
  }
}
