#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include <ttp2/analysis.hpp>

using namespace ttp2;
using Catch::Approx;

namespace {

Instance unit(int n) { return generate_instance(n, InstanceKind::unit, 0); }

Instance scaled(const Instance& inst, double c) {
  Matrix m(inst.n());
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) m(i, j) = c * inst.d(i, j);
  return Instance(inst.n(), m);
}

}  // namespace

TEST_CASE("lower bound") {
  auto u = unit(4);
  CHECK(sum_of_distances(u) == 6.0);
  CHECK(team_matching(u).weight == 2.0);
  CHECK(lower_bound(u) == 20.0);
  CHECK(lower_bound(Instance(4, Matrix(4, 0.0))) == 0.0);
}

TEST_CASE("flip budget and factors") {
  CHECK(flip_budget(8) == 1.0);
  CHECK(flip_budget(12) == 3.0);
  CHECK(flip_budget(16) == 4.0);
  CHECK(flip_budget(20) == 7.5);
  CHECK(flip_budget(24) == 9.0);
  CHECK(flip_budget(28) == 10.5);
  CHECK(flip_budget(32) == 12.0);
  CHECK(flip_budget_ceil(20) == 8);
  CHECK(flip_budget_ceil(28) == 11);
  CHECK_THROWS(flip_budget(10));

  CHECK(factor_ours(8) == Approx(1.0 + 5.0 / 12.0));
  CHECK(factor_ours(32) == Approx(1.0 + 7.0 / 60.0));
  CHECK(factor_ours(32) == Approx(1.1167).margin(1e-4));
  CHECK(factor_xiao_kou(32) == Approx(1.1292).margin(1e-4));
  CHECK(factor_ours(36) == Approx(1.1176).margin(1e-4));
  CHECK(factor_xiao_kou(36) == Approx(1.1144).margin(1e-4));
  for (int n = 8; n <= 32; n += 4) CHECK(factor_ours_exact(n) < factor_xiao_kou_exact(n));
  CHECK(factor_xiao_kou_exact(36) < factor_ours_exact(36));
}

TEST_CASE("itineraries") {
  auto days = expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3});
  auto it = team_itinerary(days, unit(4), 0);
  CHECK(it.venues == std::vector<int>{0, 2, 1, 0, 0, 3, 0});
  CHECK(it.travel == 5.0);  // 0-2-1-0, stay, 0-3-0
  CHECK(team_itinerary(days, Instance(4, Matrix(4, 0.0)), 2).travel == 0.0);
  // a team that only hosts never travels
  std::vector<Day> hosting{{{1, 0}}, {{2, 0}}, {{3, 0}}};
  CHECK(team_itinerary(hosting, unit(4), 0).travel == 0.0);
  CHECK_THROWS_AS(team_itinerary(days, unit(4), 4), std::out_of_range);
}

TEST_CASE("isolated blocks on unit distances") {
  auto u = unit(4);
  CHECK(total_travel(expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3}), u) == 20.0);
  CHECK(total_travel(expand_block(BlockType::type2, TeamPair{0, 1}, TeamPair{2, 3}), u) == 14.0);
  CHECK(total_travel(expand_block(BlockType::type1, TeamPair{0, 1}, TeamPair{2, 3}), u) == 12.0);
}

TEST_CASE("evaluator agrees with block formulas over random sextuples") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(1, 500);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts(4);
    for (auto& p : pts) p = {u(rng), u(rng)};
    auto inst = instance_from_coords(pts);
    TeamPair a{0, 1}, b{2, 3};
    for (auto t : {BlockType::type1, BlockType::type2, BlockType::type3})
      CHECK(total_travel(expand_block(t, a, b), inst) ==
            Approx(block_travel(t, block_distances(inst, a, b))).epsilon(1e-12));
  }
}

TEST_CASE("evaluation report") {
  auto u = unit(4);
  auto r = evaluation_report(expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3}), 0, u);
  CHECK(r.total_travel == 20.0);
  CHECK(r.lower_bound == 20.0);
  REQUIRE(r.ratio);
  CHECK(*r.ratio == 1.0);
  CHECK(r.valid);
  CHECK_FALSE(r.factor_ours.has_value());

  auto zero = evaluation_report(expand_block(BlockType::type3, TeamPair{0, 1}, TeamPair{2, 3}), 0,
                                Instance(4, Matrix(4, 0.0)));
  CHECK_FALSE(zero.ratio.has_value());
  CHECK(to_json(zero)["ratio"] == "not applicable");

  auto inst = generate_instance(16, InstanceKind::euclidean, 5);
  auto s = build_schedule(inst);
  auto rep = evaluation_report(s, inst);
  CHECK(rep.valid);
  CHECK(rep.metric);
  CHECK(rep.bound_satisfied());
  CHECK(rep.within_flip_budget());
  CHECK(rep.lower_bound <= rep.total_travel);
  double per_team = 0;
  for (const auto& it : rep.per_team) per_team += it.travel;
  CHECK(per_team == rep.total_travel);
  CHECK(rep.total_travel == total_travel(s, inst));
}

TEST_CASE("travel is invariant under day shuffles and relabeling, and scales linearly") {
  auto inst = generate_instance(12, InstanceKind::random_metric, 3);
  auto s = build_schedule(inst);
  double base = total_travel(s, inst);

  auto shuffled = s.days;
  std::mt19937 rng(1);
  for (auto& day : shuffled) std::shuffle(day.begin(), day.end(), rng);
  CHECK(total_travel(shuffled, inst) == Approx(base).epsilon(1e-12));

  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix m(12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) m(perm[i], perm[j]) = inst.d(i, j);
  auto relabeled_days = s.days;
  for (auto& day : relabeled_days)
    for (auto& f : day) f = {perm[f.away], perm[f.home]};
  CHECK(total_travel(relabeled_days, Instance(12, m)) == Approx(base).epsilon(1e-12));

  auto big = scaled(inst, 3.0);
  CHECK(total_travel(s.days, big) == Approx(3.0 * base).epsilon(1e-12));
  CHECK(lower_bound(big) == Approx(3.0 * lower_bound(inst)).epsilon(1e-12));
  auto r1 = evaluation_report(s.days, s.flips, inst);
  auto r3 = evaluation_report(s.days, s.flips, big);
  CHECK(*r3.ratio == Approx(*r1.ratio).epsilon(1e-12));
}
