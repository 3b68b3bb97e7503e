#include <catch_amalgamated.hpp>

#include <sstream>

#include <ttp2/schedule_io.hpp>
#include <ttp2/validator.hpp>

using namespace ttp2;

TEST_CASE("schedule JSON round trip") {
  auto s = build_schedule(generate_instance(12, InstanceKind::euclidean, 4));
  auto j = schedule_to_json(s);
  CHECK(j["n"] == 12);
  CHECK(j["days"].size() == 22);
  CHECK(j["levels"].size() == 5);
  CHECK(j["flips"] == s.flips);
  auto back = schedule_from_json(j);
  CHECK(back.n == s.n);
  CHECK(back.days == s.days);
  CHECK(back.levels == s.levels);
  CHECK(back.team_pairs == s.team_pairs);
  CHECK(back.super_pairs == s.super_pairs);
  CHECK(back.flips == s.flips);

  std::istringstream in(j.dump());
  CHECK(load_schedule(in).days == s.days);
}

TEST_CASE("plain day list round trip") {
  auto s = build_schedule(generate_instance(8, InstanceKind::unit, 0));
  std::ostringstream out;
  write_day_list(s.days, out);
  CHECK(out.str().rfind("day 0: ", 0) == 0);
  std::istringstream in(out.str());
  auto loaded = load_schedule(in);
  CHECK(loaded.n == 8);
  CHECK(loaded.days == s.days);
  CHECK(validate_schedule(loaded.days, loaded.n).ok());
}

TEST_CASE("malformed schedules") {
  std::istringstream bad_game("day 0: 0@1 2-3\n");
  CHECK_THROWS_AS(load_schedule(bad_game), InputError);
  std::istringstream skipped("day 0: 0@1\nday 2: 1@0\n");
  CHECK_THROWS_AS(load_schedule(skipped), InputError);
  std::istringstream bad_json(R"({"days": [[{"away": 0}]]})");
  CHECK_THROWS_AS(load_schedule(bad_json), InputError);
  std::istringstream bad_type(R"({"n": 4, "days": [], "levels": [{"blocks": [{"a_pair":0,"b_pair":1,"type":5}]}]})");
  CHECK_THROWS_AS(load_schedule(bad_type), InputError);
}
