#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "instance.hpp"

namespace ttp2 {

// One game: `away` travels to the venue of `home`.
struct Fixture {
  int away = 0;
  int home = 0;
  bool operator==(const Fixture&) const = default;
};

using Day = std::vector<Fixture>;

enum class Role { A, B };

inline Role other(Role r) { return r == Role::A ? Role::B : Role::A; }
inline char to_char(Role r) { return r == Role::A ? 'A' : 'B'; }

enum class BlockType { type1 = 1, type2 = 2, type3 = 3 };

inline int to_int(BlockType t) { return static_cast<int>(t); }

inline BlockType block_type_from_int(int t) {
  if (t < 1 || t > 3) throw std::invalid_argument("block type must be 1, 2 or 3, got " + std::to_string(t));
  return static_cast<BlockType>(t);
}

// The four teams of a block. A-slots come from the pair playing the A role.
enum class Slot { a1, a2, b1, b2 };

// A meeting of two team pairs (by pair label). a_pair plays the A role.
struct SuperMatch {
  int a_pair = 0;
  int b_pair = 0;
  BlockType type = BlockType::type1;
  bool operator==(const SuperMatch&) const = default;
};

struct TeamPair {
  int first = 0;   // plays slot 1
  int second = 0;  // plays slot 2
  bool operator==(const TeamPair&) const = default;
};

inline constexpr int block_days(BlockType t) { return t == BlockType::type3 ? 6 : 4; }

namespace detail {

struct SlotGame {
  Slot away;
  Slot home;
};

using S = Slot;

// Two games per day.
inline constexpr std::array<std::array<SlotGame, 2>, 4> kType1Days{{
    {{{S::a1, S::b1}, {S::a2, S::b2}}},
    {{{S::a1, S::b2}, {S::a2, S::b1}}},
    {{{S::b1, S::a1}, {S::b2, S::a2}}},
    {{{S::b1, S::a2}, {S::b2, S::a1}}},
}};

inline constexpr std::array<std::array<SlotGame, 2>, 4> kType2Days{{
    {{{S::a1, S::b1}, {S::a2, S::b2}}},
    {{{S::b2, S::a1}, {S::b1, S::a2}}},
    {{{S::b1, S::a1}, {S::b2, S::a2}}},
    {{{S::a1, S::b2}, {S::a2, S::b1}}},
}};

inline constexpr std::array<std::array<SlotGame, 2>, 6> kType3Days{{
    {{{S::a1, S::b1}, {S::a2, S::b2}}},
    {{{S::a1, S::a2}, {S::b2, S::b1}}},
    {{{S::b2, S::a1}, {S::b1, S::a2}}},
    {{{S::a2, S::a1}, {S::b1, S::b2}}},
    {{{S::a1, S::b2}, {S::a2, S::b1}}},
    {{{S::b1, S::a1}, {S::b2, S::a2}}},
}};

}  // namespace detail

// Day-by-day games of a block in slot terms.
inline std::span<const std::array<detail::SlotGame, 2>> block_layout(BlockType t) {
  switch (t) {
    case BlockType::type1: return detail::kType1Days;
    case BlockType::type2: return detail::kType2Days;
    case BlockType::type3: return detail::kType3Days;
  }
  throw std::invalid_argument("unknown block type");
}

// Home/away string of one slot, e.g. "aahh".
inline std::string role_profile(BlockType t, Slot s) {
  std::string out;
  for (const auto& day : block_layout(t)) {
    for (const auto& g : day) {
      if (g.away == s) out += 'a';
      if (g.home == s) out += 'h';
    }
  }
  return out;
}

// Role a pair carries into the next block. Type-1 keeps it, Type-2 swaps it,
// Type-3 ends the schedule.
inline std::optional<Role> block_role_transition(BlockType t, Role entering) {
  switch (t) {
    case BlockType::type1: return entering;
    case BlockType::type2: return other(entering);
    case BlockType::type3: return std::nullopt;
  }
  return std::nullopt;
}

// Fixtures of a block, grouped by day. Teams are A1 = a.first, A2 = a.second,
// B1 = b.first, B2 = b.second.
inline std::vector<Day> expand_block(BlockType t, TeamPair a, TeamPair b) {
  std::array<int, 4> team{a.first, a.second, b.first, b.second};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (team[i] == team[j])
        throw std::invalid_argument("block pairs overlap: team " + std::to_string(team[i]) + " appears twice");
  std::vector<Day> days;
  for (const auto& day : block_layout(t)) {
    Day out;
    for (const auto& g : day)
      out.push_back({team[static_cast<int>(g.away)], team[static_cast<int>(g.home)]});
    days.push_back(std::move(out));
  }
  return days;
}

inline std::vector<Day> expand_block(const SuperMatch& sm, std::span<const TeamPair> pairs) {
  if (sm.a_pair == sm.b_pair) throw std::invalid_argument("a block needs two distinct pairs");
  return expand_block(sm.type, pairs[sm.a_pair], pairs[sm.b_pair]);
}

// Distances among the four teams of a block.
struct BlockDistances {
  double a1_b1 = 0, a2_b1 = 0, a1_a2 = 0, a1_b2 = 0, a2_b2 = 0, b1_b2 = 0;
};

inline BlockDistances block_distances(const Instance& inst, TeamPair a, TeamPair b) {
  return {inst.d(a.first, b.first),  inst.d(a.second, b.first), inst.d(a.first, a.second),
          inst.d(a.first, b.second), inst.d(a.second, b.second), inst.d(b.first, b.second)};
}

// Travel of the four teams when the block is played in isolation, each team
// starting and ending at home.
inline double block_travel(BlockType t, const BlockDistances& d) {
  switch (t) {
    case BlockType::type1:
      return 2 * (d.a1_b1 + d.a2_b1 + d.a1_b2 + d.a2_b2) + 2 * d.a1_a2 + 2 * d.b1_b2;
    case BlockType::type2:
      return 3 * d.a1_b1 + 3 * d.a2_b1 + 2 * d.a1_a2 + 3 * d.a1_b2 + 3 * d.a2_b2;
    case BlockType::type3:
      return 5 * d.a1_b1 + 3 * d.a2_b1 + 2 * d.a1_a2 + 3 * d.a1_b2 + 5 * d.a2_b2 + 2 * d.b1_b2;
  }
  throw std::invalid_argument("unknown block type");
}

}  // namespace ttp2
