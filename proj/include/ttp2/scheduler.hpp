#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "matching.hpp"
#include "planner.hpp"

namespace ttp2 {

inline constexpr int kMaxScheduleTeams = 32;

// One level of the construction: the super-matches played in the same four
// (or, for the final level, six) days. round and level are 1-based.
struct LevelPlan {
  int round = 1;
  int level = 1;
  std::vector<SuperMatch> super_matches;
  bool operator==(const LevelPlan&) const = default;
};

struct Schedule {
  int n = 0;
  std::vector<Day> days;
  std::vector<LevelPlan> levels;
  std::vector<TeamPair> team_pairs;     // indexed by pair label
  std::vector<VertexPair> super_pairs;  // final matching over pair labels
  int flips = 0;
  std::optional<PairMatching> team_matching;  // set by build_schedule
};

// Role of every pair label before each level.
using RoleState = std::vector<Role>;

struct FlipAssignment {
  std::vector<LevelPlan> levels;  // typed and oriented (a_pair holds role A)
  std::vector<RoleState> roles;   // roles[t] = roles entering level t
  int flips = 0;
};

struct RoleConflict {
  int level_index = 0;  // 0-based position in the level list
  int first = 0;
  int second = 0;
  std::string message;
};

// Levels per round: ceil((m / 2^(i-1) - 1) / 2) for round i, m = n/2.
inline std::vector<int> round_sizes(int n) {
  int m = n / 2;
  std::vector<int> sizes;
  int total = 0;
  for (int i = 1; total < m - 1; ++i) {
    std::int64_t p = std::int64_t{1} << (i - 1);
    std::int64_t num = m - p, den = 2 * p;
    int size = num <= 0 ? 1 : static_cast<int>((num + den - 1) / den);
    size = std::max(1, std::min(size, m - 1 - total));
    sizes.push_back(size);
    total += size;
  }
  return sizes;
}

namespace detail {

inline void number_levels(std::vector<LevelPlan>& levels, int n) {
  auto sizes = round_sizes(n);
  std::size_t k = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r)
    for (int l = 0; l < sizes[r] && k < levels.size(); ++l, ++k) {
      levels[k].round = static_cast<int>(r) + 1;
      levels[k].level = l + 1;
    }
}

inline std::vector<VertexPair> final_pairs(const std::vector<Pairing>& plan) {
  return normalized_pairs(plan.back());
}

inline void check_label_matching(const std::vector<VertexPair>& pairs, int m, const char* what) {
  std::vector<char> seen(m, 0);
  if (static_cast<int>(pairs.size()) * 2 != m)
    throw std::invalid_argument(std::string(what) + " must pair all " + std::to_string(m) + " labels");
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= m || b >= m || a == b || seen[a] || seen[b])
      throw std::invalid_argument(std::string(what) + " is not a perfect matching of the labels");
    seen[a] = seen[b] = 1;
  }
}

// Chooses which super-matches of each level are played as Type-2 (swapping
// roles) so that every later super-match pairs an A with a B. Within each
// group of interlocked choices the side with fewer swaps is preferred; an
// exact search over role states backs this up so the total never exceeds
// the budget when any assignment can meet it.
class FlipPlanner {
 public:
  FlipPlanner(std::vector<Pairing> levels, int m) : levels_(std::move(levels)), m_(m) {}

  // Role bit set = role A.
  std::vector<std::vector<int>> options(int t, std::uint64_t roles) const {
    const Pairing& cur = levels_[t];
    const Pairing& next = levels_[t + 1];
    int k = static_cast<int>(cur.size());
    std::vector<int> match_of(m_);
    for (int i = 0; i < k; ++i) match_of[cur[i].first] = match_of[cur[i].second] = i;

    // next-level pair (a, b) needs flip(match(a)) xor flip(match(b)) = 1 xor role(a) xor role(b)
    std::vector<std::vector<std::pair<int, int>>> adj(k);
    for (auto [a, b] : next) {
      int rhs = 1 ^ static_cast<int>(roles >> a & 1) ^ static_cast<int>(roles >> b & 1);
      adj[match_of[a]].push_back({match_of[b], rhs});
      adj[match_of[b]].push_back({match_of[a], rhs});
    }
    std::vector<int> side(k, -1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;  // (preferred, alternative)
    for (int s = 0; s < k; ++s) {
      if (side[s] >= 0) continue;
      std::vector<int> comp{s}, stack{s};
      side[s] = 0;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [y, r] : adj[x]) {
          if (side[y] < 0) {
            side[y] = side[x] ^ r;
            comp.push_back(y);
            stack.push_back(y);
          } else if (side[y] != (side[x] ^ r)) {
            throw ConstructionError("inconsistent role constraints at level " + std::to_string(t));
          }
        }
      }
      std::vector<int> ones, zeros;
      for (int x : comp) (side[x] ? ones : zeros).push_back(x);
      // on a tie the match whose A member has the smallest label stays unflipped
      auto a_member = [&](int x) { return (roles >> cur[x].first & 1) ? cur[x].first : cur[x].second; };
      int key = *std::min_element(comp.begin(), comp.end(),
                                  [&](int x, int y) { return a_member(x) < a_member(y); });
      bool key_in_ones = std::find(ones.begin(), ones.end(), key) != ones.end();
      if (ones.size() < zeros.size() || (ones.size() == zeros.size() && !key_in_ones))
        groups.push_back({ones, zeros});
      else
        groups.push_back({zeros, ones});
    }

    int c = static_cast<int>(groups.size());
    std::vector<std::uint32_t> masks(std::size_t{1} << c);
    for (std::uint32_t mask = 0; mask < masks.size(); ++mask) masks[mask] = mask;
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::vector<int>> out;
    out.reserve(masks.size());
    for (auto mask : masks) {
      std::vector<int> flips;
      for (int i = 0; i < c; ++i) {
        const auto& pick = (mask >> i & 1) ? groups[i].second : groups[i].first;
        flips.insert(flips.end(), pick.begin(), pick.end());
      }
      std::sort(flips.begin(), flips.end());
      out.push_back(std::move(flips));
    }
    return out;
  }

  std::uint64_t toggled(int t, std::uint64_t roles, const std::vector<int>& flips) const {
    for (int x : flips) roles ^= (std::uint64_t{1} << levels_[t][x].first) | (std::uint64_t{1} << levels_[t][x].second);
    return roles;
  }

  // Fewest flips needed from level t onward.
  int best(int t, std::uint64_t roles) {
    if (t + 1 >= static_cast<int>(levels_.size())) return 0;
    auto key = std::make_pair(t, roles);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int value = std::numeric_limits<int>::max();
    for (const auto& flips : options(t, roles)) {
      int cand = static_cast<int>(flips.size()) + best(t + 1, toggled(t, roles, flips));
      value = std::min(value, cand);
    }
    memo_[key] = value;
    return value;
  }

  // Flip sets per non-final level, or nothing if the budget cannot be met.
  std::optional<std::vector<std::vector<int>>> choose(std::uint64_t roles, int budget) {
    if (best(0, roles) > budget) return std::nullopt;
    std::vector<std::vector<int>> chosen;
    int used = 0;
    for (int t = 0; t + 1 < static_cast<int>(levels_.size()); ++t) {
      bool taken = false;
      for (const auto& flips : options(t, roles)) {
        auto next = toggled(t, roles, flips);
        if (used + static_cast<int>(flips.size()) + best(t + 1, next) <= budget) {
          used += static_cast<int>(flips.size());
          roles = next;
          chosen.push_back(flips);
          taken = true;
          break;
        }
      }
      if (!taken) return std::nullopt;
    }
    return chosen;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  std::vector<Pairing> levels_;
  int m_;
  std::map<std::pair<int, std::uint64_t>, int> memo_;
};

}  // namespace detail

// Untyped level plan for n teams whose final level is exactly `super_pairs`
// (pair labels 0..n/2-1). Level 1 lists each super-match as (role A, role B).
inline std::vector<LevelPlan> plan_levels(int n, const std::vector<VertexPair>& super_pairs) {
  require_multiple_of_four(n);
  if (n > 2 * 64) throw std::invalid_argument("n too large for the level planner");
  int m = n / 2;
  detail::check_label_matching(super_pairs, m, "super pairing");
  auto plan = detail::canonical_pairings(m);

  // relabel so the canonical final matching becomes super_pairs
  auto canon = detail::final_pairs(plan);
  auto wanted = normalized_pairs(super_pairs);
  std::vector<int> to(m);
  for (std::size_t k = 0; k < canon.size(); ++k) {
    to[canon[k].first] = wanted[k].first;
    to[canon[k].second] = wanted[k].second;
  }
  std::vector<LevelPlan> levels;
  for (const auto& pairing : plan) {
    LevelPlan lp;
    for (auto [a, b] : pairing) lp.super_matches.push_back({to[a], to[b], BlockType::type1});
    levels.push_back(std::move(lp));
  }
  for (auto& sm : levels.back().super_matches) sm.type = BlockType::type3;
  detail::number_levels(levels, n);
  return levels;
}

// Types every level so that roles stay consistent, using at most
// ceil(flip_budget(n)) Type-2 blocks. Initial roles come from level 1's
// orientation. Throws ConstructionError if the budget cannot be met.
inline FlipAssignment assign_flips(const std::vector<LevelPlan>& levels, int n) {
  require_multiple_of_four(n);
  int m = n / 2;
  if (m > 64) throw std::invalid_argument("too many super-teams for role tracking");
  if (static_cast<int>(levels.size()) != m - 1)
    throw std::invalid_argument("expected " + std::to_string(m - 1) + " levels, got " + std::to_string(levels.size()));

  std::vector<detail::Pairing> pairings;
  for (const auto& lp : levels) {
    detail::Pairing p;
    for (const auto& sm : lp.super_matches) p.push_back({sm.a_pair, sm.b_pair});
    detail::check_label_matching(p, m, "level");
    pairings.push_back(std::move(p));
  }
  std::uint64_t roles = 0;
  for (auto [a, b] : pairings.front()) roles |= std::uint64_t{1} << a;

  detail::FlipPlanner planner(pairings, m);
  int budget = flip_budget_ceil(n);
  auto chosen = planner.choose(roles, budget);
  if (!chosen)
    throw ConstructionError("cannot type the levels within " + std::to_string(budget) + " flips (best is " +
                            std::to_string(planner.best(0, roles)) + ")");

  FlipAssignment out;
  auto to_state = [m](std::uint64_t bits) {
    RoleState s(m);
    for (int i = 0; i < m; ++i) s[i] = (bits >> i & 1) ? Role::A : Role::B;
    return s;
  };
  for (std::size_t t = 0; t < pairings.size(); ++t) {
    out.roles.push_back(to_state(roles));
    LevelPlan lp{levels[t].round, levels[t].level, {}};
    bool last = t + 1 == pairings.size();
    for (std::size_t i = 0; i < pairings[t].size(); ++i) {
      auto [a, b] = pairings[t][i];
      if (!(roles >> a & 1)) std::swap(a, b);
      BlockType type = BlockType::type3;
      if (!last) {
        const auto& f = (*chosen)[t];
        type = std::binary_search(f.begin(), f.end(), static_cast<int>(i)) ? BlockType::type2 : BlockType::type1;
      }
      lp.super_matches.push_back({a, b, type});
    }
    if (!last) {
      roles = planner.toggled(static_cast<int>(t), roles, (*chosen)[t]);
      out.flips += static_cast<int>((*chosen)[t].size());
    }
    out.levels.push_back(std::move(lp));
  }
  return out;
}

// Replays roles through typed levels and reports the first super-match that
// does not pair role A (as a_pair) with role B.
inline std::optional<RoleConflict> find_role_conflict(const std::vector<LevelPlan>& levels, int n) {
  int m = n / 2;
  std::vector<std::optional<Role>> role(m);
  for (const auto& sm : levels.empty() ? std::vector<SuperMatch>{} : levels.front().super_matches) {
    role.at(sm.a_pair) = Role::A;
    role.at(sm.b_pair) = Role::B;
  }
  for (std::size_t t = 0; t < levels.size(); ++t) {
    const auto& lp = levels[t];
    for (const auto& sm : lp.super_matches) {
      auto ra = role.at(sm.a_pair), rb = role.at(sm.b_pair);
      if (!ra || !rb || *ra != Role::A || *rb != Role::B) {
        std::ostringstream os;
        os << "round " << lp.round << " level " << lp.level << ": M" << sm.a_pair + 1 << " (role "
           << (ra ? to_char(*ra) : '?') << ") meets M" << sm.b_pair + 1 << " (role " << (rb ? to_char(*rb) : '?')
           << ")";
        return RoleConflict{static_cast<int>(t), sm.a_pair, sm.b_pair, os.str()};
      }
    }
    bool final_level = t + 1 == levels.size();
    for (const auto& sm : lp.super_matches) {
      if (sm.type == BlockType::type3 && !final_level) {
        return RoleConflict{static_cast<int>(t), sm.a_pair, sm.b_pair, "Type-3 block before the final level"};
      }
      if (auto next = block_role_transition(sm.type, Role::A)) {
        role[sm.a_pair] = *next;
        role[sm.b_pair] = other(*next);
      }
    }
  }
  return std::nullopt;
}

inline int count_flips(const std::vector<LevelPlan>& levels) {
  int flips = 0;
  for (const auto& lp : levels)
    for (const auto& sm : lp.super_matches) flips += sm.type == BlockType::type2;
  return flips;
}

inline int count_flips(const Schedule& s) { return count_flips(s.levels); }

// Lays typed levels out day by day: four days per level, six for the last.
inline std::vector<Day> expand_levels(const std::vector<LevelPlan>& levels, const std::vector<TeamPair>& pairs) {
  std::vector<Day> days;
  for (const auto& lp : levels) {
    std::size_t first = days.size();
    for (const auto& sm : lp.super_matches) {
      auto block = expand_block(sm, pairs);
      if (days.size() < first + block.size()) days.resize(first + block.size());
      for (std::size_t d = 0; d < block.size(); ++d)
        days[first + d].insert(days[first + d].end(), block[d].begin(), block[d].end());
    }
  }
  return days;
}

// Full construction for n divisible by 4, 8 <= n <= 32.
inline Schedule build_schedule(const Instance& inst) {
  int n = inst.n();
  if (n % 4 != 0) throw std::invalid_argument("n must be divisible by 4, got " + std::to_string(n));
  if (n < 8) throw std::invalid_argument("n must be at least 8, got " + std::to_string(n));
  if (n > kMaxScheduleTeams)
    throw std::invalid_argument("n above " + std::to_string(kMaxScheduleTeams) +
                                " is outside the exact matching range");
  int m = n / 2;

  PairMatching teams = team_matching(inst);
  PairMatching supers = super_pair_matching(build_super_graph(inst, teams));

  // Label the pairs so the super matching lands on the canonical final level.
  auto plan = detail::canonical_pairings(m);
  auto canon = detail::final_pairs(plan);
  std::vector<int> pair_of_label(m);
  for (std::size_t k = 0; k < canon.size(); ++k) {
    pair_of_label[canon[k].first] = supers.pairs[k].first;
    pair_of_label[canon[k].second] = supers.pairs[k].second;
  }

  Schedule s;
  s.n = n;
  for (int label = 0; label < m; ++label) {
    auto [lo, hi] = teams.pairs[pair_of_label[label]];
    s.team_pairs.push_back({lo, hi});
  }
  s.super_pairs = canon;
  s.team_matching = teams;

  auto typed = assign_flips(plan_levels(n, canon), n);
  if (auto conflict = find_role_conflict(typed.levels, n))
    throw ConstructionError("role conflict after typing: " + conflict->message);
  s.levels = std::move(typed.levels);
  s.flips = typed.flips;
  s.days = expand_levels(s.levels, s.team_pairs);
  if (static_cast<int>(s.days.size()) != 2 * n - 2)
    throw ConstructionError("expected " + std::to_string(2 * n - 2) + " days, built " + std::to_string(s.days.size()));
  return s;
}

// "M_i --Type-t--> M_j" rows, grouped by round and level.
inline void write_level_table(const std::vector<LevelPlan>& levels, std::ostream& out) {
  for (const auto& lp : levels) {
    out << "Round " << lp.round << ", Level " << lp.level << '\n';
    for (const auto& sm : lp.super_matches)
      out << "  M" << sm.a_pair + 1 << " --Type-" << to_int(sm.type) << "--> M" << sm.b_pair + 1 << '\n';
  }
}

inline std::string level_table(const std::vector<LevelPlan>& levels) {
  std::ostringstream os;
  write_level_table(levels, os);
  return os.str();
}

}  // namespace ttp2
