#pragma once

// Pairing of the m team pairs ("super-teams") into m-1 levels: every two
// super-teams meet in exactly one level, and the last level is the fixed final
// matching played as Type-3 blocks. Labels 0..m-1; even labels start in role A.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ttp2::detail {

using LabelPair = std::pair<int, int>;
using Pairing = std::vector<LabelPair>;

// Local solution for three pairs against three pairs (m = 6), found offline by
// search. Index x stands for p[x/2] when x is even, q[x/2] when odd.
inline constexpr std::array<std::array<std::array<int, 2>, 3>, 5> kSixLevels{{
    {{{0, 1}, {2, 3}, {4, 5}}},
    {{{0, 3}, {2, 5}, {4, 1}}},
    {{{0, 2}, {5, 1}, {4, 3}}},
    {{{0, 5}, {1, 3}, {4, 2}}},
    {{{0, 4}, {2, 1}, {3, 5}}},
}};

// 1-factorization of K_h (h odd, h >= 5) in which level t leaves vertex t out
// and joins only vertices whose colours differ at that level. A vertex is
// coloured `early[v]` up to level v and `late[v]` afterwards.
struct MirrorFactor {
  std::vector<int> early;
  std::vector<std::vector<LabelPair>> levels;
};

inline MirrorFactor mirror_factor(int h) {
  MirrorFactor f;
  std::vector<int> late(h);
  f.early.resize(h);
  for (int v = 0; v < h; ++v) {
    f.early[v] = (v % 2 == 0 && v >= 2) ? 1 : 0;
    late[v] = (v % 2 == 1 || v == h - 1) ? 1 : 0;
  }
  auto colour = [&](int v, int t) { return t <= v ? f.early[v] : late[v]; };

  struct Edge {
    int u, v;
    std::vector<int> levels;
  };
  std::vector<Edge> edges;
  for (int u = 0; u < h; ++u)
    for (int v = u + 1; v < h; ++v) {
      Edge e{u, v, {}};
      for (int t = 0; t < h; ++t)
        if (t != u && t != v && colour(u, t) != colour(v, t)) e.levels.push_back(t);
      edges.push_back(std::move(e));
    }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.levels.size() < b.levels.size(); });

  std::vector<std::vector<char>> busy(h, std::vector<char>(h, 0));
  std::vector<int> chosen(edges.size(), -1);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == edges.size()) return true;
    const Edge& e = edges[i];
    for (int t : e.levels) {
      if (busy[t][e.u] || busy[t][e.v]) continue;
      busy[t][e.u] = busy[t][e.v] = 1;
      chosen[i] = t;
      if (place(i + 1)) return true;
      busy[t][e.u] = busy[t][e.v] = 0;
    }
    return false;
  };
  if (!place(0)) throw ConstructionError("no mirrored factorization for h=" + std::to_string(h));

  f.levels.assign(h, {});
  for (std::size_t i = 0; i < edges.size(); ++i) f.levels[chosen[i]].push_back({edges[i].u, edges[i].v});
  for (auto& l : f.levels) std::sort(l.begin(), l.end());
  return f;
}

// Perfect matching in a bipartite graph (Kuhn). adj[j] lists right vertices in
// preference order. Returns right vertex per left vertex.
inline std::vector<int> bipartite_match(const std::vector<std::vector<int>>& adj, int h) {
  std::vector<int> owner(h, -1);
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int j) {
    for (int q : adj[j]) {
      if (seen[q]) continue;
      seen[q] = 1;
      if (owner[q] < 0 || augment(owner[q])) {
        owner[q] = j;
        return true;
      }
    }
    return false;
  };
  for (int j = 0; j < h; ++j) {
    seen.assign(h, 0);
    if (!augment(j)) throw ConstructionError("bipartite level matching failed");
  }
  std::vector<int> out(h);
  for (int q = 0; q < h; ++q) out[owner[q]] = q;
  return out;
}

// Fills levels [start, start + 2h - 1) for the super-teams P (role A) and Q (role B).
// `shift` rotates the cross levels so sibling subproblems line up their roles.
inline void plan_group(const std::vector<int>& P, const std::vector<int>& Q, int shift, int depth, int start,
                       std::vector<Pairing>& out) {
  int h = static_cast<int>(P.size());
  if (h == 1) {
    out[start].push_back({P[0], Q[0]});
    return;
  }
  if (h % 2 == 0) {
    for (int l = 0; l < h; ++l)
      for (int j = 0; j < h; ++j) out[start + l].push_back({P[j], Q[(j + l + shift) % h]});
    std::vector<int> p_even, p_odd, q_first, q_second;
    int last = (h - 1 + shift) % h;
    int parity = (1 + last) % 2;
    for (int j = 0; j < h; ++j) {
      (j % 2 == 0 ? p_even : p_odd).push_back(P[j]);
      (j % 2 == parity ? q_first : q_second).push_back(Q[j]);
    }
    plan_group(p_even, p_odd, shift, depth + 1, start + h, out);
    plan_group(q_first, q_second, shift + (1 << depth), depth + 1, start + h, out);
    return;
  }
  if (h == 3) {
    auto local = [&](int x) { return x % 2 == 0 ? P[x / 2] : Q[x / 2]; };
    for (int t = 0; t < 5; ++t)
      for (auto e : kSixLevels[t]) out[start + t].push_back({local(e[0]), local(e[1])});
    return;
  }

  // Odd h >= 5: h-1 cross levels, then h levels that each join P[t] with Q[t]
  // and play one factor of K_h inside P and its mirror image inside Q.
  MirrorFactor f = mirror_factor(h);
  std::vector<int> in_s, in_t;
  for (int v = 0; v < h; ++v) (f.early[v] ? in_s : in_t).push_back(v);
  std::vector<int> last_cross(h);
  for (const auto* group : {&in_s, &in_t})
    for (std::size_t i = 0; i < group->size(); ++i)
      last_cross[(*group)[i]] = (*group)[(i + 1) % group->size()];

  std::vector<std::vector<int>> adj(h);
  for (int j = 0; j < h; ++j)
    for (int q = 0; q < h; ++q)
      if (q != j && q != last_cross[j]) adj[j].push_back(q);
  std::vector<std::vector<int>> cross;
  for (int l = 0; l < h - 2; ++l) {
    auto mt = bipartite_match(adj, h);
    for (int j = 0; j < h; ++j) adj[j].erase(std::find(adj[j].begin(), adj[j].end(), mt[j]));
    cross.push_back(std::move(mt));
  }
  cross.push_back(last_cross);
  for (int l = 0; l < h - 1; ++l)
    for (int j = 0; j < h; ++j) out[start + l].push_back({P[j], Q[cross[l][j]]});
  for (int t = 0; t < h; ++t) {
    auto& level = out[start + h - 1 + t];
    level.push_back({P[t], Q[t]});
    for (auto [u, v] : f.levels[t]) {
      level.push_back({P[u], P[v]});
      level.push_back({Q[u], Q[v]});
    }
  }
}

inline void check_round_robin(const std::vector<Pairing>& levels, int m) {
  std::vector<std::vector<char>> met(m, std::vector<char>(m, 0));
  for (std::size_t t = 0; t < levels.size(); ++t) {
    std::vector<char> used(m, 0);
    if (static_cast<int>(levels[t].size()) * 2 != m)
      throw ConstructionError("level " + std::to_string(t) + " does not cover every super-team");
    for (auto [a, b] : levels[t]) {
      if (used[a] || used[b] || a == b) throw ConstructionError("level " + std::to_string(t) + " reuses a super-team");
      if (met[a][b]) throw ConstructionError("super-teams meet twice");
      used[a] = used[b] = 1;
      met[a][b] = met[b][a] = 1;
    }
  }
}

// Levels 0..m-2 over labels; the last entry is the final matching. Pairs in
// level 0 are written (role A, role B).
inline std::vector<Pairing> canonical_pairings(int m) {
  if (m < 4 || m % 2 != 0)
    throw std::invalid_argument("need an even number of at least 4 super-teams, got " + std::to_string(m));
  std::vector<int> P, Q;
  for (int j = 0; j < m / 2; ++j) {
    P.push_back(2 * j);
    Q.push_back(2 * j + 1);
  }
  std::vector<Pairing> out(m - 1);
  plan_group(P, Q, 0, 0, 0, out);
  check_round_robin(out, m);
  return out;
}

}  // namespace ttp2::detail
