#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "instance.hpp"
#include "matrix.hpp"

namespace ttp2 {

using VertexPair = std::pair<int, int>;

// A perfect matching. Pairs are stored as (lower, higher) and sorted, so two
// matchings with the same pairs compare equal.
struct PairMatching {
  std::vector<VertexPair> pairs;
  double weight = 0.0;

  int partner(int v) const {
    for (auto [a, b] : pairs) {
      if (a == v) return b;
      if (b == v) return a;
    }
    throw std::out_of_range("vertex " + std::to_string(v) + " is not matched");
  }

  bool operator==(const PairMatching&) const = default;
};

enum class MatchingMethod { automatic, subset_dp, branch_and_bound };

inline constexpr int kSubsetDpLimit = 24;
inline constexpr int kMaxMatchingVertices = 32;

inline std::vector<VertexPair> normalized_pairs(std::vector<VertexPair> pairs) {
  for (auto& p : pairs)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Summed in sorted pair order so equal pair sets always give bit-identical weights.
inline double matching_weight(const Matrix& w, const std::vector<VertexPair>& pairs) {
  double total = 0.0;
  for (auto [a, b] : normalized_pairs(pairs)) total += w(a, b);
  return total;
}

namespace detail {

inline void check_matching_input(const Matrix& w) {
  int m = w.size();
  if (m == 0) throw std::invalid_argument("matching needs at least two vertices, got zero");
  if (m % 2 != 0)
    throw std::invalid_argument("perfect matching needs an even vertex count, got " + std::to_string(m));
  if (m > kMaxMatchingVertices)
    throw std::invalid_argument("exact matching supports at most " + std::to_string(kMaxMatchingVertices) +
                                " vertices, got " + std::to_string(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!std::isfinite(w(i, j)) || w(i, j) < 0.0)
        throw std::invalid_argument("matching weights must be finite and non-negative");
      if (w(i, j) != w(j, i)) throw std::invalid_argument("matching weights must be symmetric");
    }
}

inline PairMatching finish(const Matrix& w, std::vector<VertexPair> pairs) {
  PairMatching out;
  out.pairs = normalized_pairs(std::move(pairs));
  out.weight = matching_weight(w, out.pairs);
  return out;
}

// Exact DP over the set of still-unmatched vertices. The lowest unmatched
// vertex is always matched next, partners tried in increasing index, and only
// strict improvements are kept: that yields the lexicographically smallest
// optimal pair list.
inline PairMatching subset_dp_matching(const Matrix& w) {
  int m = w.size();
  std::uint32_t full = m == 32 ? 0xffffffffu : ((1u << m) - 1);
  std::vector<double> best(static_cast<std::size_t>(full) + 1, -1.0);
  std::vector<std::uint8_t> choice(best.size(), 0);
  best[0] = 0.0;

  auto solve = [&](auto&& self, std::uint32_t open) -> double {
    if (best[open] >= 0.0) return best[open];
    int v = std::countr_zero(open);
    std::uint32_t rest = open & ~(1u << v);
    double value = std::numeric_limits<double>::infinity();
    std::uint8_t pick = 0;
    for (std::uint32_t bits = rest; bits; bits &= bits - 1) {
      int u = std::countr_zero(bits);
      double cand = w(v, u) + self(self, rest & ~(1u << u));
      if (cand < value) {
        value = cand;
        pick = static_cast<std::uint8_t>(u);
      }
    }
    best[open] = value;
    choice[open] = pick;
    return value;
  };
  solve(solve, full);

  std::vector<VertexPair> pairs;
  for (std::uint32_t open = full; open;) {
    int v = std::countr_zero(open);
    int u = choice[open];
    pairs.emplace_back(v, u);
    open &= ~((1u << v) | (1u << u));
  }
  return finish(w, std::move(pairs));
}

// Depth-first branch-and-bound. Branches on the lowest unmatched vertex,
// cheapest partner first. The bound is half the sum of each unmatched
// vertex's cheapest edge to another unmatched vertex.
class BranchAndBoundMatcher {
 public:
  explicit BranchAndBoundMatcher(const Matrix& w) : w_(w), m_(w.size()), by_cost_(m_) {
    for (int v = 0; v < m_; ++v) {
      for (int u = 0; u < m_; ++u)
        if (u != v) by_cost_[v].push_back(u);
      std::sort(by_cost_[v].begin(), by_cost_[v].end(), [&](int a, int b) {
        return w_(v, a) != w_(v, b) ? w_(v, a) < w_(v, b) : a < b;
      });
    }
    scale_ = 1.0;
    for (double x : w.values()) scale_ = std::max(scale_, x);
  }

  PairMatching run() {
    greedy();
    std::uint64_t full = (m_ == 64) ? ~0ull : ((1ull << m_) - 1);
    path_.clear();
    search(full, 0.0);
    return finish(w_, incumbent_);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void greedy() {
    std::uint64_t open = (1ull << m_) - 1;
    incumbent_.clear();
    double total = 0.0;
    while (open) {
      int v = std::countr_zero(open);
      for (int u : by_cost_[v])
        if (open >> u & 1) {
          incumbent_.emplace_back(v, u);
          total += w_(v, u);
          open &= ~((1ull << v) | (1ull << u));
          break;
        }
    }
    incumbent_weight_ = total;
  }

  double bound(std::uint64_t open) const {
    double sum = 0.0;
    for (std::uint64_t bits = open; bits; bits &= bits - 1) {
      int v = std::countr_zero(bits);
      for (int u : by_cost_[v])
        if (open >> u & 1) {
          sum += w_(v, u);
          break;
        }
    }
    return 0.5 * sum;
  }

  // Sign of comparing the current partial pair list against the incumbent's prefix.
  int prefix_order() const {
    for (std::size_t i = 0; i < path_.size(); ++i) {
      if (path_[i] < incumbent_[i]) return -1;
      if (incumbent_[i] < path_[i]) return 1;
    }
    return 0;
  }

  void search(std::uint64_t open, double partial) {
    ++nodes_;
    if (!open) {
      // path_ is in sorted order already: each pair starts at the lowest open vertex
      if (partial < incumbent_weight_ || (partial == incumbent_weight_ && path_ < incumbent_)) {
        incumbent_ = path_;
        incumbent_weight_ = partial;
      }
      return;
    }
    double lb = partial + bound(open);
    double slack = 1e-12 * scale_;
    if (lb > incumbent_weight_ + slack) return;
    // Only a tie is still possible; it matters only if we could end up lexicographically smaller.
    if (lb >= incumbent_weight_ - slack && prefix_order() > 0) return;

    int v = std::countr_zero(open);
    for (int u : by_cost_[v]) {
      if (!(open >> u & 1)) continue;
      path_.emplace_back(v, u);
      search(open & ~((1ull << v) | (1ull << u)), partial + w_(v, u));
      path_.pop_back();
    }
  }

  const Matrix& w_;
  int m_;
  std::vector<std::vector<int>> by_cost_;
  double scale_;
  std::vector<VertexPair> incumbent_;
  double incumbent_weight_ = 0.0;
  std::vector<VertexPair> path_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// Exact minimum-weight perfect matching on a complete graph with an even
// number of vertices (at most 32). `method` is a test hook: automatic picks
// the subset DP up to 24 vertices and branch-and-bound above.
inline PairMatching min_weight_perfect_matching(const Matrix& w,
                                                MatchingMethod method = MatchingMethod::automatic) {
  detail::check_matching_input(w);
  if (method == MatchingMethod::automatic)
    method = w.size() <= kSubsetDpLimit ? MatchingMethod::subset_dp : MatchingMethod::branch_and_bound;
  if (method == MatchingMethod::subset_dp) {
    if (w.size() > kSubsetDpLimit)
      throw std::invalid_argument("subset DP supports at most " + std::to_string(kSubsetDpLimit) + " vertices");
    return detail::subset_dp_matching(w);
  }
  return detail::BranchAndBoundMatcher(w).run();
}

inline PairMatching team_matching(const Instance& inst, MatchingMethod method = MatchingMethod::automatic) {
  return min_weight_perfect_matching(inst.distances(), method);
}

// Complete graph on team pairs. The weight between pairs i and j is the sum
// of the four distances between a member of i and a member of j.
struct SuperGraph {
  std::vector<VertexPair> members;  // members[i] = the two teams of pair i
  Matrix weight;
};

inline SuperGraph build_super_graph(const Instance& inst, const PairMatching& teams) {
  int m = static_cast<int>(teams.pairs.size());
  if (m * 2 != inst.n()) throw std::invalid_argument("team matching does not cover the instance");
  SuperGraph g{teams.pairs, Matrix(m)};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [a1, a2] = teams.pairs[i];
      auto [b1, b2] = teams.pairs[j];
      g.weight(i, j) = g.weight(j, i) = inst.d(a1, b1) + inst.d(a1, b2) + inst.d(a2, b1) + inst.d(a2, b2);
    }
  return g;
}

inline PairMatching super_pair_matching(const SuperGraph& g,
                                        MatchingMethod method = MatchingMethod::automatic) {
  return min_weight_perfect_matching(g.weight, method);
}

}  // namespace ttp2
