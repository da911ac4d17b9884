// Copyright 2026 The divpop Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Popular outcomes for rooms of two. Every agent has only two possible
// fractions, so it is either happy or not in any pairing, and a pairing
// that maximizes the number of happy agents is popular. Pair weights only
// depend on six agent kinds, which makes the optimum a count problem: pick
// the number of mixed (red, blue) rooms and fill its slots greedily.

#ifndef DIVPOP_MATCHING_S2_HPP
#define DIVPOP_MATCHING_S2_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divpop/error.hpp"
#include "divpop/game.hpp"

namespace divpop {

enum class S2Kind { pure, mixed, indifferent };

inline std::string_view to_string(S2Kind k) {
  switch (k) {
    case S2Kind::pure: return "pure";
    case S2Kind::mixed: return "mixed";
    case S2Kind::indifferent: return "indifferent";
  }
  return "?";
}

struct S2Class {
  Color color = Color::red;
  S2Kind kind = S2Kind::indifferent;

  friend bool operator==(S2Class, S2Class) = default;
};

struct WeightedMatching {
  std::vector<std::pair<std::string, std::string>> pairs;
  int weight = 0;
};

inline void require_s2(int s) {
  if (s != 2) {
    throw Error(ErrorCode::not_room_size_two,
                "room size is " + std::to_string(s) + ", expected 2");
  }
}

inline S2Class classify_s2(const Agent& a) {
  require_s2(a.preference.room_size());
  // Own-color room versus mixed room.
  const int own = a.color == Color::red ? 2 : 0;
  const int pure = a.preference.rank(own);
  const int mixed = a.preference.rank(1);
  S2Class c{a.color, S2Kind::indifferent};
  if (pure < mixed) c.kind = S2Kind::pure;
  if (mixed < pure) c.kind = S2Kind::mixed;
  return c;
}

/// Whether an agent of this class is happy in a room with `red` reds.
inline bool s2_happy(S2Class c, int red) {
  const bool mixed_room = red == 1;
  switch (c.kind) {
    case S2Kind::indifferent: return true;
    case S2Kind::mixed: return mixed_room;
    case S2Kind::pure: return !mixed_room;
  }
  return false;
}

inline int pair_weight(const Agent& a, const Agent& b) {
  if (a.id == b.id) throw Error(ErrorCode::domain, "agent '" + a.id + "' paired with itself");
  const S2Class ca = classify_s2(a);
  const S2Class cb = classify_s2(b);
  const int red = (a.color == Color::red) + (b.color == Color::red);
  return s2_happy(ca, red) + s2_happy(cb, red);
}

/// Agents sitting at one of their most preferred possible fractions.
inline int happy_count(const GameIndex& index, const Outcome& o) {
  require_s2(index.room_size());
  const auto f = index.fractions(index.checked_partition(o));
  int happy = 0;
  for (int i = 0; i < index.agent_count(); ++i) happy += index.rank(i, f[i]) == 0;
  return happy;
}

inline int happy_count(const Game& g, const Outcome& o) {
  require_s2(g.s);
  return happy_count(GameIndex(g), o);
}

namespace detail {

struct S2Plan {
  int weight = -1;
  Partition canonical;
};

/// Happy agents of one color when `x` of them sit in mixed rooms; the slot
/// order (mixed-loving, indifferent, pure) is optimal.
inline int s2_color_happy(const std::array<int, 3>& by_kind, int x) {
  const int pure = by_kind[0];
  const int mixed = by_kind[1];
  const int indiff = by_kind[2];
  const int pure_in_mixed = std::max(0, x - mixed - indiff);
  return std::min(x, mixed) + indiff + pure - pure_in_mixed;
}

}  // namespace detail

/// Maximum-happiness pairing computed in count space.
inline WeightedMatching solve_s2_matching(const GameIndex& index) {
  require_s2(index.room_size());
  // Members per color and kind, ascending id (index order).
  std::array<std::array<std::vector<int>, 3>, 2> members;
  for (int i = 0; i < index.agent_count(); ++i) {
    const int own = index.is_red(i) ? 2 : 0;
    const int pure = index.rank(i, own);
    const int mixed = index.rank(i, 1);
    const int kind = pure < mixed ? 0 : (mixed < pure ? 1 : 2);
    members[index.is_red(i) ? 0 : 1][kind].push_back(i);
  }
  std::array<std::array<int, 3>, 2> counts{};
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < 3; ++k) counts[c][k] = static_cast<int>(members[c][k].size());
  }
  const int reds = index.red_count();
  const int blues = index.blue_count();

  auto materialize = [&](int x) {
    Partition p;
    std::array<std::vector<int>, 2> mixed_slot;
    std::array<std::vector<int>, 2> rest;
    for (int c = 0; c < 2; ++c) {
      std::vector<int> order;
      for (int k : {1, 2, 0}) {
        order.insert(order.end(), members[c][k].begin(), members[c][k].end());
      }
      mixed_slot[c].assign(order.begin(), order.begin() + x);
      rest[c].assign(order.begin() + x, order.end());
      std::sort(rest[c].begin(), rest[c].end());
    }
    for (int t = 0; t < x; ++t) p.rooms.push_back({mixed_slot[0][t], mixed_slot[1][t]});
    for (int c = 0; c < 2; ++c) {
      for (std::size_t t = 0; t + 1 < rest[c].size(); t += 2) {
        p.rooms.push_back({rest[c][t], rest[c][t + 1]});
      }
    }
    index.canonicalize(p);
    return p;
  };

  detail::S2Plan best;
  for (int x = reds % 2; x <= std::min(reds, blues); x += 2) {
    const int w = detail::s2_color_happy(counts[0], x) + detail::s2_color_happy(counts[1], x);
    if (w < best.weight) continue;
    Partition p = materialize(x);
    if (w > best.weight || p < best.canonical) best = {w, std::move(p)};
  }
  WeightedMatching out;
  out.weight = std::max(best.weight, 0);
  for (const auto& room : best.canonical.rooms) {
    out.pairs.emplace_back(index.id(room[0]), index.id(room[1]));
  }
  return out;
}

inline Outcome matching_outcome(const WeightedMatching& m) {
  Outcome o;
  for (const auto& [a, b] : m.pairs) o.rooms.push_back({a, b});
  return o;
}

inline Outcome solve_s2(const Game& g) {
  require_s2(g.s);
  const GameIndex index(g);
  return canonicalize(index, matching_outcome(solve_s2_matching(index)));
}

/// Exact maximum-weight perfect matching on a complete graph by subset DP.
/// Generic cross-check backend; n must be even and at most 24.
inline std::pair<int, std::vector<std::pair<int, int>>> max_weight_perfect_matching(
    const std::vector<std::vector<int>>& weight) {
  const int n = static_cast<int>(weight.size());
  if (n % 2 != 0) throw Error(ErrorCode::domain, "odd vertex count");
  if (n > 24) throw Error(ErrorCode::resource_limit, "subset DP limited to 24 vertices");
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  constexpr int kUnset = std::numeric_limits<int>::min();
  // best[mask]: best weight matching the vertices not in mask.
  std::vector<int> best(static_cast<std::size_t>(full) + 1, kUnset);
  std::vector<std::uint8_t> partner(static_cast<std::size_t>(full) + 1, 0);
  best[full] = 0;
  for (std::uint32_t mask = full; mask-- > 0;) {
    if (std::popcount(mask) % 2 != n % 2) continue;
    const int i = std::countr_one(mask);
    for (int j = i + 1; j < n; ++j) {
      if (mask & (1u << j)) continue;
      const std::uint32_t next = mask | (1u << i) | (1u << j);
      if (best[next] == kUnset) continue;
      const int w = weight[i][j] + best[next];
      if (w > best[mask]) {
        best[mask] = w;
        partner[mask] = static_cast<std::uint8_t>(j);
      }
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::uint32_t mask = 0; mask != full;) {
    const int i = std::countr_one(mask);
    const int j = partner[mask];
    pairs.emplace_back(i, j);
    mask |= (1u << i) | (1u << j);
  }
  return {best[0], pairs};
}

/// Same optimum through the generic matching backend.
inline WeightedMatching solve_s2_generic(const GameIndex& index) {
  require_s2(index.room_size());
  const int n = index.agent_count();
  std::vector<std::vector<int>> w(static_cast<std::size_t>(n), std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int red = index.is_red(a) + index.is_red(b);
      w[a][b] = w[b][a] = (index.rank(a, red) == 0) + (index.rank(b, red) == 0);
    }
  }
  const auto [weight, pairs] = max_weight_perfect_matching(w);
  WeightedMatching out;
  out.weight = weight;
  for (const auto& [a, b] : pairs) out.pairs.emplace_back(index.id(a), index.id(b));
  return out;
}

}  // namespace divpop

#endif  // DIVPOP_MATCHING_S2_HPP
