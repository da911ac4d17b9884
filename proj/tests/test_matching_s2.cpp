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


#include <gtest/gtest.h>

#include "divpop/matching_s2.hpp"
#include "divpop/popularity.hpp"
#include "oracles.hpp"

namespace divpop {
namespace {

// Rank vectors over 0/2, 1/2, 2/2.
Agent make(const std::string& id, Color c, S2Kind kind) {
  const int own = c == Color::red ? 2 : 0;
  std::vector<int> ranks(3, 0);
  if (kind == S2Kind::pure) ranks[1] = 1;
  if (kind == S2Kind::mixed) ranks[own] = 1;
  return {id, c, PreferenceOrder::from_ranks(ranks)};
}

TEST(Classify, Kinds) {
  EXPECT_EQ(classify_s2({"r", Color::red, PreferenceOrder::from_ranks({2, 1, 0})}),
            (S2Class{Color::red, S2Kind::pure}));
  EXPECT_EQ(classify_s2({"r", Color::red, PreferenceOrder::from_ranks({0, 0, 1})}),
            (S2Class{Color::red, S2Kind::mixed}));
  EXPECT_EQ(classify_s2({"b", Color::blue, PreferenceOrder::from_ranks({0, 0, 1})}),
            (S2Class{Color::blue, S2Kind::indifferent}));
  // The rank at the impossible 0/2 does not matter for a red agent.
  EXPECT_EQ(classify_s2({"r", Color::red, PreferenceOrder::from_ranks({0, 1, 1})}),
            (S2Class{Color::red, S2Kind::indifferent}));
}

TEST(Classify, RejectsOtherRoomSizes) {
  try {
    classify_s2({"r", Color::red, PreferenceOrder::from_ranks({0, 1, 2, 3})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_room_size_two);
  }
}

TEST(PairWeight, HandEvaluatedPairs) {
  const auto pr1 = make("r1", Color::red, S2Kind::pure);
  const auto pr2 = make("r2", Color::red, S2Kind::pure);
  const auto mb = make("b1", Color::blue, S2Kind::mixed);
  const auto pb = make("b2", Color::blue, S2Kind::pure);
  EXPECT_EQ(pair_weight(pr1, pr2), 2);
  EXPECT_EQ(pair_weight(pr1, mb), 1);
  EXPECT_EQ(pair_weight(pr1, pb), 0);
  EXPECT_THROW(pair_weight(pr1, pr1), Error);
}

TEST(PairWeight, DependsOnlyOnClasses) {
  oracle::Gen gen(51);
  const Game g = gen.game(2, 6, 6);
  std::vector<Agent> all(g.red);
  all.insert(all.end(), g.blue.begin(), g.blue.end());
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a.id == b.id) continue;
      const auto ca = classify_s2(a);
      const auto cb = classify_s2(b);
      const int red = (a.color == Color::red) + (b.color == Color::red);
      EXPECT_EQ(pair_weight(a, b), s2_happy(ca, red) + s2_happy(cb, red));
      EXPECT_EQ(pair_weight(a, b), oracle::happy(a, red, 2) + oracle::happy(b, red, 2));
    }
  }
}

TEST(SolveS2, SmallHandExample) {
  Game g;
  g.s = 2;
  g.red = {make("r1", Color::red, S2Kind::mixed), make("r2", Color::red, S2Kind::mixed)};
  g.blue = {make("b1", Color::blue, S2Kind::mixed), make("b2", Color::blue, S2Kind::pure)};
  const GameIndex index(g);
  const auto m = solve_s2_matching(index);
  EXPECT_EQ(m.weight, 3);
  EXPECT_EQ(happy_count(g, solve_s2(g)), 3);
  EXPECT_EQ(solve_s2_generic(index).weight, 3);
}

TEST(SolveS2, EmptyGame) {
  Game g;
  g.s = 2;
  EXPECT_TRUE(solve_s2(g).rooms.empty());
}

TEST(SolveS2, OptimalAndPopularOnRandomGames) {
  oracle::Gen gen(53);
  for (int t = 0; t < 150; ++t) {
    const int rooms = gen.uniform(1, 5);
    const Game g = gen.game(2, rooms, gen.uniform(0, 2 * rooms));
    const GameIndex index(g);
    const auto m = solve_s2_matching(index);
    int best = 0;
    for (const auto& o : oracle::partitions(g)) best = std::max(best, oracle::happy_total(g, o));
    EXPECT_EQ(m.weight, best);
    const Outcome o = solve_s2(g);
    EXPECT_EQ(happy_count(g, o), m.weight);
    EXPECT_EQ(oracle::happy_total(g, o), m.weight);
    int sum = 0;
    for (const auto& room : o.rooms) {
      sum += pair_weight(oracle::agent(g, room[0]), oracle::agent(g, room[1]));
    }
    EXPECT_EQ(sum, m.weight);
    EXPECT_EQ(solve_s2_generic(index).weight, m.weight);
    EXPECT_LE(oracle::best_challenger_margin(g, o), 0);
    EXPECT_EQ(canonicalize(g, o), o);
  }
}

TEST(Matching, GenericSolverOnRandomWeights) {
  oracle::Gen gen(57);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 * gen.uniform(0, 4);
    std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) w[a][b] = w[b][a] = gen.uniform(-5, 9);
    }
    // Exhaustive over perfect matchings.
    std::function<int(std::vector<int>)> best = [&](std::vector<int> left) {
      if (left.empty()) return 0;
      int out = INT32_MIN;
      for (std::size_t j = 1; j < left.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t t2 = 1; t2 < left.size(); ++t2) {
          if (t2 != j) rest.push_back(left[t2]);
        }
        out = std::max(out, w[left[0]][left[j]] + best(rest));
      }
      return out;
    };
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    const auto [weight, pairs] = max_weight_perfect_matching(w);
    EXPECT_EQ(weight, best(all));
    int sum = 0;
    for (auto [a, b] : pairs) sum += w[a][b];
    EXPECT_EQ(sum, weight);
  }
}

}  // namespace
}  // namespace divpop
