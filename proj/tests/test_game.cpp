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

#include <set>

#include "divpop/game.hpp"
#include "divpop/reductions.hpp"
#include "oracles.hpp"

namespace divpop {
namespace {

Agent red(std::string id, std::vector<int> ranks) {
  return {std::move(id), Color::red, PreferenceOrder::from_ranks(std::move(ranks))};
}
Agent blue(std::string id, std::vector<int> ranks) {
  return {std::move(id), Color::blue, PreferenceOrder::from_ranks(std::move(ranks))};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

TEST(Fraction, ThetaAndOrdering) {
  EXPECT_EQ(theta(2, 4), (Fraction{1, 2}));
  EXPECT_LT(theta(1, 3), theta(2, 3));
  EXPECT_EQ(code_of([] { theta(4, 3); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { theta(-1, 3); }), ErrorCode::domain);
}

TEST(Fraction, ImpossibleFractions) {
  EXPECT_FALSE(is_possible(Color::red, 0, 3));
  EXPECT_TRUE(is_possible(Color::red, 3, 3));
  EXPECT_FALSE(is_possible(Color::blue, 3, 3));
  EXPECT_TRUE(is_possible(Color::blue, 0, 3));
}

TEST(Preference, RanksAreNormalized) {
  const auto p = PreferenceOrder::from_ranks({5, 2, 2, 9});
  EXPECT_EQ(p.ranks(), (std::vector<int>{1, 0, 0, 2}));
  EXPECT_EQ(p.levels(), 3);
  EXPECT_EQ(p.room_size(), 3);
}

TEST(Preference, DichotomousForRoomsOfTwo) {
  const std::vector<int> approve{1};
  const auto p = PreferenceOrder::dichotomous(2, approve);
  EXPECT_EQ(p.ranks(), (std::vector<int>{1, 0, 1}));
}

TEST(Preference, TrichotomousLevels) {
  const std::vector<int> approve{3};
  const std::vector<int> neutral{1, 2};
  const auto p = PreferenceOrder::trichotomous(3, approve, neutral);
  EXPECT_EQ(p.ranks(), (std::vector<int>{2, 1, 1, 0}));
}

TEST(Preference, RejectsBadInput) {
  EXPECT_EQ(code_of([] { PreferenceOrder::from_ranks({0}); }), ErrorCode::rank_length);
  EXPECT_EQ(code_of([] { PreferenceOrder::from_ranks({0, -1}); }), ErrorCode::domain);
  const std::vector<int> out_of_range{4};
  EXPECT_EQ(code_of([&] { PreferenceOrder::dichotomous(3, out_of_range); }), ErrorCode::domain);
  const std::vector<int> both{1};
  EXPECT_EQ(code_of([&] { PreferenceOrder::trichotomous(3, both, both); }), ErrorCode::domain);
}

TEST(Preference, CompareIsATotalPreorder) {
  oracle::Gen gen(11);
  for (int t = 0; t < 200; ++t) {
    const int s = gen.uniform(1, 6);
    std::vector<int> ranks;
    for (int j = 0; j <= s; ++j) ranks.push_back(gen.uniform(0, 3));
    const auto p = PreferenceOrder::from_ranks(ranks);
    auto weakly = [&](int a, int b) {
      return compare(p, theta(a, s), theta(b, s)) != Comparison::prefer_second;
    };
    for (int a = 0; a <= s; ++a) {
      for (int b = 0; b <= s; ++b) {
        EXPECT_TRUE(weakly(a, b) || weakly(b, a));
        for (int c = 0; c <= s; ++c) {
          if (weakly(a, b) && weakly(b, c)) EXPECT_TRUE(weakly(a, c));
        }
      }
    }
  }
}

TEST(Preference, CompareAcceptsEquivalentFractions) {
  const auto p = PreferenceOrder::from_ranks({2, 1, 0, 1, 2});
  EXPECT_EQ(compare(p, Fraction{1, 2}, Fraction{1, 4}), Comparison::prefer_first);
  EXPECT_EQ(code_of([&] { compare(p, Fraction{1, 3}, Fraction{0, 4}); }), ErrorCode::domain);
}

TEST(Game, ValidationErrors) {
  Game g{2, {red("r1", {0, 0, 0})}, {blue("b1", {0, 0, 0})}};
  EXPECT_NO_THROW(validate_game(g));
  Game odd = g;
  odd.blue.push_back(blue("b2", {0, 0, 0}));
  EXPECT_EQ(code_of([&] { validate_game(odd); }), ErrorCode::divisibility);
  Game dup = g;
  dup.blue[0].id = "r1";
  EXPECT_EQ(code_of([&] { validate_game(dup); }), ErrorCode::duplicate_id);
  Game len = g;
  len.red[0] = red("r1", {0, 0, 0, 0});
  EXPECT_EQ(code_of([&] { validate_game(len); }), ErrorCode::rank_length);
  Game color = g;
  color.red[0].color = Color::blue;
  EXPECT_EQ(code_of([&] { validate_game(color); }), ErrorCode::color_mismatch);
}

TEST(Outcome, ValidationErrors) {
  const Game g = counterexample_game();
  Outcome o{{{"r1", "b1", "b2"}, {"r2", "r3", "b3"}, {"b4", "b5", "b6"}}};
  EXPECT_NO_THROW(validate_outcome(g, o));
  Outcome small = o;
  small.rooms[0].pop_back();
  EXPECT_EQ(code_of([&] { validate_outcome(g, small); }), ErrorCode::wrong_room_size);
  Outcome twice = o;
  twice.rooms[0][1] = "b3";
  EXPECT_EQ(code_of([&] { validate_outcome(g, twice); }), ErrorCode::duplicate_agent);
  Outcome unknown = o;
  unknown.rooms[0][1] = "zz";
  EXPECT_EQ(code_of([&] { validate_outcome(g, unknown); }), ErrorCode::unknown_agent);
  Outcome missing = o;
  missing.rooms.pop_back();
  EXPECT_EQ(code_of([&] { validate_outcome(g, missing); }), ErrorCode::missing_agent);
}

TEST(Outcome, CanonicalOrderByRedCountThenFirstMember) {
  const Game g = counterexample_game();
  const Outcome o{{{"r3", "b3", "r2"}, {"b6", "b4", "b5"}, {"b2", "r1", "b1"}}};
  const Outcome c = canonicalize(g, o);
  const Outcome expected{{{"b4", "b5", "b6"}, {"b1", "b2", "r1"}, {"b3", "r2", "r3"}}};
  EXPECT_EQ(c, expected);
  EXPECT_EQ(canonicalize(g, c), c);
}

TEST(GameIndex, EffectiveRanksMaskImpossibleFractions) {
  // Blue agent whose only strict preference is the impossible 2/2.
  const Game g{2, {red("r1", {5, 0, 1})}, {blue("b1", {1, 1, 0})}};
  const GameIndex index(g);
  const int b = index.index_of("b1");
  EXPECT_EQ(index.rank(b, 2), -1);
  EXPECT_EQ(index.rank(b, 0), 0);
  EXPECT_EQ(index.rank(b, 1), 0);
  EXPECT_EQ(index.levels(b), 1);
  const int r = index.index_of("r1");
  EXPECT_EQ(index.rank(r, 0), -1);
  EXPECT_EQ(index.levels(r), 2);
}

TEST(GameIndex, CounterexampleHasFourClasses) {
  const auto classes = agent_classes(counterexample_game());
  ASSERT_EQ(classes.size(), 4u);
  std::multiset<std::size_t> sizes;
  for (const auto& c : classes) sizes.insert(c.members.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 2, 4}));
}

TEST(Approval, SplitsByLevel) {
  const Game g = counterexample_game();
  const Outcome o{{{"r1", "b1", "b2"}, {"r2", "r3", "b3"}, {"b4", "b5", "b6"}}};
  const auto split = approval_split(g, o);
  // b4 sits at 0/3, its worst level.
  EXPECT_EQ(split.disapprove, (std::vector<std::string>{"b4"}));
  EXPECT_EQ(split.neutral, (std::vector<std::string>{"b3"}));
  EXPECT_EQ(split.approve.size(), 7u);
}

}  // namespace
}  // namespace divpop
