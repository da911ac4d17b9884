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

// Seeded random games and outcomes for self-tests. Preferences are drawn
// from a small per-game pool so that agent classes have several members.

#ifndef DIVPOP_CORPUS_HPP
#define DIVPOP_CORPUS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "divpop/game.hpp"

namespace divpop {

class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  PreferenceOrder random_preference(int s) {
    std::vector<int> ranks(static_cast<std::size_t>(s) + 1);
    switch (uniform(0, 2)) {
      case 0:
        for (int& r : ranks) r = uniform(0, 1);
        break;
      case 1:
        for (int& r : ranks) r = uniform(0, 2);
        break;
      default:
        for (int& r : ranks) r = uniform(0, s);
        break;
    }
    return PreferenceOrder::from_ranks(std::move(ranks));
  }

  /// A game with room size s, `rooms` rooms and `reds` red agents.
  Game random_game(int s, int rooms, int reds) {
    Game g;
    g.s = s;
    const int n = s * rooms;
    std::vector<PreferenceOrder> pool;
    const int pool_size = uniform(1, std::max(1, n / 2));
    for (int t = 0; t < pool_size; ++t) pool.push_back(random_preference(s));
    for (int i = 0; i < n; ++i) {
      const bool red = i < reds;
      Agent a{(red ? "r" : "b") + std::to_string(red ? i + 1 : i - reds + 1),
              red ? Color::red : Color::blue, pool[uniform(0, pool_size - 1)]};
      (red ? g.red : g.blue).push_back(std::move(a));
    }
    return g;
  }

  /// Random s, rooms and colors with at most `max_agents` agents.
  Game random_game(const std::vector<int>& sizes, int max_agents) {
    const int s = sizes[uniform(0, static_cast<int>(sizes.size()) - 1)];
    const int rooms = uniform(1, std::max(1, max_agents / s));
    return random_game(s, rooms, uniform(0, s * rooms));
  }

  Outcome random_outcome(const Game& g) {
    std::vector<std::string> ids;
    for (const auto* list : {&g.red, &g.blue}) {
      for (const auto& a : *list) ids.push_back(a.id);
    }
    std::shuffle(ids.begin(), ids.end(), rng_);
    Outcome o;
    for (std::size_t i = 0; i < ids.size(); i += g.s) {
      o.rooms.emplace_back(ids.begin() + i, ids.begin() + i + g.s);
    }
    return canonicalize(g, o);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace divpop

#endif  // DIVPOP_CORPUS_HPP
