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

#include <climits>
#include <functional>

#include "divpop/transport.hpp"
#include "oracles.hpp"

namespace divpop {
namespace {

/// Best profit by trying every integral shipment.
std::int64_t brute(const std::vector<int>& supply, const std::vector<int>& demand,
                   const std::vector<std::vector<int>>& profit) {
  std::int64_t best = LLONG_MIN;
  std::vector<int> left = demand;
  std::function<void(std::size_t, std::size_t, int, std::int64_t)> rec =
      [&](std::size_t r, std::size_t c, int to_ship, std::int64_t value) {
        if (r == supply.size()) {
          best = std::max(best, value);
          return;
        }
        if (c + 1 == demand.size()) {
          if (to_ship > left[c]) return;
          left[c] -= to_ship;
          const std::int64_t v = value + std::int64_t{to_ship} * profit[r][c];
          if (r + 1 < supply.size()) {
            rec(r + 1, 0, supply[r + 1], v);
          } else {
            rec(r + 1, 0, 0, v);
          }
          left[c] += to_ship;
          return;
        }
        for (int x = 0; x <= std::min(to_ship, left[c]); ++x) {
          left[c] -= x;
          rec(r, c + 1, to_ship - x, value + std::int64_t{x} * profit[r][c]);
          left[c] += x;
        }
      };
  rec(0, 0, supply.empty() ? 0 : supply[0], 0);
  return best;
}

TEST(Transport, MatchesExhaustiveShipment) {
  oracle::Gen gen(41);
  for (int t = 0; t < 300; ++t) {
    const int rows = gen.uniform(1, 4);
    const int cols = gen.uniform(1, 4);
    std::vector<int> supply(rows);
    int total = 0;
    for (int& x : supply) total += (x = gen.uniform(0, 3));
    std::vector<int> demand(cols, 0);
    for (int u = 0; u < total; ++u) ++demand[gen.uniform(0, cols - 1)];
    std::vector<std::vector<int>> profit(rows, std::vector<int>(cols));
    for (auto& row : profit) {
      for (int& p : row) p = gen.uniform(-3, 3);
    }
    const auto plan = max_profit_transport(supply, demand, profit);
    EXPECT_EQ(plan.value, brute(supply, demand, profit));
    std::int64_t value = 0;
    for (int r = 0; r < rows; ++r) {
      int out = 0;
      for (int c = 0; c < cols; ++c) {
        EXPECT_GE(plan.flow[r][c], 0);
        out += plan.flow[r][c];
        value += std::int64_t{plan.flow[r][c]} * profit[r][c];
      }
      EXPECT_EQ(out, supply[r]);
    }
    for (int c = 0; c < cols; ++c) {
      int in = 0;
      for (int r = 0; r < rows; ++r) in += plan.flow[r][c];
      EXPECT_EQ(in, demand[c]);
    }
    EXPECT_EQ(value, plan.value);
  }
}

TEST(Transport, RejectsUnbalancedInput) {
  EXPECT_THROW(max_profit_transport({2}, {1}, {{1}}), Error);
}

}  // namespace
}  // namespace divpop
