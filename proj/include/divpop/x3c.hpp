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

// Exact cover by 3-sets: ground set X = {1..m} and a list of 3-element
// subsets. Solutions are lists of 0-based set indices.

#ifndef DIVPOP_X3C_HPP
#define DIVPOP_X3C_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divpop/error.hpp"

namespace divpop {

struct X3CInstance {
  int m = 0;
  std::vector<std::array<int, 3>> sets;

  int q() const { return static_cast<int>(sets.size()); }

  friend bool operator==(const X3CInstance&, const X3CInstance&) = default;
};

inline void validate_x3c(const X3CInstance& inst) {
  if (inst.m < 1) throw Error(ErrorCode::invalid_instance, "ground set must be non-empty");
  if (inst.sets.empty()) throw Error(ErrorCode::invalid_instance, "no 3-sets given");
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    auto s = inst.sets[j];
    for (int x : s) {
      if (x < 1 || x > inst.m) {
        throw Error(ErrorCode::invalid_instance,
                    "set " + std::to_string(j) + " has element " + std::to_string(x) +
                        " outside [1," + std::to_string(inst.m) + "]");
      }
    }
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2]) {
      throw Error(ErrorCode::invalid_instance,
                  "set " + std::to_string(j) + " has repeated elements");
    }
  }
}

/// J^i: 1-based indices of the sets containing element i, for i = 1..m
/// (entry 0 unused).
inline std::vector<std::vector<int>> incidence(const X3CInstance& inst) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(inst.m) + 1);
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    for (int x : inst.sets[j]) out[x].push_back(static_cast<int>(j) + 1);
  }
  return out;
}

inline void validate_cover(const X3CInstance& inst, const std::vector<int>& cover) {
  std::vector<int> hits(static_cast<std::size_t>(inst.m) + 1, 0);
  std::vector<char> used(inst.sets.size(), 0);
  for (int j : cover) {
    if (j < 0 || j >= inst.q()) {
      throw Error(ErrorCode::invalid_cover, "set index " + std::to_string(j) + " out of range");
    }
    if (used[j]++) {
      throw Error(ErrorCode::invalid_cover, "set index " + std::to_string(j) + " repeated");
    }
    for (int x : inst.sets[j]) ++hits[x];
  }
  for (int x = 1; x <= inst.m; ++x) {
    if (hits[x] != 1) {
      throw Error(ErrorCode::invalid_cover, "element " + std::to_string(x) + " covered " +
                                                std::to_string(hits[x]) + " times");
    }
  }
}

/// Backtracking on the smallest uncovered element; visit(cover) returns
/// false to stop. Covers are reported with indices ascending.
inline void for_each_cover(const X3CInstance& inst,
                           const std::function<bool(const std::vector<int>&)>& visit) {
  validate_x3c(inst);
  if (inst.m % 3 != 0) return;
  const auto inc = incidence(inst);
  std::vector<char> covered(static_cast<std::size_t>(inst.m) + 1, 0);
  std::vector<int> chosen;
  bool stop = false;
  std::function<void()> rec = [&]() {
    int first = 1;
    while (first <= inst.m && covered[first]) ++first;
    if (first > inst.m) {
      std::vector<int> sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      if (!visit(sorted)) stop = true;
      return;
    }
    for (int j1 : inc[first]) {
      const auto& s = inst.sets[j1 - 1];
      if (covered[s[0]] || covered[s[1]] || covered[s[2]]) continue;
      for (int x : s) covered[x] = 1;
      chosen.push_back(j1 - 1);
      rec();
      chosen.pop_back();
      for (int x : s) covered[x] = 0;
      if (stop) return;
    }
  };
  rec();
}

inline std::optional<std::vector<int>> x3c_solve(const X3CInstance& inst) {
  std::optional<std::vector<int>> out;
  for_each_cover(inst, [&](const std::vector<int>& c) {
    out = c;
    return false;
  });
  return out;
}

inline std::vector<std::vector<int>> x3c_all_solutions(const X3CInstance& inst) {
  std::vector<std::vector<int>> out;
  for_each_cover(inst, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace divpop

#endif  // DIVPOP_X3C_HPP
