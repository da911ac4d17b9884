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

#include <map>

#include "divpop/mixed.hpp"
#include "divpop/popularity.hpp"
#include "divpop/reductions.hpp"
#include "divpop/simplex.hpp"
#include "oracles.hpp"

namespace divpop {
namespace {

using Matrix = std::vector<std::vector<mpz_class>>;

mpq_class sum(const std::vector<mpq_class>& v) {
  mpq_class s = 0;
  for (const auto& x : v) s += x;
  return s;
}

/// Checks the column strategy and the value against the row player's
/// strategy from the transposed game.
void expect_optimal(const Matrix& a) {
  const auto col = solve_matrix_game(a);
  Matrix t(a[0].size(), std::vector<mpz_class>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = -a[i][j];
  }
  const auto row = solve_matrix_game(t);
  EXPECT_EQ(row.value, -col.value);
  EXPECT_EQ(sum(col.column_strategy), 1);
  EXPECT_EQ(sum(row.column_strategy), 1);
  mpq_class best_row = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpq_class v = 0;
    for (std::size_t j = 0; j < a[0].size(); ++j) v += a[i][j] * col.column_strategy[j];
    if (i == 0 || v > best_row) best_row = v;
  }
  mpq_class best_col = 0;
  for (std::size_t j = 0; j < a[0].size(); ++j) {
    mpq_class v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i][j] * row.column_strategy[i];
    if (j == 0 || v < best_col) best_col = v;
  }
  EXPECT_EQ(best_row, col.value);
  EXPECT_EQ(best_col, col.value);
}

TEST(Simplex, KnownGames) {
  const Matrix pennies{{1, -1}, {-1, 1}};
  const auto p = solve_matrix_game(pennies);
  EXPECT_EQ(p.value, 0);
  EXPECT_EQ(p.column_strategy, (std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 2)}));
  const auto g = solve_matrix_game({{3, -1}, {-2, 1}});
  EXPECT_EQ(g.value, mpq_class(1, 7));
  EXPECT_EQ(g.column_strategy[0], mpq_class(2, 7));
  const auto saddle = solve_matrix_game({{4, 2}, {3, 1}});
  EXPECT_EQ(saddle.value, 2);
  expect_optimal({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
}

TEST(Simplex, RandomGamesAreSolvedOptimally) {
  oracle::Gen gen(61);
  for (int t = 0; t < 100; ++t) {
    const int rows = gen.uniform(1, 7);
    const int cols = gen.uniform(1, 7);
    Matrix a(rows, std::vector<mpz_class>(cols));
    for (auto& row : a) {
      for (auto& x : row) x = gen.uniform(-4, 4);
    }
    expect_optimal(a);
  }
}

TEST(Simplex, DegenerateSkewGames) {
  oracle::Gen gen(62);
  for (int t = 0; t < 40; ++t) {
    const int n = gen.uniform(2, 12);
    Matrix a(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        a[i][j] = gen.uniform(-1, 1);
        a[j][i] = -a[i][j];
      }
    }
    const auto sol = solve_matrix_game(a);
    EXPECT_EQ(sol.value, 0);
    expect_optimal(a);
  }
}

TEST(GameMatrix, LabeledMatrixIsSkewSymmetric) {
  const GameIndex index(counterexample_game());
  const auto m = build_game_matrix(index);
  ASSERT_EQ(m.outcomes.size(), 280u);
  for (std::size_t i = 0; i < m.outcomes.size(); ++i) {
    EXPECT_EQ(m.entries[i][i], 0);
    for (std::size_t j = 0; j < m.outcomes.size(); ++j) {
      ASSERT_EQ(m.entries[i][j], -m.entries[j][i]);
    }
  }
}

TEST(GameMatrix, OrbitMatrixAveragesLabeledEntries) {
  oracle::Gen gen(63);
  std::vector<Game> games{counterexample_game()};
  for (int t = 0; t < 15; ++t) games.push_back(gen.game_up_to({2, 3}, 9));
  for (const auto& g : games) {
    const GameIndex index(g);
    const auto cert = certify_orbits(index);
    const auto labeled = build_game_matrix(index);
    const auto orbit = build_game_matrix(index, cert);
    EXPECT_EQ(cert.labeled_count(), labeled.outcomes.size());
    std::map<Partition, std::size_t> position;
    for (std::size_t i = 0; i < labeled.outcomes.size(); ++i) position[labeled.outcomes[i]] = i;
    for (std::size_t i = 0; i < orbit.outcomes.size(); ++i) {
      const auto members_i = expand_orbit(index, orbit.outcomes[i]);
      for (std::size_t j = 0; j < orbit.outcomes.size(); ++j) {
        EXPECT_EQ(orbit.entries[i][j], -orbit.entries[j][i]);
        // Average over both orbits equals the entry.
        const auto members_j = expand_orbit(index, orbit.outcomes[j]);
        mpq_class total = 0;
        for (const auto& a : members_i) {
          for (const auto& b : members_j) total += labeled.entries[position[a]][position[b]];
        }
        total /= mpq_class(mpz_class(static_cast<unsigned long>(members_i.size() * members_j.size())));
        EXPECT_EQ(orbit.entries[i][j], total);
      }
    }
  }
}

TEST(MixedMargin, PointMassesGiveThePureMargin) {
  oracle::Gen gen(64);
  for (int t = 0; t < 50; ++t) {
    const Game g = gen.game_up_to({2, 3, 4}, 12);
    const Outcome a = gen.outcome(g);
    const Outcome b = gen.outcome(g);
    EXPECT_EQ(mixed_margin(g, point_mass(a), point_mass(b)), oracle::margin(g, a, b));
  }
}

TEST(MixedMargin, Bilinear) {
  oracle::Gen gen(65);
  for (int t = 0; t < 30; ++t) {
    const Game g = gen.game_up_to({2, 3}, 9);
    const auto outcomes = enumerate_outcomes(g, EnumerationMode::labeled);
    auto lottery = [&] {
      MixedOutcome p;
      std::set<Outcome> used;
      int weights = 0;
      std::vector<std::pair<Outcome, int>> raw;
      for (int k = gen.uniform(1, 4); k > 0; --k) {
        const Outcome& o = outcomes[gen.uniform(0, static_cast<int>(outcomes.size()) - 1)];
        if (!used.insert(o).second) continue;
        const int w = gen.uniform(1, 5);
        weights += w;
        raw.emplace_back(o, w);
      }
      for (auto& [o, w] : raw) p.support.emplace_back(o, mpq_class(w, weights));
      for (auto& [o, prob] : p.support) prob.canonicalize();
      return p;
    };
    const MixedOutcome p = lottery();
    const MixedOutcome q = lottery();
    mpq_class expected = 0;
    for (const auto& [o, prob] : q.support) expected += prob * mixed_margin(g, p, point_mass(o));
    EXPECT_EQ(mixed_margin(g, p, q), expected);
    EXPECT_EQ(mixed_margin(g, p, q), -mixed_margin(g, q, p));
  }
}

TEST(MixedOutcome, InvalidDistributions) {
  const Game g = counterexample_game();
  const GameIndex index(g);
  const Outcome a{{{"r1", "b1", "b2"}, {"r2", "r3", "b3"}, {"b4", "b5", "b6"}}};
  const Outcome b{{{"r1", "b1", "b3"}, {"r2", "r3", "b2"}, {"b4", "b5", "b6"}}};
  auto code = [&](const MixedOutcome& p) {
    try {
      validate_mixed(index, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  EXPECT_EQ(code({}), ErrorCode::invalid_distribution);
  EXPECT_EQ(code({{{a, mpq_class(1, 2)}}}), ErrorCode::invalid_distribution);
  EXPECT_EQ(code({{{a, mpq_class(1, 2)}, {a, mpq_class(1, 2)}}}), ErrorCode::invalid_distribution);
  EXPECT_EQ(code({{{a, mpq_class(3, 2)}, {b, mpq_class(-1, 2)}}}), ErrorCode::invalid_distribution);
  EXPECT_EQ(code({{{a, mpq_class(1, 3)}, {b, mpq_class(2, 3)}}}), ErrorCode::internal);
}

TEST(SolveMixed, CounterexampleHasValueZero) {
  const Game g = counterexample_game();
  for (auto mode : {EnumerationMode::labeled, EnumerationMode::orbit}) {
    const MixedOutcome p = solve_mixed(g, {mode, kDefaultOutcomeCap});
    mpq_class total = 0;
    for (const auto& [o, prob] : p.support) {
      EXPECT_GT(prob, 0);
      total += prob;
    }
    EXPECT_EQ(total, 1);
    const auto v = verify_mixed(g, p);
    EXPECT_EQ(v.margin, 0);
    EXPECT_EQ(v.challengers, 280u);
  }
}

TEST(SolveMixed, RandomGamesInBothModes) {
  oracle::Gen gen(66);
  for (int t = 0; t < 25; ++t) {
    const Game g = gen.game_up_to({2, 3}, 9);
    const GameIndex index(g);
    for (auto mode : {EnumerationMode::labeled, EnumerationMode::orbit}) {
      const MixedOutcome p = solve_mixed(index, {mode, kDefaultOutcomeCap});
      EXPECT_EQ(verify_mixed(index, p).margin, 0);
    }
  }
}

TEST(VerifyMixed, PointMassAgreesWithPurePopularity) {
  oracle::Gen gen(67);
  for (int t = 0; t < 40; ++t) {
    const Game g = gen.game_up_to({2, 3}, 9);
    const Outcome o = gen.outcome(g);
    const bool popular = is_popular(g, o).status == VerdictStatus::popular;
    EXPECT_EQ(verify_mixed(g, point_mass(o)).margin >= 0, popular);
    if (auto p = find_popular(g)) EXPECT_GE(verify_mixed(g, point_mass(*p)).margin, 0);
  }
}

TEST(VerifyMixed, MonolithicOutcomeLosesToTheCoverOutcome) {
  const auto b = build_mixed_reduction({3, {{1, 2, 3}}});
  const GameIndex index(b.game);
  const Outcome mono = monolithic_outcome(b);
  const Outcome reduced = reduced_outcome(b, {0});
  EXPECT_EQ(mixed_margin(index, point_mass(mono), point_mass(reduced)), -1);
}

}  // namespace
}  // namespace divpop
