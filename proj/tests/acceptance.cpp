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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Each criterion has a wall-clock budget that counts
// as part of the check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "divpop/divpop.hpp"
#include "oracles.hpp"

namespace {

using namespace divpop;

struct Check {
  bool ok = true;
  std::string why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

Check counterexample_reproduction() {
  Check c;
  const Game g = counterexample_game();
  const GameIndex index(g);
  const auto outcomes = enumerate_outcomes(g, EnumerationMode::labeled);
  c.expect(outcomes.size() == 280, "expected 280 outcomes, got " + std::to_string(outcomes.size()));
  c.expect(oracle::partitions(g).size() == 280, "naive partitioner disagrees");
  for (const auto& o : outcomes) {
    const auto v = is_popular(index, o);
    c.expect(v.status == VerdictStatus::not_popular, "an outcome is popular");
    c.expect(v.witness.has_value() && v.margin.has_value() && *v.margin >= 1, "missing witness");
    if (v.witness) {
      c.expect(oracle::margin(g, *v.witness, o) == *v.margin, "witness margin does not verify");
    }
    const auto split = approval_split(index, o);
    c.expect(split.neutral.size() + split.disapprove.size() >= 2,
             "outcome with fewer than two unapproving agents");
    c.expect(!split.disapprove.empty(), "outcome without a disapproving agent");
  }
  c.expect(!find_popular(index), "find_popular returned an outcome");
  return c;
}

Game s2_game(oracle::Gen& gen) {
  Game g;
  g.s = 2;
  const int n = 2 * gen.uniform(1, 6);
  const int reds = gen.uniform(0, n);
  for (int i = 0; i < n; ++i) {
    const bool red = i < reds;
    const int own = red ? 2 : 0;
    std::vector<int> ranks(3, 0);
    switch (gen.uniform(0, 2)) {
      case 0: ranks[1] = 1; break;    // pure
      case 1: ranks[own] = 1; break;  // mixed
      default: break;                 // indifferent
    }
    // The impossible fraction gets an arbitrary rank.
    ranks[red ? 0 : 2] = gen.uniform(0, 2);
    Agent a{(red ? "r" : "b") + std::to_string(i), red ? Color::red : Color::blue,
            PreferenceOrder::from_ranks(ranks)};
    (red ? g.red : g.blue).push_back(a);
  }
  return g;
}

Check room_size_two() {
  Check c;
  oracle::Gen gen(20260101);
  std::set<std::pair<int, int>> kinds;
  for (int t = 0; t < 500; ++t) {
    const Game g = s2_game(gen);
    for (const auto* list : {&g.red, &g.blue}) {
      for (const auto& a : *list) {
        kinds.insert({static_cast<int>(a.color), static_cast<int>(classify_s2(a).kind)});
      }
    }
    const GameIndex index(g);
    const auto m = solve_s2_matching(index);
    int best = 0;
    for (const auto& o : oracle::partitions(g)) best = std::max(best, oracle::happy_total(g, o));
    c.expect(m.weight == best, "matching weight below the exhaustive optimum");
    const Outcome o = canonicalize(index, matching_outcome(m));
    c.expect(happy_count(index, o) == m.weight, "weight differs from happy count");
    c.expect(oracle::happy_total(g, o) == m.weight, "oracle happy count differs");
    c.expect(is_popular(index, o, {Strategy::bruteforce, kDefaultOutcomeCap, 1}).status ==
                 VerdictStatus::popular,
             "solve_s2 output not popular");
  }
  c.expect(kinds.size() == 6, "corpus misses an agent class");
  return c;
}

Check mixed_counterexample() {
  Check c;
  const Game g = counterexample_game();
  const MixedOutcome p = solve_mixed(g);
  mpq_class total = 0;
  for (const auto& [o, prob] : p.support) {
    c.expect(prob > 0, "non-positive probability");
    total += prob;
  }
  c.expect(total == 1, "probabilities sum to " + total.get_str());
  const auto v = verify_mixed(g, p);
  c.expect(v.challengers == 280, "verification did not see 280 challengers");
  c.expect(v.margin == 0, "minimum margin is " + v.margin.get_str());
  // Independent recomputation against every challenger.
  mpq_class worst = 1;
  for (const auto& sigma : oracle::partitions(g)) {
    mpq_class m = 0;
    for (const auto& [o, prob] : p.support) m += prob * oracle::margin(g, o, sigma);
    if (m < worst) worst = m;
  }
  c.expect(worst == 0, "oracle minimum margin is " + worst.get_str());
  return c;
}

Check strict_all_approve() {
  Check c;
  struct Fixture {
    X3CInstance inst;
    std::size_t expected;
  };
  for (const auto& [inst, expected] :
       {Fixture{{3, {{1, 2, 3}}}, 2}, Fixture{{6, {{1, 2, 3}, {1, 4, 5}}}, 1}}) {
    const auto b = build_strict_reduction(inst);
    const GameIndex index(b.game);
    std::set<OrbitKey> want{orbit_key(index, index.to_partition(monolithic_outcome(b)))};
    for (const auto& cover : x3c_all_solutions(inst)) {
      want.insert(orbit_key(index, index.to_partition(reduced_outcome(b, cover))));
    }
    std::set<OrbitKey> got;
    for (const auto& o : all_approve_outcomes(index)) {
      const auto split = approval_split(index, o);
      c.expect(split.approve.size() == static_cast<std::size_t>(index.agent_count()),
               "listed outcome has an unapproving agent");
      got.insert(orbit_key(index, index.to_partition(o)));
    }
    c.expect(want.size() == expected, "fixture has an unexpected number of distinguished outcomes");
    c.expect(got == want, "all-approve outcomes differ for m=" + std::to_string(inst.m));
  }
  return c;
}

Check mixed_margins() {
  Check c;
  const auto b = build_mixed_reduction({3, {{1, 2, 3}}});
  const GameIndex index(b.game);
  const Outcome mono = monolithic_outcome(b);
  const auto split = approval_split(index, mono);
  c.expect(split.disapprove == std::vector<std::string>{"r_aux:6"}, "monolithic D- is not {r_aux:6}");
  const auto r = popularity_margin(index, reduced_outcome(b, {0}), mono);
  c.expect(r.margin == 1, "margin is " + std::to_string(r.margin));
  c.expect(r.improved == std::vector<std::string>{"r_aux:6"}, "improved set is not {r_aux:6}");
  c.expect(r.worsened.empty(), "worsened set is not empty");
  return c;
}

Check popularity_rotation() {
  Check c;
  const auto b = build_popularity_reduction({3, {{1, 2, 3}}});
  const GameIndex index(b.game);
  const auto choice = default_reduced_choice(b);
  const Outcome reduced = reduced_outcome(b, {0}, choice);
  const Outcome rot = reduced_rotation_challenger(b, reduced, choice);
  const auto r = popularity_margin(index, rot, reduced);
  std::vector<std::string> improved{choice[0], choice[1]};
  std::sort(improved.begin(), improved.end());
  c.expect(r.margin == 1, "margin is " + std::to_string(r.margin));
  c.expect(r.improved == improved, "improved set is not {a1, a2}");
  c.expect(r.worsened == std::vector<std::string>{choice[2]}, "worsened set is not {a3}");
  c.expect(oracle::margin(b.game, rot, reduced) == 1, "oracle margin differs");
  return c;
}

Check oracle_equivalence() {
  Check c;
  oracle::Gen gen(777);
  for (int t = 0; t < 200; ++t) {
    const Game g = gen.game_up_to({2, 3, 4}, 8);
    const Outcome o = gen.outcome(g);
    const GameIndex index(g);
    const auto sig = best_challenger(index, o, {Strategy::signature, kDefaultOutcomeCap, 1});
    const auto brute = best_challenger(index, o, {Strategy::bruteforce, kDefaultOutcomeCap, 1});
    c.expect(sig.margin == brute.margin, "signature " + std::to_string(sig.margin) +
                                             " vs brute force " + std::to_string(brute.margin) +
                                             " on game " + std::to_string(t));
    c.expect(oracle::margin(g, sig.outcome, o) == sig.margin, "signature challenger mismatch");
  }
  return c;
}

Check structural_counts() {
  Check c;
  const X3CInstance inst{3, {{1, 2, 3}}};
  const int q = 1;
  const int m = 3;
  auto sum = [](int lo, int hi, const std::function<int(int)>& f) {
    int total = 0;
    for (int j = lo; j <= hi; ++j) total += f(j);
    return total;
  };
  {
    const int s = 5 * (q + 1) + 1 + m;
    const int reds = m + sum(1, q, [](int j) { return 5 * j - 2; }) + 5 * (q + 1) + 1;
    const int blues = sum(1, q, [&](int j) { return s - (5 * j - 2) - 3; }) + 3 * q +
                      (s - 5 * (q + 1) - 1) + 5 * (q + 1) + 1;
    const auto b = build_strict_reduction(inst);
    c.expect(s == 14 && reds == 17 && blues == 25, "strict formulas");
    c.expect(b.game.s == s && static_cast<int>(b.game.red.size()) == reds &&
                 static_cast<int>(b.game.blue.size()) == blues,
             "strict sizes");
  }
  {
    const int s = 10 * q + 28 + 2 * m;
    const int mono = 2 * (5 * (q + 2) + 1);
    const int reds = 2 * m + 6 + sum(1, q + 1, [](int j) { return 2 * (5 * j - 2); }) + mono;
    const int blues = sum(1, q + 1, [&](int j) { return s - 2 * (5 * j - 2) - 6; }) +
                      6 * (q + 1) + (s - mono) + mono;
    const auto b = build_mixed_reduction(inst);
    c.expect(s == 44 && reds == 66 && blues == 110, "mixed formulas");
    c.expect(b.game.s == s && static_cast<int>(b.game.red.size()) == reds &&
                 static_cast<int>(b.game.blue.size()) == blues,
             "mixed sizes");
  }
  {
    const int s = 10 * q + 45 + 2 * m;
    const int reds = 3 + sum(1, 3, [](int j) { return 5 * j - 2; }) + 2 * m +
                     sum(4, q + 3, [](int j) { return 2 * (5 * j - 2); }) + (s - 2 * m - 3);
    const int blues = sum(1, 3, [&](int j) { return s - (5 * j - 2) - 1; }) + 3 +
                      sum(4, q + 3, [&](int j) { return s - 2 * (5 * j - 2) - 6; }) + 6 * q +
                      (2 * m + 3) + (s - 2 * m - 3);
    const auto b = build_popularity_reduction(inst);
    c.expect(s == 61 && reds == 121 && blues == 245, "popularity formulas");
    c.expect(b.game.s == s && static_cast<int>(b.game.red.size()) == reds &&
                 static_cast<int>(b.game.blue.size()) == blues,
             "popularity sizes");
  }
  return c;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "counterexample has no popular outcome (280 outcomes)", 5, counterexample_reproduction},
      {2, "room-size-2 matching is optimal and popular (500 games)", 60, room_size_two},
      {3, "mixed popular outcome of the counterexample has margin 0", 120, mixed_counterexample},
      {4, "strict reduction all-approve outcomes", 600, strict_all_approve},
      {5, "mixed reduction directional margins", 10, mixed_margins},
      {6, "popularity reduction rotation challenger", 10, popularity_rotation},
      {7, "signature search equals brute force (200 games)", 300, oracle_equivalence},
      {8, "reduction structural counts", 10, structural_counts},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok && secs > cr.budget_s) {
      c.ok = false;
      c.why = "over the " + std::to_string(static_cast<int>(cr.budget_s)) + " s budget";
    }
    std::printf("%s %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                c.ok ? "" : ": ", c.why.c_str());
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
