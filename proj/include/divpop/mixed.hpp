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

// Mixed outcomes (finite lotteries over outcomes) and an exact solver for a
// mixed popular outcome. The margin matrix phi(pi_i, pi_j) over all outcomes
// is skew-symmetric, so the zero-sum game it defines has value 0 and any
// optimal strategy is mixed popular.

#ifndef DIVPOP_MIXED_HPP
#define DIVPOP_MIXED_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "divpop/enumerate.hpp"
#include "divpop/error.hpp"
#include "divpop/game.hpp"
#include "divpop/popularity.hpp"
#include "divpop/simplex.hpp"

namespace divpop {

struct MixedOutcome {
  std::vector<std::pair<Outcome, mpq_class>> support;
};

inline MixedOutcome point_mass(const Outcome& o) { return {{{o, mpq_class(1)}}}; }

/// Support outcomes as canonical partitions with their probabilities.
inline std::vector<std::pair<Partition, mpq_class>> checked_support(const GameIndex& index,
                                                                    const MixedOutcome& p) {
  if (p.support.empty()) throw Error(ErrorCode::invalid_distribution, "empty support");
  std::vector<std::pair<Partition, mpq_class>> out;
  std::set<Partition> seen;
  mpq_class total = 0;
  for (const auto& [o, prob] : p.support) {
    if (sgn(prob) <= 0) {
      throw Error(ErrorCode::invalid_distribution,
                  "non-positive probability " + prob.get_str());
    }
    Partition q = index.checked_partition(o);
    index.canonicalize(q);
    if (!seen.insert(q).second) {
      throw Error(ErrorCode::invalid_distribution, "outcome repeated in support");
    }
    total += prob;
    out.emplace_back(std::move(q), prob);
  }
  if (total != 1) {
    throw Error(ErrorCode::invalid_distribution,
                "probabilities sum to " + total.get_str() + ", expected 1");
  }
  return out;
}

inline void validate_mixed(const GameIndex& index, const MixedOutcome& p) {
  checked_support(index, p);
}

/// Expected margin sum_i sum_j p_i q_j phi(pi_i, sigma_j).
inline mpq_class mixed_margin(const GameIndex& index, const MixedOutcome& p,
                              const MixedOutcome& q) {
  const auto ps = checked_support(index, p);
  const auto qs = checked_support(index, q);
  std::vector<std::vector<int>> qf;
  for (const auto& [part, prob] : qs) qf.push_back(index.fractions(part));
  mpq_class total = 0;
  for (const auto& [a, pa] : ps) {
    const auto fa = index.fractions(a);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      total += pa * qs[j].second * margin(index, fa, qf[j]);
    }
  }
  return total;
}

inline mpq_class mixed_margin(const Game& g, const MixedOutcome& p, const MixedOutcome& q) {
  return mixed_margin(GameIndex(g), p, q);
}

/// Proof that orbit-reduced solving is sound for one game: expanding every
/// orbit representative reproduces the labeled outcomes exactly once.
/// Only obtainable from certify_orbits().
class OrbitCertificate {
 public:
  std::uint64_t labeled_count() const { return labeled_; }
  std::uint64_t orbit_count() const { return orbits_; }

 private:
  friend OrbitCertificate certify_orbits(const GameIndex&, std::uint64_t);
  OrbitCertificate(std::uint64_t labeled, std::uint64_t orbits)
      : labeled_(labeled), orbits_(orbits) {}
  std::uint64_t labeled_;
  std::uint64_t orbits_;
};

inline OrbitCertificate certify_orbits(const GameIndex& index,
                                       std::uint64_t cap = kDefaultOutcomeCap) {
  const auto labeled = labeled_outcomes(index, cap);
  const auto reps = orbit_representatives(index, cap);
  std::vector<Partition> expanded;
  for (const auto& rep : reps) {
    auto orbit = expand_orbit(index, rep, cap);
    if (mpz_class(static_cast<unsigned long>(orbit.size())) != orbit_size(index, rep)) {
      throw Error(ErrorCode::internal, "orbit size formula disagrees with expansion");
    }
    expanded.insert(expanded.end(), orbit.begin(), orbit.end());
  }
  std::sort(expanded.begin(), expanded.end());
  if (expanded != labeled) {
    throw Error(ErrorCode::internal, "orbit expansion does not reproduce labeled outcomes");
  }
  return OrbitCertificate(labeled.size(), reps.size());
}

/// Margin matrix over outcomes. Labeled mode: entry (i,j) = phi(pi_i, pi_j)
/// over all outcomes. Orbit mode: outcomes are orbit representatives and
/// entry (I,J) is the average of phi(pi, pi_J) over pi in orbit I, which is
/// the expected margin of the uniform lottery on I against any member of J.
struct GameMatrix {
  EnumerationMode mode = EnumerationMode::labeled;
  std::vector<Partition> outcomes;
  std::vector<mpz_class> orbit_sizes;
  std::vector<std::vector<mpq_class>> entries;
};

inline GameMatrix build_game_matrix(const GameIndex& index, std::uint64_t cap = kDefaultOutcomeCap) {
  GameMatrix m;
  m.outcomes = labeled_outcomes(index, cap);
  const std::size_t n = m.outcomes.size();
  std::vector<std::vector<int>> f;
  for (const auto& p : m.outcomes) f.push_back(index.fractions(p));
  m.orbit_sizes.assign(n, mpz_class(1));
  m.entries.assign(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int v = margin(index, f[i], f[j]);
      m.entries[i][j] = v;
      m.entries[j][i] = -v;
    }
  }
  return m;
}

inline GameMatrix build_game_matrix(const GameIndex& index, const OrbitCertificate&,
                                    std::uint64_t cap = kDefaultOutcomeCap) {
  GameMatrix m;
  m.mode = EnumerationMode::orbit;
  m.outcomes = orbit_representatives(index, cap);
  const std::size_t n = m.outcomes.size();
  std::vector<std::vector<int>> rep_f;
  for (const auto& p : m.outcomes) rep_f.push_back(index.fractions(p));
  m.entries.assign(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto orbit = expand_orbit(index, m.outcomes[i], cap);
    m.orbit_sizes.emplace_back(static_cast<unsigned long>(orbit.size()));
    std::vector<long> sums(n, 0);
    for (const auto& member : orbit) {
      const auto f = index.fractions(member);
      for (std::size_t j = 0; j < n; ++j) sums[j] += margin(index, f, rep_f[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      m.entries[i][j] = mpq_class(sums[j], static_cast<unsigned long>(orbit.size()));
      m.entries[i][j].canonicalize();
    }
  }
  return m;
}

namespace detail {

/// Maximin strategy of the symmetric game on `entries`, as probabilities
/// over the matrix rows. Entries are scaled to integers first.
inline std::vector<mpq_class> maximin_strategy(const std::vector<std::vector<mpq_class>>& entries) {
  mpz_class scale = 1;
  for (const auto& row : entries) {
    for (const auto& x : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<std::vector<mpz_class>> a(entries.size(),
                                        std::vector<mpz_class>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const mpq_class scaled = entries[i][j] * scale;
      a[i][j] = scaled.get_num();
    }
  }
  // For a skew-symmetric game the column player's optimal strategy q has
  // sum_j a[i][j] q_j <= 0 for every i, i.e. sum_j q_j a[j][i] >= 0.
  const MatrixGameSolution sol = solve_matrix_game(a);
  if (sol.value != 0) throw Error(ErrorCode::internal, "symmetric game value is not zero");
  return sol.column_strategy;
}

}  // namespace detail

struct MixedOptions {
  EnumerationMode mode = EnumerationMode::labeled;
  std::uint64_t cap = kDefaultOutcomeCap;
};

inline MixedOutcome solve_mixed(const GameIndex& index, const MixedOptions& opts = {}) {
  MixedOutcome out;
  if (opts.mode == EnumerationMode::labeled) {
    const GameMatrix m = build_game_matrix(index, opts.cap);
    const auto p = detail::maximin_strategy(m.entries);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (sgn(p[i]) > 0) out.support.emplace_back(index.to_outcome(m.outcomes[i]), p[i]);
    }
    return out;
  }
  const OrbitCertificate cert = certify_orbits(index, opts.cap);
  const GameMatrix m = build_game_matrix(index, cert, opts.cap);
  const auto p = detail::maximin_strategy(m.entries);
  // Spread each orbit's weight uniformly over its members.
  std::vector<std::pair<Partition, mpq_class>> spread;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sgn(p[i]) <= 0) continue;
    const auto orbit = expand_orbit(index, m.outcomes[i], opts.cap);
    mpq_class each = p[i] / mpq_class(mpz_class(static_cast<unsigned long>(orbit.size())));
    for (const auto& member : orbit) spread.emplace_back(member, each);
  }
  std::sort(spread.begin(), spread.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [part, prob] : spread) out.support.emplace_back(index.to_outcome(part), prob);
  return out;
}

inline MixedOutcome solve_mixed(const Game& g, const MixedOptions& opts = {}) {
  return solve_mixed(GameIndex(g), opts);
}

struct MixedVerdict {
  /// Pure challenger minimizing phi(p, sigma); first in canonical order.
  Outcome worst_challenger;
  /// min over pure sigma of phi(p, sigma); p is mixed popular iff >= 0.
  mpq_class margin;
  std::uint64_t challengers = 0;
};

/// Pure challengers suffice: phi(p, q) is linear in q.
inline MixedVerdict verify_mixed(const GameIndex& index, const MixedOutcome& p,
                                 std::uint64_t cap = kDefaultOutcomeCap) {
  const auto support = checked_support(index, p);
  mpz_class denom = 1;
  for (const auto& [part, prob] : support) {
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), prob.get_den_mpz_t());
  }
  std::vector<std::vector<int>> f;
  std::vector<mpz_class> weight;
  for (const auto& [part, prob] : support) {
    f.push_back(index.fractions(part));
    weight.emplace_back(mpq_class(prob * denom).get_num());
  }
  std::optional<mpz_class> best;
  Partition worst;
  std::uint64_t seen = 0;
  mpz_class acc;
  for_each_labeled(
      index,
      [&](const Partition& sigma) {
        ++seen;
        const auto fs = index.fractions(sigma);
        acc = 0;
        for (std::size_t i = 0; i < f.size(); ++i) acc += weight[i] * margin(index, f[i], fs);
        if (best && acc > *best) return;
        Partition q = sigma;
        index.canonicalize(q);
        if (best && acc == *best && !(q < worst)) return;
        best = acc;
        worst = std::move(q);
      },
      cap);
  MixedVerdict v;
  v.worst_challenger = index.to_outcome(worst);
  v.margin = mpq_class(*best, denom);
  v.margin.canonicalize();
  v.challengers = seen;
  return v;
}

inline MixedVerdict verify_mixed(const Game& g, const MixedOutcome& p,
                                 std::uint64_t cap = kDefaultOutcomeCap) {
  return verify_mixed(GameIndex(g), p, cap);
}

}  // namespace divpop

#endif  // DIVPOP_MIXED_HPP
