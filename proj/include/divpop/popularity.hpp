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

// Popularity margins and exact (strict) popularity checks.
//
// Two challenger searches are provided. `bruteforce` walks every labeled
// outcome. `signature` walks the multisets of per-room red counts instead:
// once the red count of every room is fixed, each agent's fraction depends
// only on which room it lands in, red agents fill red slots and blue agents
// blue slots independently, and agents of the same class sitting at the same
// current fraction are interchangeable. The best challenger for a signature
// is then two exact integer transportation problems (groups -> room values).

#ifndef DIVPOP_POPULARITY_HPP
#define DIVPOP_POPULARITY_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "divpop/enumerate.hpp"
#include "divpop/error.hpp"
#include "divpop/game.hpp"
#include "divpop/transport.hpp"

namespace divpop {

enum class Strategy { bruteforce, signature };

struct SearchOptions {
  Strategy strategy = Strategy::signature;
  std::uint64_t cap = kDefaultOutcomeCap;
  int jobs = 1;
};

struct MarginReport {
  int margin = 0;
  /// Agents strictly preferring the first outcome.
  std::vector<std::string> improved;
  /// Agents strictly preferring the second outcome.
  std::vector<std::string> worsened;
};

/// phi(a, b) over all agents given per-agent fraction numerators.
inline int margin(const GameIndex& index, const std::vector<int>& frac_a,
                  const std::vector<int>& frac_b) {
  int m = 0;
  for (int i = 0; i < index.agent_count(); ++i) {
    m += index.gain(i, frac_b[i], frac_a[i]);
  }
  return m;
}

inline int margin(const GameIndex& index, const Partition& a, const Partition& b) {
  return margin(index, index.fractions(a), index.fractions(b));
}

inline MarginReport popularity_margin(
    const GameIndex& index, const Outcome& a, const Outcome& b,
    const std::optional<std::vector<std::string>>& subset = std::nullopt) {
  const auto fa = index.fractions(index.checked_partition(a));
  const auto fb = index.fractions(index.checked_partition(b));
  std::vector<char> include(static_cast<std::size_t>(index.agent_count()), subset ? 0 : 1);
  if (subset) {
    for (const auto& id : *subset) include[index.index_of(id)] = 1;
  }
  MarginReport report;
  for (int i = 0; i < index.agent_count(); ++i) {
    if (!include[i]) continue;
    const int g = index.gain(i, fb[i], fa[i]);
    if (g > 0) report.improved.push_back(index.id(i));
    if (g < 0) report.worsened.push_back(index.id(i));
  }
  report.margin = static_cast<int>(report.improved.size()) -
                  static_cast<int>(report.worsened.size());
  return report;
}

inline MarginReport popularity_margin(
    const Game& g, const Outcome& a, const Outcome& b,
    const std::optional<std::vector<std::string>>& subset = std::nullopt) {
  return popularity_margin(GameIndex(g), a, b, subset);
}

struct Challenger {
  Outcome outcome;
  /// phi(challenger, tested).
  int margin = 0;
};

enum class VerdictStatus { popular, not_popular, strictly_popular, not_strictly_popular };

inline std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::popular: return "Popular";
    case VerdictStatus::not_popular: return "NotPopular";
    case VerdictStatus::strictly_popular: return "StrictlyPopular";
    case VerdictStatus::not_strictly_popular: return "NotStrictlyPopular";
  }
  return "?";
}

struct PopularityVerdict {
  VerdictStatus status = VerdictStatus::popular;
  /// A challenger achieving the violating margin (negative verdicts only).
  std::optional<Outcome> witness;
  /// phi(witness, tested) when a witness is present. Otherwise the best
  /// phi(challenger, tested) seen: 0 for Popular, the largest value over
  /// other outcomes for StrictlyPopular (absent when no other outcome
  /// exists).
  std::optional<int> margin;
};

namespace detail {

struct Candidate {
  int margin = 0;
  Partition canonical;
  bool found = false;

  /// Keeps the larger margin, breaking ties by canonical order.
  void offer(const GameIndex& index, const Partition& p, int m) {
    if (found && m < margin) return;
    Partition q = p;
    index.canonicalize(q);
    if (found && m == margin && !(q < canonical)) return;
    margin = m;
    canonical = std::move(q);
    found = true;
  }
};

inline Candidate brute_best(const GameIndex& index, const Partition& tested,
                            bool exclude_tested, std::uint64_t cap) {
  const auto f0 = index.fractions(tested);
  Partition tested_canon = tested;
  index.canonicalize(tested_canon);
  Candidate best;
  for_each_labeled(
      index,
      [&](const Partition& p) {
        int m = 0;
        for (const auto& room : p.rooms) {
          const int c = index.red_in(room);
          for (int i : room) m += index.gain(i, f0[i], c);
        }
        if (best.found && m < best.margin) return;
        if (exclude_tested) {
          Partition q = p;
          index.canonicalize(q);
          if (q == tested_canon) return;
        }
        best.offer(index, p, m);
      },
      cap);
  return best;
}

/// Agents grouped by (class, current fraction) for one tested outcome.
class SignatureSearch {
 public:
  SignatureSearch(const GameIndex& index, const Partition& tested)
      : index_(index), tested_(tested), f0_(index.fractions(tested)) {
    std::map<std::pair<int, int>, int> group_of;
    for (int i = 0; i < index.agent_count(); ++i) {
      auto [it, inserted] = group_of.try_emplace(
          {index.class_of(i), f0_[i]}, static_cast<int>(groups_.size()));
      if (inserted) {
        Group g;
        g.red = index.is_red(i);
        g.current = f0_[i];
        g.gain.assign(static_cast<std::size_t>(index.room_size()) + 1, 0);
        for (int j = 0; j <= index.room_size(); ++j) {
          if (is_possible(index.color(i), j, index.room_size())) {
            g.gain[j] = index.gain(i, f0_[i], j);
          }
        }
        groups_.push_back(std::move(g));
      }
      groups_[it->second].members.push_back(i);
    }
    for (int g = 0; g < static_cast<int>(groups_.size()); ++g) {
      (groups_[g].red ? red_groups_ : blue_groups_).push_back(g);
    }
    signatures_ = enumerate_signatures(index);
    own_ = signature_of(index, tested);
  }

  const std::vector<OutcomeSignature>& signatures() const { return signatures_; }
  const OutcomeSignature& own_signature() const { return own_; }

  struct Side {
    std::vector<int> supply;
    std::vector<int> demand;
    std::vector<int> value;  // room red count per column
    std::vector<std::vector<int>> profit;
  };

  Side side(const OutcomeSignature& sig, bool red) const {
    const int s = index_.room_size();
    Side out;
    for (std::size_t a = 0; a < sig.red_counts.size();) {
      std::size_t b = a;
      while (b < sig.red_counts.size() && sig.red_counts[b] == sig.red_counts[a]) ++b;
      const int v = sig.red_counts[a];
      const int slots = static_cast<int>(b - a) * (red ? v : s - v);
      if (slots > 0) {
        out.demand.push_back(slots);
        out.value.push_back(v);
      }
      a = b;
    }
    for (int g : red ? red_groups_ : blue_groups_) {
      out.supply.push_back(static_cast<int>(groups_[g].members.size()));
      auto& row = out.profit.emplace_back();
      for (int v : out.value) row.push_back(groups_[g].gain[v]);
    }
    return out;
  }

  std::int64_t value(const OutcomeSignature& sig) const {
    return solve(side(sig, true)).value + solve(side(sig, false)).value;
  }

  /// Best challenger within one signature, materialized.
  Partition challenger(const OutcomeSignature& sig) const {
    const Side red = side(sig, true);
    const Side blue = side(sig, false);
    return materialize(sig, red, solve(red).flow, blue, solve(blue).flow);
  }

  /// Best over all signatures: first signature (in list order) attaining the
  /// maximum. Returns (value, signature index).
  std::pair<std::int64_t, std::size_t> best(int jobs,
                                            const OutcomeSignature* skip = nullptr) const {
    const std::size_t total = signatures_.size();
    auto scan = [&](std::size_t lo, std::size_t hi) {
      std::pair<std::int64_t, std::size_t> b{std::numeric_limits<std::int64_t>::min(), total};
      for (std::size_t t = lo; t < hi; ++t) {
        if (skip && signatures_[t] == *skip) continue;
        const std::int64_t v = value(signatures_[t]);
        if (v > b.first) b = {v, t};
      }
      return b;
    };
    if (jobs <= 1 || total < 64) return scan(0, total);
    const std::size_t parts = static_cast<std::size_t>(jobs);
    std::vector<std::future<std::pair<std::int64_t, std::size_t>>> futures;
    for (std::size_t p = 0; p < parts; ++p) {
      const std::size_t lo = total * p / parts;
      const std::size_t hi = total * (p + 1) / parts;
      futures.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    std::pair<std::int64_t, std::size_t> b{std::numeric_limits<std::int64_t>::min(), total};
    for (auto& f : futures) {
      const auto r = f.get();
      if (r.second == total) continue;
      if (r.first > b.first || (r.first == b.first && r.second < b.second)) b = r;
    }
    return b;
  }

  /// Best challenger inside the tested outcome's own signature that moves
  /// at least one agent to a room of a different red count. Only meaningful
  /// when all red counts of the tested outcome are distinct.
  std::optional<std::pair<std::int64_t, Partition>> best_moving_own() const {
    std::optional<std::pair<std::int64_t, Partition>> best;
    const Side red = side(own_, true);
    const Side blue = side(own_, false);
    const TransportPlan red_free = solve(red);
    const TransportPlan blue_free = solve(blue);
    for (int pass = 0; pass < 2; ++pass) {
      const bool is_red = pass == 0;
      const Side& sd = is_red ? red : blue;
      const auto& gids = is_red ? red_groups_ : blue_groups_;
      for (std::size_t r = 0; r < gids.size(); ++r) {
        for (std::size_t c = 0; c < sd.value.size(); ++c) {
          if (sd.value[c] == groups_[gids[r]].current) continue;
          if (sd.supply[r] == 0 || sd.demand[c] == 0) continue;
          Side forced = sd;
          --forced.supply[r];
          --forced.demand[c];
          TransportPlan plan = solve(forced);
          ++plan.flow[r][c];
          plan.value += sd.profit[r][c];
          const TransportPlan& other = is_red ? blue_free : red_free;
          const std::int64_t total = plan.value + other.value;
          if (!best || total > best->first) {
            Partition p = is_red ? materialize(own_, red, plan.flow, blue, other.flow)
                                 : materialize(own_, red, other.flow, blue, plan.flow);
            best = std::make_pair(total, std::move(p));
          }
        }
      }
    }
    return best;
  }

 private:
  struct Group {
    bool red = true;
    int current = 0;
    std::vector<int> members;
    std::vector<int> gain;
  };

  static TransportPlan solve(const Side& sd) {
    return max_profit_transport(sd.supply, sd.demand, sd.profit);
  }

  Partition materialize(const OutcomeSignature& sig, const Side& red,
                        const std::vector<std::vector<int>>& red_flow,
                        const Side& blue,
                        const std::vector<std::vector<int>>& blue_flow) const {
    const int s = index_.room_size();
    Partition p;
    p.rooms.assign(sig.red_counts.size(), {});
    auto fill = [&](const Side& sd, const std::vector<std::vector<int>>& flow,
                    const std::vector<int>& gids, bool is_red) {
      std::vector<std::size_t> taken(gids.size(), 0);
      for (std::size_t c = 0; c < sd.value.size(); ++c) {
        std::vector<int> agents;
        for (std::size_t r = 0; r < gids.size(); ++r) {
          const auto& members = groups_[gids[r]].members;
          for (int x = 0; x < flow[r][c]; ++x) agents.push_back(members[taken[r]++]);
        }
        std::size_t next = 0;
        for (std::size_t room = 0; room < sig.red_counts.size(); ++room) {
          if (sig.red_counts[room] != sd.value[c]) continue;
          const int slots = is_red ? sd.value[c] : s - sd.value[c];
          for (int x = 0; x < slots; ++x) p.rooms[room].push_back(agents.at(next++));
        }
      }
    };
    fill(red, red_flow, red_groups_, true);
    fill(blue, blue_flow, blue_groups_, false);
    index_.canonicalize(p);
    return p;
  }

  const GameIndex& index_;
  Partition tested_;
  std::vector<int> f0_;
  std::vector<Group> groups_;
  std::vector<int> red_groups_;
  std::vector<int> blue_groups_;
  std::vector<OutcomeSignature> signatures_;
  OutcomeSignature own_;
};

/// Two rooms with equal red count admit a same-color swap that changes the
/// partition but no agent's fraction.
inline std::optional<Partition> fraction_preserving_swap(const GameIndex& index,
                                                         const Partition& p) {
  for (std::size_t a = 0; a < p.rooms.size(); ++a) {
    for (std::size_t b = a + 1; b < p.rooms.size(); ++b) {
      if (index.red_in(p.rooms[a]) != index.red_in(p.rooms[b])) continue;
      const bool use_red = index.red_in(p.rooms[a]) > 0;
      auto pick = [&](const std::vector<int>& room) {
        for (std::size_t t = 0; t < room.size(); ++t) {
          if (index.is_red(room[t]) == use_red) return t;
        }
        return room.size();
      };
      Partition q = p;
      std::swap(q.rooms[a][pick(q.rooms[a])], q.rooms[b][pick(q.rooms[b])]);
      index.canonicalize(q);
      return q;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Challenger best_challenger(const GameIndex& index, const Outcome& o,
                                  const SearchOptions& opts = {}) {
  const Partition tested = index.checked_partition(o);
  if (opts.strategy == Strategy::bruteforce) {
    const auto best = detail::brute_best(index, tested, false, opts.cap);
    return {index.to_outcome(best.canonical), best.margin};
  }
  const detail::SignatureSearch search(index, tested);
  const auto [value, at] = search.best(opts.jobs);
  const Partition p = search.challenger(search.signatures().at(at));
  return {index.to_outcome(p), static_cast<int>(value)};
}

inline Challenger best_challenger(const Game& g, const Outcome& o,
                                  const SearchOptions& opts = {}) {
  return best_challenger(GameIndex(g), o, opts);
}

inline PopularityVerdict is_popular(const GameIndex& index, const Outcome& o,
                                    const SearchOptions& opts = {}) {
  const Challenger c = best_challenger(index, o, opts);
  PopularityVerdict v;
  v.margin = c.margin;
  if (c.margin <= 0) {
    v.status = VerdictStatus::popular;
  } else {
    v.status = VerdictStatus::not_popular;
    v.witness = c.outcome;
  }
  return v;
}

inline PopularityVerdict is_popular(const Game& g, const Outcome& o,
                                    const SearchOptions& opts = {}) {
  return is_popular(GameIndex(g), o, opts);
}

inline PopularityVerdict is_strictly_popular(const GameIndex& index, const Outcome& o,
                                             const SearchOptions& opts = {}) {
  const Partition tested = index.checked_partition(o);
  PopularityVerdict v;
  auto negative = [&](const Partition& w, int m) {
    v.status = VerdictStatus::not_strictly_popular;
    v.witness = index.to_outcome(w);
    v.margin = m;
    return v;
  };
  if (opts.strategy == Strategy::bruteforce) {
    const auto best = detail::brute_best(index, tested, true, opts.cap);
    if (!best.found) {
      v.status = VerdictStatus::strictly_popular;
      return v;
    }
    if (best.margin >= 0) return negative(best.canonical, best.margin);
    v.status = VerdictStatus::strictly_popular;
    v.margin = best.margin;
    return v;
  }

  Partition tested_canon = tested;
  index.canonicalize(tested_canon);
  const detail::SignatureSearch search(index, tested);
  const auto [value, at] = search.best(opts.jobs);
  if (value > 0) {
    return negative(search.challenger(search.signatures()[at]), static_cast<int>(value));
  }
  {
    const Partition p = search.challenger(search.signatures()[at]);
    if (p != tested_canon) return negative(p, static_cast<int>(value));
  }
  // Every other signature yields a different partition.
  std::optional<std::int64_t> runner_up;
  const auto [other_value, other_at] = search.best(opts.jobs, &search.own_signature());
  if (other_at < search.signatures().size()) {
    if (other_value >= 0) {
      return negative(search.challenger(search.signatures()[other_at]),
                      static_cast<int>(other_value));
    }
    runner_up = other_value;
  }
  if (auto swapped = detail::fraction_preserving_swap(index, tested_canon)) {
    return negative(*swapped, 0);
  }
  if (auto moved = search.best_moving_own()) {
    if (moved->first >= 0) return negative(moved->second, static_cast<int>(moved->first));
    if (!runner_up || moved->first > *runner_up) runner_up = moved->first;
  }
  v.status = VerdictStatus::strictly_popular;
  if (runner_up) v.margin = static_cast<int>(*runner_up);
  return v;
}

inline PopularityVerdict is_strictly_popular(const Game& g, const Outcome& o,
                                             const SearchOptions& opts = {}) {
  return is_strictly_popular(GameIndex(g), o, opts);
}

/// First popular outcome in canonical order, if any. Popularity is invariant
/// under within-class relabeling, so one check per orbit suffices.
inline std::optional<Outcome> find_popular(const GameIndex& index,
                                           const SearchOptions& opts = {}) {
  std::map<OrbitKey, bool> verdict;
  std::optional<Partition> first;
  for_each_labeled(
      index,
      [&](const Partition& p) {
        Partition q = p;
        index.canonicalize(q);
        if (first && !(q < *first)) return;
        const OrbitKey key = orbit_key(index, q);
        auto it = verdict.find(key);
        if (it == verdict.end()) {
          const bool ok = is_popular(index, index.to_outcome(q), opts).status ==
                          VerdictStatus::popular;
          it = verdict.emplace(key, ok).first;
        }
        if (it->second) first = std::move(q);
      },
      opts.cap);
  if (!first) return std::nullopt;
  return index.to_outcome(*first);
}

inline std::optional<Outcome> find_popular(const Game& g, const SearchOptions& opts = {}) {
  return find_popular(GameIndex(g), opts);
}

}  // namespace divpop

#endif  // DIVPOP_POPULARITY_HPP
