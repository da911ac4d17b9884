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

// Games built from exact-cover instances, their two distinguished outcomes
// (the monolithic outcome and the reduced outcome of a cover), and the fixed
// nine-agent game without a popular outcome.
//
// Agent ids are structured: r_set:3 is the set agent of element 3,
// r_red:2:7 the 7th redundant agent of set 2, b_fill:2:7 a filling agent,
// and so on. Group names follow the same scheme (R_set, R_red_2, B_fill_2).

#ifndef DIVPOP_REDUCTIONS_HPP
#define DIVPOP_REDUCTIONS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divpop/enumerate.hpp"
#include "divpop/error.hpp"
#include "divpop/game.hpp"
#include "divpop/x3c.hpp"

namespace divpop {

enum class ReductionVariant { strict, mixed, popularity };

inline std::string_view to_string(ReductionVariant v) {
  switch (v) {
    case ReductionVariant::strict: return "strict";
    case ReductionVariant::mixed: return "mixed";
    case ReductionVariant::popularity: return "popularity";
  }
  return "?";
}

inline ReductionVariant parse_variant(std::string_view name) {
  if (name == "strict") return ReductionVariant::strict;
  if (name == "mixed") return ReductionVariant::mixed;
  if (name == "popularity") return ReductionVariant::popularity;
  throw Error(ErrorCode::domain, "unknown reduction variant '" + std::string(name) + "'");
}

struct ReductionBundle {
  ReductionVariant variant = ReductionVariant::strict;
  Game game;
  /// Named agent groups in construction order.
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  X3CInstance source;

  const std::vector<std::string>& group(std::string_view name) const {
    for (const auto& [n, ids] : groups) {
      if (n == name) return ids;
    }
    throw Error(ErrorCode::domain, "no agent group '" + std::string(name) + "'");
  }
  bool has_group(std::string_view name) const {
    for (const auto& g : groups) {
      if (g.first == name) return true;
    }
    return false;
  }
};

namespace detail {

class BundleBuilder {
 public:
  BundleBuilder(ReductionVariant v, const X3CInstance& inst, int s) {
    b_.variant = v;
    b_.source = inst;
    b_.game.s = s;
  }

  int s() const { return b_.game.s; }

  void add(const std::string& group, const std::string& id_prefix, int count, Color color,
           const std::vector<int>& approve, const std::vector<int>& neutral = {}) {
    if (count <= 0) {
      throw Error(ErrorCode::invalid_instance,
                  "group " + group + " would have " + std::to_string(count) + " agents");
    }
    for (int p = 1; p <= count; ++p) add_one(group, id_prefix + std::to_string(p), color,
                                             approve, neutral);
  }

  void add_one(const std::string& group, const std::string& id, Color color,
               std::vector<int> approve, const std::vector<int>& neutral = {}) {
    std::sort(approve.begin(), approve.end());
    approve.erase(std::unique(approve.begin(), approve.end()), approve.end());
    Agent a{id, color, PreferenceOrder::trichotomous(s(), approve, neutral)};
    (color == Color::red ? b_.game.red : b_.game.blue).push_back(std::move(a));
    auto it = std::find_if(b_.groups.begin(), b_.groups.end(),
                           [&](const auto& g) { return g.first == group; });
    if (it == b_.groups.end()) {
      b_.groups.emplace_back(group, std::vector<std::string>{});
      it = std::prev(b_.groups.end());
    }
    it->second.push_back(id);
  }

  ReductionBundle finish() {
    validate_game(b_.game);
    return std::move(b_);
  }

 private:
  ReductionBundle b_;
};

inline std::string num(int x) { return std::to_string(x); }

}  // namespace detail

inline ReductionBundle build_strict_reduction(const X3CInstance& inst) {
  validate_x3c(inst);
  const int q = inst.q();
  const int m = inst.m;
  const int mono = 5 * (q + 1) + 1;
  const int s = mono + m;
  const auto inc = incidence(inst);
  detail::BundleBuilder b(ReductionVariant::strict, inst, s);
  using detail::num;
  for (int i = 1; i <= m; ++i) {
    std::vector<int> approve{s};
    for (int j : inc[i]) approve.push_back(5 * j + 1);
    b.add_one("R_set", "r_set:" + num(i), Color::red, approve);
  }
  for (int j = 1; j <= q; ++j) {
    b.add("R_red_" + num(j), "r_red:" + num(j) + ":", 5 * j - 2, Color::red,
          {5 * j + 1, 5 * j - 2});
  }
  b.add("R_mon", "r_mon:", mono, Color::red, {s, mono});
  for (int j = 1; j <= q; ++j) {
    b.add("B_fill_" + num(j), "b_fill:" + num(j) + ":", s - (5 * j - 2) - 3, Color::blue,
          {5 * j + 1, 5 * j - 2});
  }
  for (int j = 1; j <= q; ++j) {
    b.add("B_add_" + num(j), "b_add:" + num(j) + ":", 3, Color::blue, {5 * j - 2, 0});
  }
  b.add("B_mon", "b_mon:", s - mono, Color::blue, {mono, 0});
  b.add("B_even", "b_even:", mono, Color::blue, {0});
  return b.finish();
}

inline ReductionBundle build_mixed_reduction(const X3CInstance& inst) {
  validate_x3c(inst);
  const int q = inst.q();
  const int m = inst.m;
  const int s = 10 * q + 28 + 2 * m;
  const int mono = 2 * (5 * (q + 2) + 1);
  const int aux = 2 * (5 * (q + 1) + 1);
  const auto inc = incidence(inst);
  detail::BundleBuilder b(ReductionVariant::mixed, inst, s);
  using detail::num;
  for (const char* kind : {"set", "copy"}) {
    for (int i = 1; i <= m; ++i) {
      std::vector<int> approve{s};
      for (int j : inc[i]) approve.push_back(2 * (5 * j + 1));
      b.add_one(std::string("R_") + kind, std::string("r_") + kind + ":" + num(i), Color::red,
                approve);
    }
  }
  for (int p = 1; p <= 5; ++p) b.add_one("R_aux", "r_aux:" + num(p), Color::red, {aux, s});
  b.add_one("R_aux", "r_aux:6", Color::red, {aux});
  for (int j = 1; j <= q + 1; ++j) {
    b.add("R_red_" + num(j), "r_red:" + num(j) + ":", 2 * (5 * j - 2), Color::red,
          {2 * (5 * j + 1), 2 * (5 * j - 2)});
  }
  b.add("R_mon", "r_mon:", mono, Color::red, {s, mono});
  for (int j = 1; j <= q + 1; ++j) {
    b.add("B_fill_" + num(j), "b_fill:" + num(j) + ":", s - 2 * (5 * j - 2) - 6, Color::blue,
          {2 * (5 * j + 1), 2 * (5 * j - 2)});
  }
  for (int j = 1; j <= q + 1; ++j) {
    b.add("B_add_" + num(j), "b_add:" + num(j) + ":", 6, Color::blue, {2 * (5 * j - 2), 0});
  }
  b.add("B_mon", "b_mon:", s - mono, Color::blue, {mono, 0});
  b.add("B_even", "b_even:", mono, Color::blue, {0});
  return b.finish();
}

inline ReductionBundle build_popularity_reduction(const X3CInstance& inst) {
  validate_x3c(inst);
  const int q = inst.q();
  const int m = inst.m;
  const int s = 10 * q + 45 + 2 * m;
  const int mono = s - 2 * m - 3;
  const auto inc = incidence(inst);
  detail::BundleBuilder b(ReductionVariant::popularity, inst, s);
  using detail::num;
  b.add_one("R_circ", "r_circ:1", Color::red, {14}, {9});
  b.add_one("R_circ", "r_circ:2", Color::red, {14}, {9});
  b.add_one("R_circ", "r_circ:3", Color::red, {14, s}, {9});
  for (int j = 1; j <= 2; ++j) {
    b.add("R_red_" + num(j), "r_red:" + num(j) + ":", 5 * j - 2, Color::red,
          {5 * j - 1, 5 * j - 2});
  }
  b.add("R_red_3", "r_red:3:", 13, Color::red, {14, 13}, {9});
  for (const char* kind : {"set", "copy"}) {
    for (int i = 1; i <= m; ++i) {
      std::vector<int> approve{s};
      for (int j : inc[i]) approve.push_back(2 * (5 * (j + 3) + 1));
      b.add_one(std::string("R_") + kind, std::string("r_") + kind + ":" + num(i), Color::red,
                approve);
    }
  }
  for (int j = 4; j <= q + 3; ++j) {
    b.add("R_red_" + num(j), "r_red:" + num(j) + ":", 2 * (5 * j - 2), Color::red,
          {2 * (5 * j + 1), 2 * (5 * j - 2)});
  }
  b.add("R_mon", "r_mon:", mono, Color::red, {s, mono});
  for (int j = 1; j <= 3; ++j) {
    b.add("B_fill_" + num(j), "b_fill:" + num(j) + ":", s - (5 * j - 2) - 1, Color::blue,
          {5 * j - 1, 5 * j - 2});
  }
  for (int j = 1; j <= 3; ++j) {
    b.add("B_add_" + num(j), "b_add:" + num(j) + ":", 1, Color::blue, {5 * j - 2, 0});
  }
  for (int j = 4; j <= q + 3; ++j) {
    b.add("B_fill_" + num(j), "b_fill:" + num(j) + ":", s - 2 * (5 * j - 2) - 6, Color::blue,
          {2 * (5 * j + 1), 2 * (5 * j - 2)});
  }
  for (int j = 4; j <= q + 3; ++j) {
    b.add("B_add_" + num(j), "b_add:" + num(j) + ":", 6, Color::blue, {2 * (5 * j - 2), 0});
  }
  b.add("B_mon", "b_mon:", 2 * m + 3, Color::blue, {mono, 0});
  b.add("B_even", "b_even:", mono, Color::blue, {0});
  return b.finish();
}

inline ReductionBundle build_reduction(ReductionVariant v, const X3CInstance& inst) {
  switch (v) {
    case ReductionVariant::strict: return build_strict_reduction(inst);
    case ReductionVariant::mixed: return build_mixed_reduction(inst);
    case ReductionVariant::popularity: return build_popularity_reduction(inst);
  }
  throw Error(ErrorCode::internal, "unknown variant");
}

namespace detail {

class RoomAssembler {
 public:
  explicit RoomAssembler(const ReductionBundle& b) : b_(b) {}

  RoomAssembler& take(std::string_view group) {
    const auto& ids = b_.group(group);
    cur_.insert(cur_.end(), ids.begin(), ids.end());
    return *this;
  }
  RoomAssembler& take_ids(const std::vector<std::string>& ids) {
    cur_.insert(cur_.end(), ids.begin(), ids.end());
    return *this;
  }
  void close() {
    rooms_.push_back(std::move(cur_));
    cur_.clear();
  }

  /// Closes the last room with every agent not placed yet.
  Outcome finish_with_rest() {
    std::set<std::string> placed;
    for (const auto& r : rooms_) placed.insert(r.begin(), r.end());
    std::vector<std::string> rest;
    for (const auto* list : {&b_.game.red, &b_.game.blue}) {
      for (const auto& a : *list) {
        if (!placed.count(a.id)) rest.push_back(a.id);
      }
    }
    rooms_.push_back(std::move(rest));
    Outcome o{std::move(rooms_)};
    return canonicalize(b_.game, o);
  }

 private:
  const ReductionBundle& b_;
  std::vector<std::string> cur_;
  std::vector<std::vector<std::string>> rooms_;
};

/// Set agents (and copies, when present) of the elements of set j.
inline std::vector<std::string> set_agents_of(const ReductionBundle& b, int j,
                                              bool with_copies) {
  std::vector<std::string> out;
  for (int x : b.source.sets[j - 1]) {
    out.push_back("r_set:" + std::to_string(x));
    if (with_copies) out.push_back("r_copy:" + std::to_string(x));
  }
  return out;
}

}  // namespace detail

inline Outcome monolithic_outcome(const ReductionBundle& b) {
  using detail::num;
  detail::RoomAssembler a(b);
  const int q = b.source.q();
  switch (b.variant) {
    case ReductionVariant::strict:
      for (int j = 1; j <= q; ++j) {
        a.take("B_add_" + num(j)).take("R_red_" + num(j)).take("B_fill_" + num(j)).close();
      }
      a.take("R_set").take("R_mon").close();
      break;
    case ReductionVariant::mixed:
      for (int j = 1; j <= q + 1; ++j) {
        a.take("B_add_" + num(j)).take("R_red_" + num(j)).take("B_fill_" + num(j)).close();
      }
      a.take("R_set").take("R_copy").take("R_aux").take("R_mon").close();
      break;
    case ReductionVariant::popularity:
      for (int j = 1; j <= q + 3; ++j) {
        a.take("B_add_" + num(j)).take("R_red_" + num(j)).take("B_fill_" + num(j)).close();
      }
      a.take("R_set").take("R_copy").take("R_circ").take("R_mon").close();
      break;
  }
  return a.finish_with_rest();
}

/// The five agents a1..a5 used by the popularity variant's reduced-type
/// outcome; a1 ends up disapproving and a2 neutral.
inline std::vector<std::string> default_reduced_choice(const ReductionBundle& b) {
  std::vector<std::string> out = b.group("R_circ");
  const auto& red3 = b.group("R_red_3");
  out.insert(out.end(), red3.begin(), red3.begin() + 2);
  return out;
}

inline void validate_reduced_choice(const ReductionBundle& b,
                                    const std::vector<std::string>& choice) {
  if (choice.size() != 5) {
    throw Error(ErrorCode::domain, "reduced-type choice needs exactly 5 agents");
  }
  const auto& circ = b.group("R_circ");
  const auto& red3 = b.group("R_red_3");
  std::set<std::string> seen;
  int circular = 0;
  for (const auto& id : choice) {
    if (!seen.insert(id).second) throw Error(ErrorCode::domain, "agent '" + id + "' repeated");
    const bool in_circ = std::find(circ.begin(), circ.end(), id) != circ.end();
    const bool in_red3 = std::find(red3.begin(), red3.end(), id) != red3.end();
    if (!in_circ && !in_red3) {
      throw Error(ErrorCode::domain, "agent '" + id + "' is not a circular set agent or in R_red_3");
    }
    circular += in_circ;
  }
  // Otherwise the leftover circular agents have no room and room 3 has the
  // wrong size.
  if (circular != 3) {
    throw Error(ErrorCode::domain,
                "reduced-type choice must contain all three circular set agents");
  }
}

inline Outcome reduced_outcome(const ReductionBundle& b, const std::vector<int>& cover,
                               const std::optional<std::vector<std::string>>& choice = {}) {
  using detail::num;
  validate_cover(b.source, cover);
  const int q = b.source.q();
  std::vector<char> in_cover(static_cast<std::size_t>(q) + 1, 0);
  for (int j : cover) in_cover[j + 1] = 1;
  detail::RoomAssembler a(b);
  auto set_room = [&](int j, int room_index, bool copies) {
    if (in_cover[j]) {
      a.take_ids(detail::set_agents_of(b, j, copies));
    } else {
      a.take("B_add_" + num(room_index));
    }
    a.take("R_red_" + num(room_index)).take("B_fill_" + num(room_index)).close();
  };
  switch (b.variant) {
    case ReductionVariant::strict:
      for (int j = 1; j <= q; ++j) set_room(j, j, false);
      a.take("R_mon").take("B_mon").close();
      break;
    case ReductionVariant::mixed:
      for (int j = 1; j <= q; ++j) set_room(j, j, true);
      a.take("R_aux").take("R_red_" + num(q + 1)).take("B_fill_" + num(q + 1)).close();
      a.take("R_mon").take("B_mon").close();
      break;
    case ReductionVariant::popularity: {
      const auto pick = choice ? *choice : default_reduced_choice(b);
      validate_reduced_choice(b, pick);
      a.take_ids({pick[0]}).take("R_red_1").take("B_fill_1").close();
      a.take_ids({pick[1]}).take("R_red_2").take("B_fill_2").close();
      std::vector<std::string> rest3;
      for (const auto& id : b.group("R_red_3")) {
        if (std::find(pick.begin(), pick.end(), id) == pick.end()) rest3.push_back(id);
      }
      a.take_ids({pick[2], pick[3], pick[4]}).take_ids(rest3).take("B_fill_3").close();
      for (int j = 1; j <= q; ++j) set_room(j, j + 3, true);
      a.take("R_mon").take("B_mon").close();
      break;
    }
  }
  return a.finish_with_rest();
}

/// Moves cycle[i] into the room of cycle[i+1] (cyclically).
inline Outcome rotate_agents(const Game& g, const Outcome& o,
                             const std::vector<std::string>& cycle) {
  validate_outcome(g, o);
  std::map<std::string, std::size_t> room_of;
  for (std::size_t r = 0; r < o.rooms.size(); ++r) {
    for (const auto& id : o.rooms[r]) room_of[id] = r;
  }
  for (const auto& id : cycle) {
    if (!room_of.count(id)) throw Error(ErrorCode::unknown_agent, "agent '" + id + "'");
  }
  // Each room keeps its non-cycle members and receives the movers whose
  // successor was in it.
  Outcome out = o;
  for (auto& room : out.rooms) {
    room.erase(std::remove_if(room.begin(), room.end(),
                              [&](const std::string& id) {
                                return std::find(cycle.begin(), cycle.end(), id) != cycle.end();
                              }),
               room.end());
  }
  for (std::size_t t = 0; t < cycle.size(); ++t) {
    out.rooms[room_of.at(cycle[(t + 1) % cycle.size()])].push_back(cycle[t]);
  }
  return canonicalize(g, out);
}

/// Rotation challenger of a reduced-type outcome: a1 -> room of a2,
/// a2 -> room of a3, a3 -> room of a1.
inline Outcome reduced_rotation_challenger(const ReductionBundle& b, const Outcome& reduced,
                                           const std::vector<std::string>& choice) {
  if (b.variant != ReductionVariant::popularity) {
    throw Error(ErrorCode::domain, "rotation challenger needs a popularity bundle");
  }
  validate_reduced_choice(b, choice);
  return rotate_agents(b.game, reduced, {choice[0], choice[1], choice[2]});
}

/// Every outcome in which all agents approve their room, one per orbit of
/// within-class relabeling. Rooms are drawn only from types in which every
/// member approves the room's red count.
inline std::vector<Outcome> all_approve_outcomes(const GameIndex& index,
                                                 std::uint64_t cap = kDefaultOutcomeCap) {
  const int s = index.room_size();
  const int classes = index.class_count();
  std::vector<RoomType> types;
  for (int c = 0; c <= s; ++c) {
    std::vector<int> reds;
    std::vector<int> blues;
    for (int k = 0; k < classes; ++k) {
      if (index.class_rank(k, c) != 0) continue;
      (index.class_is_red(k) ? reds : blues).push_back(k);
    }
    // Compositions of c over approving red classes and s-c over approving
    // blue classes, bounded by class sizes.
    std::vector<std::vector<int>> red_parts;
    std::vector<std::vector<int>> blue_parts;
    std::function<void(const std::vector<int>&, std::size_t, int, std::vector<int>&,
                       std::vector<std::vector<int>>&)>
        split = [&](const std::vector<int>& ks, std::size_t at, int left, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
          if (at == ks.size()) {
            if (left == 0) out.push_back(cur);
            return;
          }
          const int cap_k = static_cast<int>(index.class_members(ks[at]).size());
          for (int x = std::min(left, cap_k); x >= 0; --x) {
            cur[ks[at]] = x;
            split(ks, at + 1, left - x, cur, out);
          }
          cur[ks[at]] = 0;
        };
    std::vector<int> cur(static_cast<std::size_t>(classes), 0);
    split(reds, 0, c, cur, red_parts);
    split(blues, 0, s - c, cur, blue_parts);
    for (const auto& rp : red_parts) {
      for (const auto& bp : blue_parts) {
        RoomType t;
        t.counts.resize(static_cast<std::size_t>(classes));
        for (int k = 0; k < classes; ++k) t.counts[k] = rp[k] + bp[k];
        t.red = c;
        types.push_back(std::move(t));
        if (types.size() > cap) {
          throw Error(ErrorCode::resource_limit, "approving room types exceed cap");
        }
      }
    }
  }
  std::vector<Partition> reps;
  for_each_orbit(
      index, types,
      [&](const std::vector<std::size_t>& chosen) {
        reps.push_back(materialize_orbit(index, types, chosen));
      },
      cap);
  std::sort(reps.begin(), reps.end());
  std::vector<Outcome> out;
  for (const auto& p : reps) out.push_back(index.to_outcome(p));
  return out;
}

inline std::vector<Outcome> all_approve_outcomes(const ReductionBundle& b,
                                                 std::uint64_t cap = kDefaultOutcomeCap) {
  return all_approve_outcomes(GameIndex(b.game), cap);
}

/// The nine-agent game with room size 3 in which no outcome is popular.
inline Game counterexample_game() {
  Game g;
  g.s = 3;
  auto pref = [](std::vector<int> approve, std::vector<int> neutral) {
    return PreferenceOrder::trichotomous(3, approve, neutral);
  };
  g.red.push_back({"r1", Color::red, pref({1}, {})});
  g.red.push_back({"r2", Color::red, pref({2}, {})});
  g.red.push_back({"r3", Color::red, pref({2}, {})});
  for (int i = 1; i <= 4; ++i) {
    g.blue.push_back({"b" + std::to_string(i), Color::blue, pref({1}, {2})});
  }
  for (int i = 5; i <= 6; ++i) g.blue.push_back({"b" + std::to_string(i), Color::blue, pref({0}, {})});
  return g;
}

/// Outcomes {r1, x1, x2}, {r2, r3, x3}, {b5, b6, x4} for distinct
/// x1..x4 in {b1..b4}; canonical and sorted (12 of them).
inline std::vector<Outcome> top_type_outcomes() {
  const Game g = counterexample_game();
  std::vector<std::string> bs{"b1", "b2", "b3", "b4"};
  std::set<Outcome> out;
  std::sort(bs.begin(), bs.end());
  do {
    Outcome o{{{"r1", bs[0], bs[1]}, {"r2", "r3", bs[2]}, {"b5", "b6", bs[3]}}};
    out.insert(canonicalize(g, o));
  } while (std::next_permutation(bs.begin(), bs.end()));
  return {out.begin(), out.end()};
}

/// For a top-type outcome {P1, P2, P3}: moves x2 (the larger id of P1's blue
/// agents) to P3, P2's blue agent to P1 and P3's b1..b4 agent to P2.
inline Outcome rotation_challenger(const Outcome& o) {
  const Game g = counterexample_game();
  validate_outcome(g, o);
  auto is_flex = [](const std::string& id) {
    return id == "b1" || id == "b2" || id == "b3" || id == "b4";
  };
  std::vector<std::string> p1_blue;
  std::optional<std::string> p2_blue;
  std::optional<std::string> p3_blue;
  for (const auto& room : o.rooms) {
    std::set<std::string> r(room.begin(), room.end());
    std::vector<std::string> flex;
    for (const auto& id : room) {
      if (is_flex(id)) flex.push_back(id);
    }
    if (r.count("r1") && flex.size() == 2) {
      p1_blue = flex;
    } else if (r.count("r2") && r.count("r3") && flex.size() == 1) {
      p2_blue = flex[0];
    } else if (r.count("b5") && r.count("b6") && flex.size() == 1) {
      p3_blue = flex[0];
    }
  }
  if (p1_blue.size() != 2 || !p2_blue || !p3_blue) {
    throw Error(ErrorCode::domain, "outcome is not a top-type outcome");
  }
  std::sort(p1_blue.begin(), p1_blue.end());
  return rotate_agents(g, o, {*p2_blue, p1_blue[1], *p3_blue});
}

}  // namespace divpop

#endif  // DIVPOP_REDUCTIONS_HPP
