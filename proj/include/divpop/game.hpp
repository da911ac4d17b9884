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

// Roommate diversity games: agents of two colors are split into rooms of a
// fixed size, and every agent ranks rooms only by their fraction of red
// agents. This header holds the value types (fractions, preference orders,
// games, outcomes), their validation, and GameIndex, the dense integer view
// that the search code runs on.

#ifndef DIVPOP_GAME_HPP
#define DIVPOP_GAME_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divpop/error.hpp"

namespace divpop {

enum class Color { red, blue };

inline std::string_view to_string(Color c) {
  return c == Color::red ? "red" : "blue";
}

/// Fraction j/s of red agents in a room of size s.
struct Fraction {
  int red = 0;
  int size = 1;

  friend bool operator==(Fraction a, Fraction b) {
    return std::int64_t{a.red} * b.size == std::int64_t{b.red} * a.size;
  }
  friend std::strong_ordering operator<=>(Fraction a, Fraction b) {
    return std::int64_t{a.red} * b.size <=> std::int64_t{b.red} * a.size;
  }
};

inline Fraction theta(int red_count, int s) {
  if (s < 1) throw Error(ErrorCode::domain, "room size must be positive");
  if (red_count < 0 || red_count > s) {
    throw Error(ErrorCode::domain, "red count " + std::to_string(red_count) +
                                       " outside [0," + std::to_string(s) +
                                       "]");
  }
  return Fraction{red_count, s};
}

/// A fraction j/s is possible for an agent unless it would require the agent
/// to be absent from its own room (0/s for red, s/s for blue).
inline bool is_possible(Color c, int red_count, int s) {
  return c == Color::red ? red_count >= 1 : red_count <= s - 1;
}

enum class Comparison { prefer_first, prefer_second, indifferent };

/// Weak order over the fractions 0/s..s/s stored as a rank vector: lower
/// rank is strictly better, equal rank is indifference. Ranks are always
/// normalized to 0..levels()-1.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;

  static PreferenceOrder from_ranks(std::vector<int> ranks) {
    if (ranks.size() < 2) {
      throw Error(ErrorCode::rank_length,
                  "rank vector needs at least two entries (s >= 1)");
    }
    for (int r : ranks) {
      if (r < 0) throw Error(ErrorCode::domain, "negative rank");
    }
    std::vector<int> used(ranks);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (int& r : ranks) {
      r = static_cast<int>(std::lower_bound(used.begin(), used.end(), r) -
                           used.begin());
    }
    PreferenceOrder p;
    p.ranks_ = std::move(ranks);
    return p;
  }

  /// Approved numerators get rank 0, everything else rank 1.
  static PreferenceOrder dichotomous(int s, std::span<const int> approve) {
    return trichotomous(s, approve, {});
  }

  /// Approved numerators rank 0, neutral rank 1, the rest rank 2 (before
  /// normalization, so an empty level is squeezed out).
  static PreferenceOrder trichotomous(int s, std::span<const int> approve,
                                      std::span<const int> neutral) {
    if (s < 1) throw Error(ErrorCode::domain, "room size must be positive");
    std::vector<int> ranks(static_cast<std::size_t>(s) + 1, 2);
    auto mark = [&](std::span<const int> js, int rank) {
      for (int j : js) {
        if (j < 0 || j > s) {
          throw Error(ErrorCode::domain, "fraction numerator " +
                                             std::to_string(j) +
                                             " outside [0," +
                                             std::to_string(s) + "]");
        }
        if (ranks[j] != 2) {
          throw Error(ErrorCode::domain,
                      "numerator " + std::to_string(j) +
                          " listed in more than one level");
        }
        ranks[j] = rank;
      }
    };
    mark(approve, 0);
    mark(neutral, 1);
    return from_ranks(std::move(ranks));
  }

  int room_size() const { return static_cast<int>(ranks_.size()) - 1; }
  int rank(int j) const { return ranks_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& ranks() const { return ranks_; }
  int levels() const {
    return ranks_.empty() ? 0 : *std::max_element(ranks_.begin(), ranks_.end()) + 1;
  }

  friend bool operator==(const PreferenceOrder&, const PreferenceOrder&) = default;

 private:
  std::vector<int> ranks_;
};

inline Comparison compare(const PreferenceOrder& pref, Fraction f1, Fraction f2) {
  const int s = pref.room_size();
  auto numerator = [s](Fraction f) {
    if (f.size < 1 || f.red < 0 || f.red > f.size) {
      throw Error(ErrorCode::domain, "malformed fraction");
    }
    // Accept any representation equal to some j/s.
    const std::int64_t scaled = std::int64_t{f.red} * s;
    if (scaled % f.size != 0) {
      throw Error(ErrorCode::domain, "fraction is not of the form j/s");
    }
    return static_cast<int>(scaled / f.size);
  };
  const int r1 = pref.rank(numerator(f1));
  const int r2 = pref.rank(numerator(f2));
  if (r1 < r2) return Comparison::prefer_first;
  if (r2 < r1) return Comparison::prefer_second;
  return Comparison::indifferent;
}

struct Agent {
  std::string id;
  Color color = Color::red;
  PreferenceOrder preference;

  friend bool operator==(const Agent&, const Agent&) = default;
};

struct Game {
  int s = 1;
  std::vector<Agent> red;
  std::vector<Agent> blue;

  std::size_t agent_count() const { return red.size() + blue.size(); }
  int room_count() const { return static_cast<int>(agent_count()) / s; }

  friend bool operator==(const Game&, const Game&) = default;
};

inline void validate_game(const Game& g) {
  if (g.s < 1) throw Error(ErrorCode::domain, "room size must be positive");
  auto check_list = [&](const std::vector<Agent>& agents, Color expected) {
    for (const Agent& a : agents) {
      if (a.color != expected) {
        throw Error(ErrorCode::color_mismatch,
                    "agent '" + a.id + "' listed as " +
                        std::string(to_string(expected)) + " but colored " +
                        std::string(to_string(a.color)));
      }
      if (a.preference.room_size() != g.s) {
        throw Error(ErrorCode::rank_length,
                    "agent '" + a.id + "' has " +
                        std::to_string(a.preference.ranks().size()) +
                        " ranks, expected " + std::to_string(g.s + 1));
      }
    }
  };
  check_list(g.red, Color::red);
  check_list(g.blue, Color::blue);

  std::set<std::string_view> seen;
  for (const auto* list : {&g.red, &g.blue}) {
    for (const Agent& a : *list) {
      if (!seen.insert(a.id).second) {
        throw Error(ErrorCode::duplicate_id, "agent id '" + a.id + "' repeated");
      }
    }
  }
  if (g.agent_count() % static_cast<std::size_t>(g.s) != 0) {
    throw Error(ErrorCode::divisibility,
                std::to_string(g.agent_count()) +
                    " agents cannot be split into rooms of size " +
                    std::to_string(g.s));
  }
}

/// A partition of the agents into rooms, by agent id.
struct Outcome {
  std::vector<std::vector<std::string>> rooms;

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

inline void validate_outcome(const Game& g, const Outcome& o) {
  for (const auto& room : o.rooms) {
    if (room.size() != static_cast<std::size_t>(g.s)) {
      throw Error(ErrorCode::wrong_room_size,
                  "room with " + std::to_string(room.size()) +
                      " agents, expected " + std::to_string(g.s));
    }
  }
  std::set<std::string_view> known;
  for (const auto* list : {&g.red, &g.blue}) {
    for (const Agent& a : *list) known.insert(a.id);
  }
  std::set<std::string_view> placed;
  for (const auto& room : o.rooms) {
    for (const auto& id : room) {
      if (!known.count(id)) {
        throw Error(ErrorCode::unknown_agent, "agent '" + id + "' not in game");
      }
      if (!placed.insert(id).second) {
        throw Error(ErrorCode::duplicate_agent,
                    "agent '" + id + "' placed more than once");
      }
    }
  }
  for (std::string_view id : known) {
    if (!placed.count(id)) {
      throw Error(ErrorCode::missing_agent,
                  "agent '" + std::string(id) + "' not placed");
    }
  }
}

/// Rooms as lists of agent indices into a GameIndex.
struct Partition {
  std::vector<std::vector<int>> rooms;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

struct AgentClass {
  Color color = Color::red;
  /// Compressed ranks over the possible fractions; -1 marks an impossible
  /// fraction.
  std::vector<int> key;
  std::vector<std::string> members;

  friend bool operator==(const AgentClass&, const AgentClass&) = default;
};

/// Dense view of a validated game. Agents are indexed in ascending id order,
/// so index order and id order agree everywhere (canonical forms, tie
/// breaks). Ranks are "effective": impossible fractions are masked and the
/// remaining ranks are compressed to 0..L-1.
class GameIndex {
 public:
  explicit GameIndex(const Game& g) : s_(g.s) {
    validate_game(g);
    std::vector<const Agent*> agents;
    agents.reserve(g.agent_count());
    for (const auto& a : g.red) agents.push_back(&a);
    for (const auto& a : g.blue) agents.push_back(&a);
    std::sort(agents.begin(), agents.end(),
              [](const Agent* x, const Agent* y) { return x->id < y->id; });
    n_ = static_cast<int>(agents.size());
    k_ = n_ / s_;
    const int width = s_ + 1;
    rank_.assign(static_cast<std::size_t>(n_) * width, -1);
    for (int i = 0; i < n_; ++i) {
      const Agent& a = *agents[i];
      ids_.push_back(a.id);
      red_.push_back(a.color == Color::red);
      if (red_.back()) ++red_count_;
      position_.emplace(a.id, i);
      std::vector<int> used;
      for (int j = 0; j <= s_; ++j) {
        if (is_possible(a.color, j, s_)) used.push_back(a.preference.rank(j));
      }
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      for (int j = 0; j <= s_; ++j) {
        if (!is_possible(a.color, j, s_)) continue;
        rank_[static_cast<std::size_t>(i) * width + j] = static_cast<int>(
            std::lower_bound(used.begin(), used.end(), a.preference.rank(j)) -
            used.begin());
      }
      levels_.push_back(static_cast<int>(used.size()));
    }
    // Classes: same color and same effective rank vector.
    std::map<std::pair<bool, std::vector<int>>, int> class_of_key;
    class_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      std::vector<int> key(rank_.begin() + static_cast<std::ptrdiff_t>(i) * width,
                           rank_.begin() + static_cast<std::ptrdiff_t>(i + 1) * width);
      auto [it, inserted] = class_of_key.try_emplace(
          {red_[i], key}, static_cast<int>(class_members_.size()));
      if (inserted) {
        class_members_.emplace_back();
        class_red_.push_back(red_[i]);
        class_key_.push_back(std::move(key));
      }
      class_[i] = it->second;
      class_members_[it->second].push_back(i);
    }
  }

  int room_size() const { return s_; }
  int agent_count() const { return n_; }
  int room_count() const { return k_; }
  int red_count() const { return red_count_; }
  int blue_count() const { return n_ - red_count_; }

  const std::string& id(int i) const { return ids_[i]; }
  bool is_red(int i) const { return red_[i]; }
  Color color(int i) const { return red_[i] ? Color::red : Color::blue; }

  int index_of(std::string_view id) const {
    auto it = position_.find(std::string(id));
    if (it == position_.end()) {
      throw Error(ErrorCode::unknown_agent,
                  "agent '" + std::string(id) + "' not in game");
    }
    return it->second;
  }

  /// Effective rank of agent i at numerator j; -1 when j is impossible.
  int rank(int i, int j) const {
    return rank_[static_cast<std::size_t>(i) * (s_ + 1) + j];
  }
  int levels(int i) const { return levels_[i]; }

  /// +1 if agent i strictly prefers j_to over j_from, -1 if the reverse,
  /// 0 if indifferent.
  int gain(int i, int j_from, int j_to) const {
    const int a = rank(i, j_from);
    const int b = rank(i, j_to);
    return (b < a) - (a < b);
  }

  /// Approval level at a possible numerator: 0 approve, 1 neutral,
  /// 2 disapprove. The best level is approval and, when there are at least
  /// two levels, the worst level is disapproval.
  int approval(int i, int j) const {
    const int r = rank(i, j);
    if (r == 0) return 0;
    return r == levels_[i] - 1 ? 2 : 1;
  }

  int class_count() const { return static_cast<int>(class_members_.size()); }
  int class_of(int i) const { return class_[i]; }
  const std::vector<int>& class_members(int c) const { return class_members_[c]; }
  bool class_is_red(int c) const { return class_red_[c]; }
  const std::vector<int>& class_key(int c) const { return class_key_[c]; }
  int class_rank(int c, int j) const { return class_key_[c][j]; }

  Partition to_partition(const Outcome& o) const {
    Partition p;
    p.rooms.reserve(o.rooms.size());
    for (const auto& room : o.rooms) {
      auto& r = p.rooms.emplace_back();
      for (const auto& id : room) r.push_back(index_of(id));
    }
    return p;
  }

  Outcome to_outcome(const Partition& p) const {
    Outcome o;
    o.rooms.reserve(p.rooms.size());
    for (const auto& room : p.rooms) {
      auto& r = o.rooms.emplace_back();
      for (int i : room) r.push_back(ids_[i]);
    }
    return o;
  }

  int red_in(const std::vector<int>& room) const {
    int c = 0;
    for (int i : room) c += red_[i];
    return c;
  }

  /// Numerator of the room fraction seen by every agent.
  std::vector<int> fractions(const Partition& p) const {
    std::vector<int> f(static_cast<std::size_t>(n_), -1);
    for (const auto& room : p.rooms) {
      const int c = red_in(room);
      for (int i : room) f[i] = c;
    }
    return f;
  }

  /// Canonical form: members ascending, rooms by (red count, first member).
  void canonicalize(Partition& p) const {
    for (auto& room : p.rooms) std::sort(room.begin(), room.end());
    std::sort(p.rooms.begin(), p.rooms.end(),
              [this](const std::vector<int>& a, const std::vector<int>& b) {
                const int ca = red_in(a);
                const int cb = red_in(b);
                if (ca != cb) return ca < cb;
                return a.front() < b.front();
              });
  }

  /// Checks a partition of indices without going through ids.
  void validate(const Partition& p) const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (const auto& room : p.rooms) {
      if (room.size() != static_cast<std::size_t>(s_)) {
        throw Error(ErrorCode::wrong_room_size, "room of wrong size");
      }
      for (int i : room) {
        if (i < 0 || i >= n_) throw Error(ErrorCode::unknown_agent, "bad index");
        if (seen[i]++) {
          throw Error(ErrorCode::duplicate_agent,
                      "agent '" + ids_[i] + "' placed more than once");
        }
      }
    }
    for (int i = 0; i < n_; ++i) {
      if (!seen[i]) {
        throw Error(ErrorCode::missing_agent, "agent '" + ids_[i] + "' not placed");
      }
    }
  }

  /// Validates an id-based outcome against this game and converts it.
  Partition checked_partition(const Outcome& o) const {
    for (const auto& room : o.rooms) {
      if (room.size() != static_cast<std::size_t>(s_)) {
        throw Error(ErrorCode::wrong_room_size,
                    "room with " + std::to_string(room.size()) +
                        " agents, expected " + std::to_string(s_));
      }
    }
    Partition p = to_partition(o);
    validate(p);
    return p;
  }

 private:
  int s_ = 1;
  int n_ = 0;
  int k_ = 0;
  int red_count_ = 0;
  std::vector<std::string> ids_;
  std::vector<bool> red_;
  std::vector<int> rank_;
  std::vector<int> levels_;
  std::unordered_map<std::string, int> position_;
  std::vector<int> class_;
  std::vector<std::vector<int>> class_members_;
  std::vector<bool> class_red_;
  std::vector<std::vector<int>> class_key_;
};

inline Outcome canonicalize(const GameIndex& index, const Outcome& o) {
  Partition p = index.checked_partition(o);
  index.canonicalize(p);
  return index.to_outcome(p);
}

inline Outcome canonicalize(const Game& g, const Outcome& o) {
  return canonicalize(GameIndex(g), o);
}

inline std::vector<AgentClass> agent_classes(const Game& g) {
  const GameIndex index(g);
  std::vector<AgentClass> out;
  for (int c = 0; c < index.class_count(); ++c) {
    AgentClass cls;
    cls.color = index.class_is_red(c) ? Color::red : Color::blue;
    cls.key = index.class_key(c);
    for (int i : index.class_members(c)) cls.members.push_back(index.id(i));
    out.push_back(std::move(cls));
  }
  return out;
}

/// Agents of an outcome grouped by approval level of their room fraction.
struct ApprovalSplit {
  std::vector<std::string> approve;
  std::vector<std::string> neutral;
  std::vector<std::string> disapprove;
};

inline ApprovalSplit approval_split(const GameIndex& index, const Outcome& o) {
  const Partition p = index.checked_partition(o);
  const auto f = index.fractions(p);
  ApprovalSplit out;
  for (int i = 0; i < index.agent_count(); ++i) {
    switch (index.approval(i, f[i])) {
      case 0: out.approve.push_back(index.id(i)); break;
      case 1: out.neutral.push_back(index.id(i)); break;
      default: out.disapprove.push_back(index.id(i)); break;
    }
  }
  return out;
}

inline ApprovalSplit approval_split(const Game& g, const Outcome& o) {
  return approval_split(GameIndex(g), o);
}

}  // namespace divpop

#endif  // DIVPOP_GAME_HPP
