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

#ifndef DIVPOP_ENUMERATE_HPP
#define DIVPOP_ENUMERATE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "divpop/error.hpp"
#include "divpop/game.hpp"

namespace divpop {

inline constexpr std::uint64_t kDefaultOutcomeCap = 10'000'000;

enum class EnumerationMode { labeled, orbit };

/// n! / ((s!)^k k!), the number of partitions into k rooms of size s.
inline mpz_class labeled_outcome_count(int n, int s) {
  if (s < 1 || n < 0 || n % s != 0) return 0;
  // Fix the smallest unplaced agent and choose its s-1 roommates.
  mpz_class total = 1;
  for (int left = n; left > 0; left -= s) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(left - 1),
                 static_cast<unsigned long>(s - 1));
    total *= c;
  }
  return total;
}

inline void check_cap(const mpz_class& count, std::uint64_t cap,
                      const char* what) {
  if (count > mpz_class(std::to_string(cap))) {
    throw Error(ErrorCode::resource_limit,
                std::string(what) + " count " + count.get_str() +
                    " exceeds cap " + std::to_string(cap));
  }
}

namespace detail {

template <class Visit>
class LabeledWalker {
 public:
  LabeledWalker(int n, int s, Visit& visit)
      : n_(n), s_(s), visit_(visit), used_(static_cast<std::size_t>(n), 0) {
    part_.rooms.assign(static_cast<std::size_t>(n / s), {});
    for (auto& room : part_.rooms) room.reserve(static_cast<std::size_t>(s));
  }

  void run() {
    if (n_ == 0) {
      visit_(static_cast<const Partition&>(part_));
      return;
    }
    open_room(0);
  }

 private:
  void open_room(std::size_t r) {
    if (r == part_.rooms.size()) {
      visit_(static_cast<const Partition&>(part_));
      return;
    }
    int first = 0;
    while (used_[first]) ++first;
    used_[first] = 1;
    part_.rooms[r].push_back(first);
    fill(r, first + 1);
    part_.rooms[r].pop_back();
    used_[first] = 0;
  }

  void fill(std::size_t r, int from) {
    auto& room = part_.rooms[r];
    if (room.size() == static_cast<std::size_t>(s_)) {
      open_room(r + 1);
      return;
    }
    const int need = s_ - static_cast<int>(room.size());
    for (int i = from; i < n_; ++i) {
      if (used_[i]) continue;
      // Not enough candidates left above i to finish the room.
      int avail = 0;
      for (int t = i; t < n_ && avail < need; ++t) avail += !used_[t];
      if (avail < need) break;
      used_[i] = 1;
      room.push_back(i);
      fill(r, i + 1);
      room.pop_back();
      used_[i] = 0;
    }
  }

  int n_;
  int s_;
  Visit& visit_;
  std::vector<char> used_;
  Partition part_;
};

}  // namespace detail

/// Calls visit(const Partition&) once per set partition of the agents into
/// rooms. Partitions are not in canonical form; the reference passed is only
/// valid during the call.
template <class Visit>
void for_each_labeled(const GameIndex& index, Visit&& visit,
                      std::uint64_t cap = kDefaultOutcomeCap) {
  check_cap(labeled_outcome_count(index.agent_count(), index.room_size()), cap,
            "labeled outcome");
  detail::LabeledWalker<std::remove_reference_t<Visit>> walker(
      index.agent_count(), index.room_size(), visit);
  walker.run();
}

/// Class-count vector of a room: counts[c] agents of class c.
struct RoomType {
  std::vector<int> counts;
  int red = 0;

  friend bool operator==(const RoomType&, const RoomType&) = default;
};

/// Orbit of an outcome under relabelings within agent classes: the sorted
/// multiset of its rooms' class-count vectors.
using OrbitKey = std::vector<std::vector<int>>;

inline OrbitKey orbit_key(const GameIndex& index, const Partition& p) {
  OrbitKey key;
  key.reserve(p.rooms.size());
  for (const auto& room : p.rooms) {
    std::vector<int> counts(static_cast<std::size_t>(index.class_count()), 0);
    for (int i : room) ++counts[index.class_of(i)];
    key.push_back(std::move(counts));
  }
  std::sort(key.begin(), key.end());
  return key;
}

/// All room types (optionally filtered), in descending lexicographic order.
inline std::vector<RoomType> room_types(
    const GameIndex& index,
    const std::function<bool(const RoomType&)>& keep = {},
    std::uint64_t cap = kDefaultOutcomeCap) {
  const int classes = index.class_count();
  std::vector<int> limit(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    limit[c] = static_cast<int>(index.class_members(c).size());
  }
  std::vector<RoomType> out;
  RoomType cur;
  cur.counts.assign(static_cast<std::size_t>(classes), 0);
  std::vector<int> suffix(static_cast<std::size_t>(classes) + 1, 0);
  for (int c = classes - 1; c >= 0; --c) suffix[c] = suffix[c + 1] + limit[c];
  std::uint64_t visited = 0;
  std::function<void(int, int)> rec = [&](int c, int left) {
    if (++visited > cap) {
      throw Error(ErrorCode::resource_limit, "room type enumeration exceeds cap");
    }
    if (c == classes) {
      if (left == 0 && (!keep || keep(cur))) out.push_back(cur);
      return;
    }
    if (suffix[c] < left) return;
    for (int x = std::min(left, limit[c]); x >= 0; --x) {
      cur.counts[c] = x;
      if (index.class_is_red(c)) cur.red += x;
      rec(c + 1, left - x);
      if (index.class_is_red(c)) cur.red -= x;
    }
    cur.counts[c] = 0;
  };
  rec(0, index.room_size());
  return out;
}

/// Visits one multiset of room types per orbit, as indices into `types`
/// (non-decreasing). Only rooms drawn from `types` are considered.
template <class Visit>
void for_each_orbit(const GameIndex& index, const std::vector<RoomType>& types,
                    Visit&& visit, std::uint64_t cap = kDefaultOutcomeCap) {
  const int classes = index.class_count();
  const int k = index.room_count();
  std::vector<int> left(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    left[c] = static_cast<int>(index.class_members(c).size());
  }
  std::vector<std::size_t> chosen;
  std::uint64_t emitted = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == k) {
      if (++emitted > cap) {
        throw Error(ErrorCode::resource_limit, "orbit enumeration exceeds cap");
      }
      visit(static_cast<const std::vector<std::size_t>&>(chosen));
      return;
    }
    for (std::size_t t = from; t < types.size(); ++t) {
      const auto& cnt = types[t].counts;
      bool fits = true;
      for (int c = 0; c < classes; ++c) {
        if (cnt[c] > left[c]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (int c = 0; c < classes; ++c) left[c] -= cnt[c];
      chosen.push_back(t);
      rec(t);
      chosen.pop_back();
      for (int c = 0; c < classes; ++c) left[c] += cnt[c];
    }
  };
  if (k == 0) {
    visit(static_cast<const std::vector<std::size_t>&>(chosen));
    return;
  }
  rec(0);
}

/// Materializes a multiset of room types: class members are handed out in
/// ascending index order, room by room. Result is canonical.
inline Partition materialize_orbit(const GameIndex& index,
                                   const std::vector<RoomType>& types,
                                   const std::vector<std::size_t>& chosen) {
  std::vector<std::size_t> next(static_cast<std::size_t>(index.class_count()), 0);
  Partition p;
  for (std::size_t t : chosen) {
    auto& room = p.rooms.emplace_back();
    for (int c = 0; c < index.class_count(); ++c) {
      const auto& members = index.class_members(c);
      for (int x = 0; x < types[t].counts[c]; ++x) {
        room.push_back(members.at(next[c]++));
      }
    }
  }
  index.canonicalize(p);
  return p;
}

/// One canonical representative per orbit of the within-class relabeling
/// group, sorted.
inline std::vector<Partition> orbit_representatives(
    const GameIndex& index, std::uint64_t cap = kDefaultOutcomeCap) {
  const auto types = room_types(index, {}, cap);
  std::vector<Partition> reps;
  for_each_orbit(
      index, types,
      [&](const std::vector<std::size_t>& chosen) {
        reps.push_back(materialize_orbit(index, types, chosen));
      },
      cap);
  std::sort(reps.begin(), reps.end());
  return reps;
}

/// All labeled outcomes in canonical form, sorted.
inline std::vector<Partition> labeled_outcomes(
    const GameIndex& index, std::uint64_t cap = kDefaultOutcomeCap) {
  std::vector<Partition> out;
  for_each_labeled(
      index,
      [&](const Partition& p) {
        Partition q = p;
        index.canonicalize(q);
        out.push_back(std::move(q));
      },
      cap);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Outcome> enumerate_outcomes(
    const Game& g, EnumerationMode mode,
    std::uint64_t cap = kDefaultOutcomeCap) {
  const GameIndex index(g);
  const auto parts = mode == EnumerationMode::labeled
                         ? labeled_outcomes(index, cap)
                         : orbit_representatives(index, cap);
  std::vector<Outcome> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(index.to_outcome(p));
  return out;
}

/// Size of the orbit of p: prod_c n_c! / (prod_rooms prod_c x_rc! *
/// prod_types mult_t!).
inline mpz_class orbit_size(const GameIndex& index, const Partition& p) {
  const OrbitKey key = orbit_key(index, p);
  mpz_class num = 1;
  for (int c = 0; c < index.class_count(); ++c) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), index.class_members(c).size());
    num *= f;
  }
  mpz_class den = 1;
  for (const auto& counts : key) {
    for (int x : counts) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
      den *= f;
    }
  }
  for (std::size_t a = 0; a < key.size();) {
    std::size_t b = a;
    while (b < key.size() && key[b] == key[a]) ++b;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), b - a);
    den *= f;
    a = b;
  }
  return num / den;
}

/// Every labeled outcome in the orbit of `rep`, canonical and sorted. Built
/// by redistributing each class's members over the room slots the class
/// occupies, so it does not rely on the labeled enumerator.
inline std::vector<Partition> expand_orbit(const GameIndex& index,
                                           const Partition& rep,
                                           std::uint64_t cap = kDefaultOutcomeCap) {
  check_cap(orbit_size(index, rep), cap, "orbit");
  const int classes = index.class_count();
  const std::size_t k = rep.rooms.size();
  // need[r][c]: members of class c in room r.
  std::vector<std::vector<int>> need(k, std::vector<int>(classes, 0));
  for (std::size_t r = 0; r < k; ++r) {
    for (int i : rep.rooms[r]) ++need[r][index.class_of(i)];
  }
  std::set<Partition> seen;
  Partition cur;
  cur.rooms.assign(k, {});
  std::function<void(int)> per_class;
  std::function<void(int, std::size_t, std::vector<int>&)> per_room;
  per_class = [&](int c) {
    if (c == classes) {
      Partition q = cur;
      index.canonicalize(q);
      seen.insert(std::move(q));
      return;
    }
    std::vector<int> pool = index.class_members(c);
    per_room(c, 0, pool);
  };
  per_room = [&](int c, std::size_t r, std::vector<int>& pool) {
    if (r == k) {
      per_class(c + 1);
      return;
    }
    const int want = need[r][c];
    // Choose `want` members of pool for room r (combinations).
    std::vector<int> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
      if (static_cast<int>(pick.size()) == want) {
        std::vector<int> rest;
        for (int a : pool) {
          if (std::find(pick.begin(), pick.end(), a) == pick.end()) rest.push_back(a);
        }
        for (int a : pick) cur.rooms[r].push_back(a);
        per_room(c, r + 1, rest);
        for (std::size_t t = 0; t < pick.size(); ++t) cur.rooms[r].pop_back();
        return;
      }
      for (std::size_t t = from; t < pool.size(); ++t) {
        pick.push_back(pool[t]);
        choose(t + 1);
        pick.pop_back();
      }
    };
    choose(0);
  };
  per_class(0);
  return {seen.begin(), seen.end()};
}

/// Multiset of per-room red counts, stored non-increasing.
struct OutcomeSignature {
  std::vector<int> red_counts;

  friend bool operator==(const OutcomeSignature&, const OutcomeSignature&) = default;
  friend auto operator<=>(const OutcomeSignature&, const OutcomeSignature&) = default;
};

inline OutcomeSignature signature_of(const GameIndex& index, const Partition& p) {
  OutcomeSignature sig;
  for (const auto& room : p.rooms) sig.red_counts.push_back(index.red_in(room));
  std::sort(sig.red_counts.rbegin(), sig.red_counts.rend());
  return sig;
}

/// All signatures: non-increasing sequences of k values in [0,s] summing to
/// the number of red agents. Listed in descending lexicographic order.
inline std::vector<OutcomeSignature> enumerate_signatures(const GameIndex& index) {
  const int k = index.room_count();
  const int s = index.room_size();
  std::vector<OutcomeSignature> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int max_value, int left) {
    const int rooms_left = k - static_cast<int>(cur.size());
    if (rooms_left == 0) {
      if (left == 0) out.push_back({cur});
      return;
    }
    if (left > rooms_left * max_value) return;
    for (int v = std::min(max_value, left); v >= 0; --v) {
      cur.push_back(v);
      rec(v, left - v);
      cur.pop_back();
    }
  };
  rec(s, index.red_count());
  return out;
}

inline std::vector<OutcomeSignature> enumerate_signatures(const Game& g) {
  return enumerate_signatures(GameIndex(g));
}

}  // namespace divpop

#endif  // DIVPOP_ENUMERATE_HPP
