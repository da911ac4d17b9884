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

// JSON formats for games, outcomes, mixed outcomes, exact-cover instances,
// verdicts and reduction bundles. Readers reject unknown fields and report
// the JSON pointer of the offending value (and the line, for syntax errors).

#ifndef DIVPOP_IO_HPP
#define DIVPOP_IO_HPP

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "divpop/error.hpp"
#include "divpop/game.hpp"
#include "divpop/mixed.hpp"
#include "divpop/popularity.hpp"
#include "divpop/reductions.hpp"
#include "divpop/x3c.hpp"

namespace divpop {

using Json = nlohmann::json;

namespace detail {

class Field {
 public:
  Field(const Json& j, std::string path, std::string source)
      : j_(j), path_(std::move(path)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::schema,
                source_ + ": " + (path_.empty() ? std::string("/") : path_) + ": " + what);
  }

  const Json& json() const { return j_; }

  void expect_object(std::initializer_list<std::string_view> allowed,
                     std::initializer_list<std::string_view> required) const {
    if (!j_.is_object()) fail("expected an object");
    for (const auto& [key, value] : j_.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) fail("unknown field '" + key + "'");
    }
    for (auto r : required) {
      if (!j_.contains(std::string(r))) fail("missing field '" + std::string(r) + "'");
    }
  }

  Field operator[](std::string_view key) const {
    return Field(j_.at(std::string(key)), path_ + "/" + std::string(key), source_);
  }
  Field operator[](std::size_t i) const {
    return Field(j_.at(i), path_ + "/" + std::to_string(i), source_);
  }
  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  std::size_t array_size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    const auto v = j_.get<long long>();
    if (v < -(1LL << 30) || v > (1LL << 30)) fail("integer out of range");
    return static_cast<int>(v);
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  std::vector<int> int_list() const {
    std::vector<int> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back((*this)[i].integer());
    return out;
  }
  std::vector<std::string> string_list() const {
    std::vector<std::string> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back((*this)[i].string());
    return out;
  }

 private:
  const Json& j_;
  std::string path_;
  std::string source_;
};

/// Re-labels validation errors with the document they came from.
template <class F>
auto with_source(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    throw Error(e.code(), source + ": " + e.what());
  }
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::schema, source + ":" + std::to_string(line) + ":" +
                                       std::to_string(col) + ": malformed JSON");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::io, "write to '" + path + "' failed");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Preferences --------------------------------------------------------------

/// Shortest form that reproduces the stored rank vector exactly.
inline Json preference_to_json(const PreferenceOrder& p) {
  const auto& ranks = p.ranks();
  auto level = [&](int r) {
    Json out = Json::array();
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      if (ranks[j] == r) out.push_back(static_cast<int>(j));
    }
    return out;
  };
  if (p.levels() <= 2) return {{"type", "dichotomous"}, {"approve", level(0)}};
  if (p.levels() == 3) {
    return {{"type", "trichotomous"}, {"approve", level(0)}, {"neutral", level(1)}};
  }
  return {{"type", "ranks"}, {"ranks", ranks}};
}

inline PreferenceOrder preference_from_json(const detail::Field& f, int s) {
  if (!f.json().is_object() || !f.has("type")) f.fail("expected an object with a 'type'");
  const std::string type = f["type"].string();
  if (type == "ranks") {
    f.expect_object({"type", "ranks"}, {"ranks"});
    auto ranks = f["ranks"].int_list();
    if (static_cast<int>(ranks.size()) != s + 1) {
      throw Error(ErrorCode::rank_length, "has " + std::to_string(ranks.size()) +
                                              " ranks, expected " + std::to_string(s + 1));
    }
    return PreferenceOrder::from_ranks(std::move(ranks));
  }
  if (type == "dichotomous") {
    f.expect_object({"type", "approve"}, {"approve"});
    const auto approve = f["approve"].int_list();
    return PreferenceOrder::dichotomous(s, approve);
  }
  if (type == "trichotomous") {
    f.expect_object({"type", "approve", "neutral"}, {"approve", "neutral"});
    const auto approve = f["approve"].int_list();
    const auto neutral = f["neutral"].int_list();
    return PreferenceOrder::trichotomous(s, approve, neutral);
  }
  f["type"].fail("unknown preference type '" + type + "'");
}

// Games and outcomes --------------------------------------------------------

inline Json game_to_json(const Game& g) {
  Json out{{"s", g.s}, {"red", Json::array()}, {"blue", Json::array()}};
  for (const auto& a : g.red) {
    out["red"].push_back({{"id", a.id}, {"prefs", preference_to_json(a.preference)}});
  }
  for (const auto& a : g.blue) {
    out["blue"].push_back({{"id", a.id}, {"prefs", preference_to_json(a.preference)}});
  }
  return out;
}

inline Game game_from_json(const Json& j, const std::string& source = "<game>") {
  const detail::Field f(j, "", source);
  f.expect_object({"s", "red", "blue"}, {"s", "red", "blue"});
  Game g;
  g.s = f["s"].integer();
  if (g.s < 1) f["s"].fail("room size must be at least 1");
  for (const char* color : {"red", "blue"}) {
    const auto list = f[color];
    for (std::size_t i = 0, n = list.array_size(); i < n; ++i) {
      const auto entry = list[i];
      entry.expect_object({"id", "prefs"}, {"id", "prefs"});
      Agent a;
      a.id = entry["id"].string();
      a.color = std::string_view(color) == "red" ? Color::red : Color::blue;
      a.preference = detail::with_source(source + ": agent '" + a.id + "'", [&] {
        return preference_from_json(entry["prefs"], g.s);
      });
      (a.color == Color::red ? g.red : g.blue).push_back(std::move(a));
    }
  }
  detail::with_source(source, [&] {
    validate_game(g);
    return 0;
  });
  return g;
}

inline Game parse_game_text(const std::string& text, const std::string& source = "<game>") {
  return game_from_json(parse_json_text(text, source), source);
}

inline Game parse_game_file(const std::string& path) {
  return parse_game_text(read_text_file(path), path);
}

inline Json outcome_to_json(const Outcome& o) { return {{"rooms", o.rooms}}; }

/// Structure only; use validate_outcome against a game for membership.
inline Outcome outcome_from_json(const Json& j, const std::string& source = "<outcome>") {
  const detail::Field f(j, "", source);
  f.expect_object({"rooms"}, {"rooms"});
  Outcome o;
  const auto rooms = f["rooms"];
  for (std::size_t r = 0, n = rooms.array_size(); r < n; ++r) {
    o.rooms.push_back(rooms[r].string_list());
  }
  return o;
}

inline Outcome parse_outcome_file(const std::string& path) {
  return outcome_from_json(parse_json_text(read_text_file(path), path), path);
}

// Mixed outcomes -------------------------------------------------------------

inline std::string rational_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline mpq_class rational_from_string(const detail::Field& f) {
  const std::string text = f.string();
  const auto slash = text.find('/');
  auto digits = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s[0] == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) {
    f.fail("expected a rational 'num/den', got '" + text + "'");
  }
  mpq_class q{mpz_class(num), mpz_class(den)};
  if (sgn(q.get_den()) == 0) f.fail("zero denominator");
  q.canonicalize();
  return q;
}

inline Json mixed_to_json(const MixedOutcome& p) {
  Json support = Json::array();
  for (const auto& [o, prob] : p.support) {
    support.push_back({{"outcome", outcome_to_json(o)}, {"prob", rational_to_string(prob)}});
  }
  return {{"support", support}};
}

inline MixedOutcome mixed_from_json(const Json& j, const std::string& source = "<mixed>") {
  const detail::Field f(j, "", source);
  f.expect_object({"support"}, {"support"});
  MixedOutcome p;
  const auto support = f["support"];
  for (std::size_t i = 0, n = support.array_size(); i < n; ++i) {
    const auto entry = support[i];
    entry.expect_object({"outcome", "prob"}, {"outcome", "prob"});
    p.support.emplace_back(outcome_from_json(entry["outcome"].json(), source),
                           rational_from_string(entry["prob"]));
  }
  return p;
}

// Exact cover instances -------------------------------------------------------

inline Json x3c_to_json(const X3CInstance& inst) {
  Json sets = Json::array();
  for (const auto& s : inst.sets) sets.push_back({s[0], s[1], s[2]});
  return {{"m", inst.m}, {"sets", sets}};
}

inline X3CInstance x3c_from_json(const Json& j, const std::string& source = "<x3c>") {
  const detail::Field f(j, "", source);
  f.expect_object({"m", "sets"}, {"m", "sets"});
  X3CInstance inst;
  inst.m = f["m"].integer();
  const auto sets = f["sets"];
  for (std::size_t i = 0, n = sets.array_size(); i < n; ++i) {
    const auto list = sets[i].int_list();
    if (list.size() != 3) sets[i].fail("expected exactly 3 elements");
    inst.sets.push_back({list[0], list[1], list[2]});
  }
  detail::with_source(source, [&] {
    validate_x3c(inst);
    return 0;
  });
  return inst;
}

inline X3CInstance parse_x3c_file(const std::string& path) {
  return x3c_from_json(parse_json_text(read_text_file(path), path), path);
}

// Reports -------------------------------------------------------------------

inline Json margin_to_json(const MarginReport& r) {
  return {{"margin", r.margin}, {"improved", r.improved}, {"worsened", r.worsened}};
}

inline Json verdict_to_json(const PopularityVerdict& v) {
  return {{"status", std::string(to_string(v.status))},
          {"margin", v.margin ? Json(*v.margin) : Json(nullptr)},
          {"witness", v.witness ? outcome_to_json(*v.witness) : Json(nullptr)}};
}

inline Json bundle_sidecar_to_json(const ReductionBundle& b) {
  Json groups = Json::object();
  for (const auto& [name, ids] : b.groups) groups[name] = ids;
  return {{"groups", groups}, {"variant", std::string(to_string(b.variant))}};
}

struct BundleSidecar {
  ReductionVariant variant = ReductionVariant::strict;
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
};

inline BundleSidecar bundle_sidecar_from_json(const Json& j,
                                              const std::string& source = "<bundle>") {
  const detail::Field f(j, "", source);
  f.expect_object({"groups", "variant"}, {"groups", "variant"});
  BundleSidecar out;
  out.variant = detail::with_source(source, [&] { return parse_variant(f["variant"].string()); });
  const auto groups = f["groups"];
  if (!groups.json().is_object()) groups.fail("expected an object");
  for (const auto& [name, ids] : groups.json().items()) {
    out.groups.emplace_back(name, groups[name].string_list());
  }
  return out;
}

/// JSON Schemas of the file formats.
inline Json file_schemas() {
  const Json int_list = {{"type", "array"}, {"items", {{"type", "integer"}}}};
  const Json prefs = {
      {"oneOf",
       {{{"type", "object"},
         {"additionalProperties", false},
         {"required", {"type", "ranks"}},
         {"properties", {{"type", {{"const", "ranks"}}}, {"ranks", int_list}}}},
        {{"type", "object"},
         {"additionalProperties", false},
         {"required", {"type", "approve"}},
         {"properties", {{"type", {{"const", "dichotomous"}}}, {"approve", int_list}}}},
        {{"type", "object"},
         {"additionalProperties", false},
         {"required", {"type", "approve", "neutral"}},
         {"properties",
          {{"type", {{"const", "trichotomous"}}}, {"approve", int_list}, {"neutral", int_list}}}}}}};
  const Json agent = {{"type", "object"},
                      {"additionalProperties", false},
                      {"required", {"id", "prefs"}},
                      {"properties", {{"id", {{"type", "string"}}}, {"prefs", prefs}}}};
  const Json agents = {{"type", "array"}, {"items", agent}};
  const Json outcome = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"rooms"}},
      {"properties",
       {{"rooms",
         {{"type", "array"},
          {"items", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}}}};
  Json out;
  out["game"] = {{"type", "object"},
                 {"additionalProperties", false},
                 {"required", {"s", "red", "blue"}},
                 {"properties",
                  {{"s", {{"type", "integer"}, {"minimum", 1}}}, {"red", agents}, {"blue", agents}}}};
  out["outcome"] = outcome;
  out["mixed"] = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"support"}},
      {"properties",
       {{"support",
         {{"type", "array"},
          {"items",
           {{"type", "object"},
            {"additionalProperties", false},
            {"required", {"outcome", "prob"}},
            {"properties",
             {{"outcome", outcome},
              {"prob", {{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}}}}}}}}}}}};
  out["x3c"] = {{"type", "object"},
                {"additionalProperties", false},
                {"required", {"m", "sets"}},
                {"properties",
                 {{"m", {{"type", "integer"}, {"minimum", 1}}},
                  {"sets",
                   {{"type", "array"},
                    {"items",
                     {{"type", "array"},
                      {"items", {{"type", "integer"}}},
                      {"minItems", 3},
                      {"maxItems", 3}}}}}}}};
  out["bundle"] = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"groups", "variant"}},
      {"properties",
       {{"groups",
         {{"type", "object"},
          {"additionalProperties", {{"type", "array"}, {"items", {{"type", "string"}}}}}}},
        {"variant", {{"enum", {"strict", "mixed", "popularity"}}}}}}};
  return out;
}

}  // namespace divpop

#endif  // DIVPOP_IO_HPP
