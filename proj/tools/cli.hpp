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

// The divpop command line. run() parses arguments, executes one
// subcommand and writes a JSON run report (or text with --human).
//
// Exit codes: 0 success or affirmative answer, 2 well-formed negative
// answer, 1 input or internal error.

#ifndef DIVPOP_TOOLS_CLI_HPP
#define DIVPOP_TOOLS_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "divpop/divpop.hpp"

namespace divpop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

/// 64-bit FNV-1a, hex.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CommandResult {
  Json result;
  int exit = kExitOk;
  std::string summary;
};

struct Flags {
  std::string game;
  std::string outcome;
  std::string mixed;
  std::string x3c;
  std::string variant;
  std::string out_dir = ".";
  std::string choice;
  std::string strategy = "signature";
  std::string mode = "labeled";
  std::uint64_t cap = kDefaultOutcomeCap;
  std::uint64_t seed = 1;
  int count = 100;
  int max_agents = 8;
  int jobs = 1;
  bool deep = false;
  bool verify = false;
  bool human = false;
  bool count_only = false;
};

class Runner {
 public:
  explicit Runner(const Flags& f) : f_(f) {}

  Json inputs = Json::object();

  Game load_game() { return parse_game_text(read(f_.game), f_.game); }
  Outcome load_outcome(const Game& g) {
    Outcome o = outcome_from_json(parse_json_text(read(f_.outcome), f_.outcome), f_.outcome);
    validate_outcome(g, o);
    return o;
  }
  X3CInstance load_x3c() { return x3c_from_json(parse_json_text(read(f_.x3c), f_.x3c), f_.x3c); }
  MixedOutcome load_mixed() {
    return mixed_from_json(parse_json_text(read(f_.mixed), f_.mixed), f_.mixed);
  }

  SearchOptions search() const {
    SearchOptions o;
    o.strategy = f_.strategy == "bruteforce" ? Strategy::bruteforce : Strategy::signature;
    o.cap = f_.cap;
    o.jobs = f_.jobs > 0 ? f_.jobs : std::max(1u, std::thread::hardware_concurrency());
    return o;
  }
  EnumerationMode mode() const {
    return f_.mode == "orbit" ? EnumerationMode::orbit : EnumerationMode::labeled;
  }

  CommandResult check_popular() {
    const Game g = load_game();
    const Outcome o = load_outcome(g);
    const auto v = is_popular(g, o, search());
    return {verdict_to_json(v), v.status == VerdictStatus::popular ? kExitOk : kExitNegative,
            std::string(to_string(v.status))};
  }

  CommandResult check_strict() {
    const Game g = load_game();
    const Outcome o = load_outcome(g);
    const auto v = is_strictly_popular(g, o, search());
    return {verdict_to_json(v),
            v.status == VerdictStatus::strictly_popular ? kExitOk : kExitNegative,
            std::string(to_string(v.status))};
  }

  CommandResult find_popular_cmd() {
    const Game g = load_game();
    const auto o = find_popular(g, search());
    if (!o) return {{{"outcome", nullptr}}, kExitNegative, "no popular outcome"};
    return {{{"outcome", outcome_to_json(*o)}}, kExitOk, "popular outcome found"};
  }

  CommandResult solve_s2_cmd() {
    const Game g = load_game();
    require_s2(g.s);
    const GameIndex index(g);
    const auto m = solve_s2_matching(index);
    const Outcome o = canonicalize(index, matching_outcome(m));
    return {{{"outcome", outcome_to_json(o)},
             {"weight", m.weight},
             {"happy", happy_count(index, o)}},
            kExitOk,
            "popular outcome with " + std::to_string(m.weight) + " happy agents"};
  }

  CommandResult mixed_cmd() {
    const Game g = load_game();
    const GameIndex index(g);
    const MixedOutcome p = solve_mixed(index, {mode(), f_.cap});
    const MixedVerdict check = verify_mixed(index, p, f_.cap);
    Json result = mixed_to_json(p);
    result["certificate"] = {{"min_margin", rational_to_string(check.margin)},
                             {"challengers", check.challengers},
                             {"worst_challenger", outcome_to_json(check.worst_challenger)}};
    return {result, sgn(check.margin) >= 0 ? kExitOk : kExitError,
            "mixed popular outcome with support " + std::to_string(p.support.size())};
  }

  CommandResult verify_mixed_cmd() {
    const Game g = load_game();
    const MixedOutcome p = load_mixed();
    const MixedVerdict v = verify_mixed(g, p, f_.cap);
    const bool ok = sgn(v.margin) >= 0;
    return {{{"status", ok ? "MixedPopular" : "NotMixedPopular"},
             {"margin", rational_to_string(v.margin)},
             {"worst_challenger", outcome_to_json(v.worst_challenger)},
             {"challengers", v.challengers}},
            ok ? kExitOk : kExitNegative,
            ok ? "mixed popular" : "not mixed popular"};
  }

  CommandResult x3c_solve_cmd() {
    const X3CInstance inst = load_x3c();
    const auto cover = x3c_solve(inst);
    if (!cover) return {{{"cover", nullptr}}, kExitNegative, "no exact cover"};
    return {{{"cover", *cover}}, kExitOk, "exact cover found"};
  }

  CommandResult reduce_cmd() {
    const X3CInstance inst = load_x3c();
    const ReductionBundle b = build_reduction(parse_variant(f_.variant), inst);
    const GameIndex index(b.game);
    const std::filesystem::path dir(f_.out_dir);
    std::filesystem::create_directories(dir);
    const std::string prefix = std::string(to_string(b.variant)) + "-";
    Json files = Json::object();
    auto emit = [&](const std::string& name, const Json& j) {
      const auto path = (dir / (prefix + name)).string();
      write_text_file(path, dump(j));
      files[name] = path;
    };
    emit("game.json", game_to_json(b.game));
    emit("bundle.json", bundle_sidecar_to_json(b));
    const Outcome mono = monolithic_outcome(b);
    emit("monolithic.json", outcome_to_json(mono));

    Json result{{"variant", std::string(to_string(b.variant))},
                {"s", b.game.s},
                {"red", b.game.red.size()},
                {"blue", b.game.blue.size()},
                {"rooms", index.room_count()},
                {"classes", index.class_count()}};
    Json sizes = Json::object();
    for (const auto& [name, ids] : b.groups) sizes[name] = ids.size();
    result["groups"] = sizes;
    const auto split = approval_split(index, mono);
    result["monolithic"] = {{"neutral", split.neutral}, {"disapprove", split.disapprove}};

    const auto cover = x3c_solve(inst);
    result["cover"] = cover ? Json(*cover) : Json(nullptr);
    if (cover) {
      std::optional<std::vector<std::string>> choice;
      if (!f_.choice.empty()) {
        std::vector<std::string> ids;
        std::string cur;
        for (char c : f_.choice + ",") {
          if (c == ',') {
            ids.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        choice = ids;
      }
      const Outcome reduced = reduced_outcome(b, *cover, choice);
      emit("reduced.json", outcome_to_json(reduced));
      result["reduced_vs_monolithic"] = margin_to_json(popularity_margin(index, reduced, mono));
      if (b.variant == ReductionVariant::popularity) {
        const auto pick = choice ? *choice : default_reduced_choice(b);
        const Outcome rot = reduced_rotation_challenger(b, reduced, pick);
        emit("rotation.json", outcome_to_json(rot));
        result["rotation_vs_reduced"] = margin_to_json(popularity_margin(index, rot, reduced));
      }
    }
    if (f_.deep) {
      SearchOptions opts = search();
      opts.strategy = Strategy::signature;
      result["monolithic_verdict"] = verdict_to_json(is_popular(index, mono, opts));
      if (b.variant == ReductionVariant::strict) {
        Json approving = Json::array();
        for (const auto& o : all_approve_outcomes(index, f_.cap)) {
          approving.push_back(outcome_to_json(o));
        }
        result["all_approve"] = approving;
      }
    }
    result["files"] = files;
    return {result, kExitOk,
            std::string(to_string(b.variant)) + " reduction: s=" + std::to_string(b.game.s) +
                ", " + std::to_string(b.game.red.size()) + " red, " +
                std::to_string(b.game.blue.size()) + " blue"};
  }

  CommandResult counterexample_cmd() {
    const Game g = counterexample_game();
    if (!f_.verify) return {{{"game", game_to_json(g)}}, kExitOk, "counterexample game"};
    const GameIndex index(g);
    const SearchOptions opts = search();
    std::uint64_t outcomes = 0;
    std::uint64_t not_popular = 0;
    std::uint64_t witnesses_ok = 0;
    std::uint64_t unhappy_ok = 0;
    std::uint64_t disapprove_ok = 0;
    for (const auto& p : labeled_outcomes(index, f_.cap)) {
      ++outcomes;
      const Outcome o = index.to_outcome(p);
      const auto v = is_popular(index, o, opts);
      if (v.status == VerdictStatus::not_popular) {
        ++not_popular;
        if (v.witness && popularity_margin(index, *v.witness, o).margin == v.margin) {
          ++witnesses_ok;
        }
      }
      const auto split = approval_split(index, o);
      unhappy_ok += split.neutral.size() + split.disapprove.size() >= 2;
      disapprove_ok += !split.disapprove.empty();
    }
    std::uint64_t rotations_ok = 0;
    const auto tops = top_type_outcomes();
    for (const auto& o : tops) {
      rotations_ok += popularity_margin(index, rotation_challenger(o), o).margin == 1;
    }
    const bool none = !find_popular(index, opts);
    const bool all = not_popular == outcomes && witnesses_ok == outcomes &&
                     unhappy_ok == outcomes && disapprove_ok == outcomes &&
                     rotations_ok == tops.size() && none;
    Json result{{"outcomes", outcomes},
                {"not_popular", not_popular},
                {"witnesses_verified", witnesses_ok},
                {"at_least_two_unapproving", unhappy_ok},
                {"at_least_one_disapproving", disapprove_ok},
                {"top_type_outcomes", tops.size()},
                {"rotations_with_margin_one", rotations_ok},
                {"popular_outcome", nullptr}};
    if (!all) return {result, kExitError, "counterexample checks failed"};
    return {result, kExitNegative,
            "no popular outcome among " + std::to_string(outcomes) + " outcomes"};
  }

  CommandResult enumerate_cmd() {
    const Game g = load_game();
    const GameIndex index(g);
    Json result{{"mode", f_.mode}, {"labeled_count", labeled_outcome_count(index.agent_count(), g.s).get_str()}};
    if (f_.count_only && mode() == EnumerationMode::labeled) {
      return {result, kExitOk, result["labeled_count"].get<std::string>() + " outcomes"};
    }
    const auto parts = mode() == EnumerationMode::labeled ? labeled_outcomes(index, f_.cap)
                                                          : orbit_representatives(index, f_.cap);
    result["count"] = parts.size();
    if (!f_.count_only) {
      Json list = Json::array();
      for (const auto& p : parts) {
        Json item = outcome_to_json(index.to_outcome(p));
        if (mode() == EnumerationMode::orbit) item["orbit_size"] = orbit_size(index, p).get_str();
        list.push_back(std::move(item));
      }
      result["outcomes"] = list;
    }
    return {result, kExitOk, std::to_string(parts.size()) + " outcomes"};
  }

  CommandResult schema_cmd() { return {file_schemas(), kExitOk, "file schemas"}; }

  /// Random corpus: signature search against brute force, plus the s=2
  /// solver against exhaustive matching.
  CommandResult selftest_cmd() {
    Corpus corpus(f_.seed);
    int agree = 0;
    int s2_ok = 0;
    int s2_total = 0;
    Json mismatches = Json::array();
    for (int t = 0; t < f_.count; ++t) {
      const Game g = corpus.random_game({2, 3, 4}, f_.max_agents);
      const GameIndex index(g);
      const Outcome o = corpus.random_outcome(g);
      SearchOptions brute = search();
      brute.strategy = Strategy::bruteforce;
      SearchOptions sig = search();
      sig.strategy = Strategy::signature;
      const int a = best_challenger(index, o, brute).margin;
      const int b = best_challenger(index, o, sig).margin;
      if (a == b) {
        ++agree;
      } else {
        mismatches.push_back({{"game", game_to_json(g)},
                              {"outcome", outcome_to_json(o)},
                              {"bruteforce", a},
                              {"signature", b}});
      }
      if (g.s == 2) {
        ++s2_total;
        const auto m = solve_s2_matching(index);
        const Outcome best = canonicalize(index, matching_outcome(m));
        s2_ok += m.weight == solve_s2_generic(index).weight &&
                 is_popular(index, best, brute).status == VerdictStatus::popular;
      }
    }
    const bool ok = agree == f_.count && s2_ok == s2_total;
    return {{{"seed", f_.seed},
             {"games", f_.count},
             {"max_agents", f_.max_agents},
             {"signature_agrees", agree},
             {"s2_games", s2_total},
             {"s2_popular", s2_ok},
             {"mismatches", mismatches}},
            ok ? kExitOk : kExitError,
            ok ? "all checks passed" : "self-test mismatches"};
  }

 private:
  std::string read(const std::string& path) {
    if (path.empty()) throw Error(ErrorCode::io, "missing input file option");
    std::string text = read_text_file(path);
    inputs[path] = digest(text);
    return text;
  }

  const Flags& f_;
};

/// Indented key/value rendering of a report.
inline void render_human(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    const bool nested = (value.is_object() && !value.empty()) ||
                        (value.is_array() && !value.empty() && value.front().is_structured());
    if (nested) {
      out << pad << key << ":\n";
      if (value.is_object()) {
        render_human(value, out, indent + 2);
      } else {
        for (const auto& item : value) {
          if (item.is_object()) {
            out << pad << "  -\n";
            render_human(item, out, indent + 4);
          } else {
            out << pad << "  - " << item.dump() << "\n";
          }
        }
      }
    } else {
      out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
    }
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Flags f;
  CLI::App app{"Popularity toolkit for roommate diversity games", "divpop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "divpop 1.0.0");

  auto strategy_opt = [&](CLI::App* c) {
    c->add_option("--strategy", f.strategy, "challenger search: bruteforce or signature")
        ->check(CLI::IsMember({"bruteforce", "signature"}));
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--cap", f.cap, "enumeration cap")->check(CLI::PositiveNumber);
    c->add_option("--jobs", f.jobs, "worker threads (0: all cores)")
        ->check(CLI::NonNegativeNumber);
    c->add_flag("--human", f.human, "print text instead of JSON");
  };
  auto game_opt = [&](CLI::App* c) {
    c->add_option("--game", f.game, "game file")->required();
  };
  auto mode_opt = [&](CLI::App* c) {
    c->add_option("--mode", f.mode, "labeled or orbit")->check(CLI::IsMember({"labeled", "orbit"}));
  };

  std::vector<std::pair<CLI::App*, std::function<CommandResult(Runner&)>>> commands;
  auto add = [&](const char* name, const char* help, std::function<CommandResult(Runner&)> fn) {
    CLI::App* c = app.add_subcommand(name, help);
    common(c);
    commands.emplace_back(c, std::move(fn));
    return c;
  };

  auto* cp = add("check-popular", "is an outcome popular?", &Runner::check_popular);
  game_opt(cp);
  cp->add_option("--outcome", f.outcome, "outcome file")->required();
  strategy_opt(cp);

  auto* cs = add("check-strict", "is an outcome strictly popular?", &Runner::check_strict);
  game_opt(cs);
  cs->add_option("--outcome", f.outcome, "outcome file")->required();
  strategy_opt(cs);

  auto* fp = add("find-popular", "first popular outcome in canonical order",
                 &Runner::find_popular_cmd);
  game_opt(fp);
  strategy_opt(fp);

  auto* s2 = add("solve-s2", "popular outcome for rooms of two", &Runner::solve_s2_cmd);
  game_opt(s2);

  auto* mx = add("mixed", "exact mixed popular outcome", &Runner::mixed_cmd);
  game_opt(mx);
  mode_opt(mx);

  auto* vm = add("verify-mixed", "worst pure challenger of a mixed outcome",
                 &Runner::verify_mixed_cmd);
  game_opt(vm);
  vm->add_option("--mixed", f.mixed, "mixed outcome file")->required();

  auto* rd = add("reduce", "build a game from an exact-cover instance", &Runner::reduce_cmd);
  rd->add_option("--variant", f.variant, "strict, mixed or popularity")
      ->required()
      ->check(CLI::IsMember({"strict", "mixed", "popularity"}));
  rd->add_option("--x3c", f.x3c, "exact-cover instance file")->required();
  rd->add_option("--out-dir", f.out_dir, "directory for bundle files");
  rd->add_option("--choice", f.choice, "five comma-separated agents for the reduced outcome");
  rd->add_flag("--deep", f.deep, "also verify the monolithic outcome (slow)");
  strategy_opt(rd);

  auto* xs = add("x3c-solve", "find an exact cover", &Runner::x3c_solve_cmd);
  xs->add_option("--x3c", f.x3c, "exact-cover instance file")->required();

  auto* ce = add("counterexample", "the nine-agent game without a popular outcome",
                 &Runner::counterexample_cmd);
  ce->add_flag("--verify", f.verify, "check every outcome");
  strategy_opt(ce);

  auto* en = add("enumerate", "list outcomes", &Runner::enumerate_cmd);
  game_opt(en);
  mode_opt(en);
  en->add_flag("--count-only", f.count_only, "only report counts");

  add("schema", "print the JSON schemas of the file formats", &Runner::schema_cmd);

  auto* st = add("selftest", "random cross-checks of the solvers", &Runner::selftest_cmd);
  st->add_option("--seed", f.seed, "random seed");
  st->add_option("--count", f.count, "number of games")->check(CLI::PositiveNumber);
  st->add_option("--max-agents", f.max_agents, "largest game")->check(CLI::Range(2, 12));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  Json report{{"command", args}};
  Runner runner(f);
  int code = kExitError;
  std::string summary;
  try {
    for (auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      CommandResult r = fn(runner);
      report["result"] = std::move(r.result);
      code = r.exit;
      summary = std::move(r.summary);
    }
  } catch (const Error& e) {
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "divpop: " << to_string(e.code()) << ": " << e.what() << "\n";
    summary = "error";
    code = kExitError;
  } catch (const std::exception& e) {
    report["error"] = {{"code", "internal"}, {"message", e.what()}};
    err << "divpop: internal: " << e.what() << "\n";
    summary = "error";
    code = kExitError;
  }
  report["inputs"] = runner.inputs;
  report["exit_status"] = code;
  report["duration_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (f.human) {
    out << summary << "\n";
    render_human(report, out, 2);
  } else {
    out << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace divpop::cli

#endif  // DIVPOP_TOOLS_CLI_HPP
