// Copyright 2026 The Lampworld Authors.
//
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


// Command-line entry points: run, record, replay, eval, serve.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "lampworld/agent.h"
#include "lampworld/service.h"
#include "lampworld/trace.h"
#include "lampworld/world.h"

namespace lampworld {
namespace {

void PrintPanel(std::int64_t t, const LampView& lamps) {
  auto lamp = [](bool on, const char* name) {
    return std::string(on ? "[*] " : "[ ] ") + name;
  };
  std::cout << "t=" << t << "  " << lamp(lamps.cross, "cross") << "  "
            << lamp(lamps.o, "o") << "  " << lamp(lamps.victory, "victory") << "  "
            << lamp(lamps.loss, "loss") << "  " << lamp(lamps.bad_move, "bad move") << "\n";
}

// Accepts a move code, a move name, or three checkbox bits such as "101".
std::optional<Move> ParseMove(const std::string& text) {
  if (text.size() == 3 && text.find_first_not_of("01") == std::string::npos) {
    return MoveFromCheckboxes(text[0] == '1', text[1] == '1', text[2] == '1');
  }
  if (text.size() == 1 && std::isdigit(static_cast<unsigned char>(text[0]))) {
    return MoveFromCode(text[0] - '0');
  }
  return MoveFromName(text);
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int RunCommand(const LifecycleConfig& config, const std::string& out_dir) {
  const LifecycleResult result = RunLifecycle(config);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  WriteFile(dir / "model.json", result.model.dump(2) + "\n");
  std::string csv = ScoreCardCsvHeader() + "\n";
  for (const ScoreCard& card : result.timeline) csv += ScoreCardCsvRow(card) + "\n";
  WriteFile(dir / "scorecard.csv", csv);
  WriteTraceFile(result.trace, (dir / "trace.jsonl").string());

  std::cout << "steps " << result.trace.records.size() << ", exploit from step "
            << (result.exploit_start ? std::to_string(*result.exploit_start) : "-")
            << ", exploit sets " << result.exploit_sets << "\n";
  std::cout << "phase,victories,losses,draws,bad_moves\n";
  auto row = [](const char* name, const ScoreCard& card) {
    std::cout << name << "," << card.victories << "," << card.losses << "," << card.draws
              << "," << card.bad_moves << "\n";
  };
  row("explore", result.explore);
  row("consolidate", result.consolidate);
  row("exploit", result.exploit);
  if (!result.exploit_start) {
    std::cerr << "step budget ended before the agent reached Exploit\n";
    return 1;
  }
  return 0;
}

int RecordCommand(std::uint64_t seed, int world, bool interactive, std::int64_t random_steps,
                  const std::string& out) {
  Recorder recorder(seed, world);
  if (interactive) {
    std::cout << "moves: 0-7, a name (Left Right Up Down PutCross NewGame), or bits b0b1b2; "
                 "q quits\n";
    PrintPanel(0, recorder.lamps());
    std::string line;
    while (std::cout << "> " && std::getline(std::cin, line)) {
      if (line == "q" || line == "quit") break;
      const std::optional<Move> move = ParseMove(line);
      if (!move) {
        std::cout << "unknown move: " << line << "\n";
        continue;
      }
      const StepRecord& record = recorder.Step(*move);
      PrintPanel(record.t + 1, record.lamps);
    }
  } else {
    SplitMix64 rng(seed ^ 0x7265'636f'7264ULL);
    for (std::int64_t i = 0; i < random_steps; ++i) {
      recorder.Step(static_cast<Move>(rng.Uniform(kNumMoves)));
    }
  }
  WriteTraceFile(recorder.trace(), out);
  std::cout << "wrote " << recorder.trace().records.size() << " records to " << out << "\n";
  return 0;
}

int ReplayCommand(const std::string& path) {
  Trace trace;
  try {
    trace = ReadTraceFile(path);
  } catch (const TraceError& e) {
    std::cerr << path << ":" << e.line() << ": " << e.what() << "\n";
    return 2;
  }
  const ReplayVerdict verdict = Replay(trace);
  if (!verdict.consistent) {
    std::cerr << "divergent at t=" << *verdict.divergent_t << "\n";
    return 1;
  }
  std::cout << "consistent: " << trace.records.size() << " records\n";
  return 0;
}

int EvalCommand(const LifecycleConfig& base, std::int64_t games, int seeds) {
  ScoreCard total;
  int failures = 0;
  std::cout << "seed,exploit_start,victories,losses,draws,bad_moves\n";
  for (int k = 0; k < seeds; ++k) {
    LifecycleConfig config = base;
    config.world_seed = base.world_seed + static_cast<std::uint64_t>(k);
    config.agent.seed = config.world_seed;
    config.exploit_sets = games;
    try {
      const LifecycleResult result = RunLifecycle(config);
      const ScoreCard& e = result.exploit;
      std::cout << config.world_seed << ","
                << (result.exploit_start ? std::to_string(*result.exploit_start) : "-") << ","
                << e.victories << "," << e.losses << "," << e.draws << "," << e.bad_moves
                << "\n";
      total += e;
      if (result.exploit_sets < games) ++failures;
    } catch (const AgentAbort& e) {
      std::cout << config.world_seed << ",aborted,,,,\n";
      std::cerr << "seed " << config.world_seed << ": " << e.what() << "\n";
      ++failures;
    }
  }
  std::cout << "total,," << total.victories << "," << total.losses << "," << total.draws << ","
            << total.bad_moves << "\n";
  return failures == 0 ? 0 : 1;
}

int ServeCommand(const std::string& host, int port) {
  SessionManager sessions;
  httplib::Server server;
  InstallRoutes(server, sessions);
  std::cout << "listening on " << host << ":" << port << "\n" << std::flush;
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace lampworld

int main(int argc, char** argv) {
  using namespace lampworld;
  CLI::App app{"Partially observable Tick-Tack-Toe world and its learning agent"};
  app.set_config("--config", "", "TOML file with default flag values");
  app.require_subcommand(1);

  LifecycleConfig lifecycle;
  std::uint64_t seed = 7;
  std::string out_dir = "out";
  std::string agent_kind = "auto";
  CLI::App* run = app.add_subcommand("run", "Run the agent life cycle and write model + scorecard");
  run->add_option("--world", lifecycle.world_id, "World id")->check(CLI::IsMember({1, 2}));
  run->add_option("--seed", seed, "World and agent seed");
  run->add_option("--steps", lifecycle.max_steps, "Step cap")->check(CLI::PositiveNumber);
  run->add_option("--explore", lifecycle.agent.explore_steps, "Explore budget B1")
      ->check(CLI::Range(100, 10000000));
  run->add_option("--sets", lifecycle.exploit_sets, "Sets to play in Exploit")
      ->check(CLI::PositiveNumber);
  run->add_option("--agent", agent_kind, "Agent kind")->check(CLI::IsMember({"auto"}));
  run->add_option("--out-dir", out_dir, "Directory for model.json, scorecard.csv, trace.jsonl");

  int record_world = 2;
  bool interactive = false;
  std::int64_t random_steps = 0;
  std::string record_out = "trace.jsonl";
  CLI::App* record = app.add_subcommand("record", "Record a trace");
  record->add_option("--world", record_world, "World id")->check(CLI::IsMember({1, 2}));
  record->add_option("--seed", seed, "World seed");
  auto* interactive_flag = record->add_flag("--interactive", interactive, "Play from the terminal");
  record->add_option("--random", random_steps, "Record N uniformly random moves")
      ->excludes(interactive_flag);
  record->add_option("--out", record_out, "Output JSONL path");

  std::string replay_path;
  CLI::App* replay = app.add_subcommand("replay", "Check a trace against the simulator");
  replay->add_option("file", replay_path, "Trace JSONL")->required();

  std::int64_t games = 1000;
  int seeds = 1;
  CLI::App* eval = app.add_subcommand("eval", "Run seeded life cycles and aggregate Exploit scores");
  eval->add_option("--games", games, "Exploit sets per seed")->check(CLI::PositiveNumber);
  eval->add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  eval->add_option("--first-seed", seed, "First seed");
  eval->add_option("--explore", lifecycle.agent.explore_steps, "Explore budget B1")
      ->check(CLI::Range(100, 10000000));

  std::string host = "127.0.0.1";
  int port = 8080;
  CLI::App* serve = app.add_subcommand("serve", "Start the session service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      lifecycle.world_seed = seed;
      lifecycle.agent.seed = seed;
      return RunCommand(lifecycle, out_dir);
    }
    if (*record) {
      if (!interactive && random_steps <= 0) {
        std::cerr << "record needs --interactive or --random N\n";
        return 2;
      }
      return RecordCommand(seed, record_world, interactive, random_steps, record_out);
    }
    if (*replay) return ReplayCommand(replay_path);
    if (*eval) {
      lifecycle.world_seed = seed;
      return EvalCommand(lifecycle, games, seeds);
    }
    if (*serve) return ServeCommand(host, port);
  } catch (const AgentAbort& e) {
    std::cerr << "agent aborted: " << e.what() << "\n";
    return 3;
  } catch (const ModelContradiction& e) {
    std::cerr << "model contradiction: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
