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

#ifndef LAMPWORLD_INDUCTION_H_
#define LAMPWORLD_INDUCTION_H_

// First-level model induction. Small deterministic automata (at most three
// states) are enumerated by brute force over a structured class: each
// machine reacts to at most three guard symbols and treats every other
// symbol as a self-loop. A machine is kept only if it carries a
// "peculiarity": a (state, action) -> bad_move prediction that holds with
// no exception on the training trace and that no state-free rule explains.
//
// Running an automaton over a trace: at each step the action transition is
// applied only if the bad_move lamp stayed off (a bad move leaves the world
// unchanged), then every relevant lamp-event symbol whose lamp is on fires
// in symbol order.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lampworld/trace.h"
#include "lampworld/world.h"

namespace lampworld {

inline constexpr int kNumGuardSymbols = 13;
inline constexpr int kMaxStates = 3;
inline constexpr int kMaxRelevant = 3;

// Indices 0..7 are the actions; 8..12 are the lamp events victory, loss,
// bad_move, cross, o.
class GuardSymbol {
 public:
  enum class Kind { kAction, kLampEvent };

  constexpr GuardSymbol() = default;
  static constexpr GuardSymbol Action(Move move) {
    return GuardSymbol(MoveCode(move));
  }
  static GuardSymbol LampEvent(Lamp lamp);
  static constexpr GuardSymbol FromIndex(int index) { return GuardSymbol(index); }

  constexpr int index() const { return index_; }
  Kind kind() const { return index_ < kNumMoves ? Kind::kAction : Kind::kLampEvent; }
  Move action() const { return static_cast<Move>(index_); }
  Lamp lamp() const;
  std::string Name() const;
  static std::optional<GuardSymbol> FromName(std::string_view name);

  friend constexpr bool operator==(GuardSymbol, GuardSymbol) = default;
  friend constexpr auto operator<=>(GuardSymbol, GuardSymbol) = default;

 private:
  constexpr explicit GuardSymbol(int index) : index_(index) {}
  int index_ = 0;
};

// (state, action) -> bad_move prediction. Multi-state automata only carry
// rules that depend on their state; state-free rules live on the
// single-state machine and in the constant rules.
struct PeculiarityRule {
  int state = 0;
  Move action = Move::kLeft;
  bool bad_move = true;
  int support = 0;
  double confidence = 1.0;

  friend bool operator==(const PeculiarityRule&, const PeculiarityRule&) = default;
};

// Canonical form: state 0 is initial, states are numbered in breadth-first
// order of first reachability (visiting symbols in index order), every state
// is reachable and every relevant symbol moves at least one state.
struct Automaton {
  int n_states = 1;
  int n_relevant = 0;
  std::array<GuardSymbol, kMaxRelevant> relevant{};
  // delta[state][slot] for relevant slot 0..n_relevant-1.
  std::array<std::array<std::uint8_t, kMaxRelevant>, kMaxStates> delta{};
  std::vector<PeculiarityRule> rules;

  int Next(int state, int slot) const { return delta[state][slot]; }
  std::optional<int> SlotOf(GuardSymbol symbol) const;

  // Applies one observed step to `state`.
  int Advance(int state, const StepRecord& record) const;

  bool IsCanonical() const;
  // Same machine, ignoring rules.
  bool SameMachine(const Automaton& other) const;
  // Total order used for tie-breaking: states, then symbol count, then
  // symbols, then transition digits.
  bool EncodingLess(const Automaton& other) const;
  std::string Encoding() const;

  std::optional<PeculiarityRule> RuleFor(int state, Move action) const;
};

// States at each moment: result[0] is the initial state, result[t + 1] the
// state after record t.
std::vector<int> RunAutomaton(const Automaton& automaton,
                              std::span<const StepRecord> records);

// Streams every canonical automaton with at most `max_states` states and at
// most `max_relevant` symbols, in EncodingLess order. A single-state machine
// has no transitions, so it appears once with no relevant symbols.
void EnumerateCandidates(int max_states, int max_relevant,
                         const std::function<void(const Automaton&)>& visit);

// Same enumeration restricted to a fixed symbol set.
void EnumerateForSymbols(int n_states, std::span<const GuardSymbol> symbols,
                         const std::function<void(const Automaton&)>& visit);

struct MiningConfig {
  int min_support = 20;
  double holdout_fraction = 0.25;
  // Largest tolerated log-probability that a state-dependent rule is a
  // state-free coincidence: support * log(frequency of the predicted
  // outcome) must fall below it. -22.5 is about 1% spread over the ~2e6
  // candidates times 24 (state, action) pairs.
  double max_chance_log = -22.5;
};

struct MineResult {
  bool accepted = false;
  Automaton automaton;  // with rules attached when accepted
  std::string reason;   // why it was rejected
  // Number of trace steps predicted by rules that need the state.
  std::int64_t coverage = 0;
};

MineResult Mine(std::span<const StepRecord> records, const Automaton& candidate,
                const MiningConfig& config = {});

// What the eye saw before a step (the cell lamps of the previous step).
enum class SeenCell : std::uint8_t { kAny = 0, kEmpty, kCross, kO };
std::string_view SeenCellName(SeenCell seen);
SeenCell SeenFrom(const LampView& previous_lamps);

// Single-state rule: "if the eye sees `context` and the agent plays `action`
// then bad_move is `bad_move`".
struct ConstantRule {
  SeenCell context = SeenCell::kAny;
  Move action = Move::kUnused6;
  bool bad_move = true;
  int support = 0;
  double confidence = 1.0;

  friend bool operator==(const ConstantRule&, const ConstantRule&) = default;
};

std::vector<ConstantRule> MineConstantRules(std::span<const StepRecord> records,
                                            int min_support);

struct Level1States {
  int column = 0;
  int row = 0;
  int game_over = 0;

  friend bool operator==(const Level1States&, const Level1States&) = default;
};

struct Level1Model {
  Automaton column;
  Automaton row;
  Automaton game_over;
  std::vector<ConstantRule> constant_rules;
  // Every automaton that survived mining and the held-out check.
  std::vector<Automaton> accepted;

  Level1States Advance(const Level1States& states, const StepRecord& record) const;
  bool IsOver(const Level1States& states) const;
  // Abstract cell of the eye: row state * 3 + column state.
  CellId EyeCell(const Level1States& states) const;

  // Some learned rule fires for this situation and predicts bad_move.
  bool PredictsBadMove(const Level1States& states, SeenCell seen,
                       Move move) const;
};

class InductionError : public std::runtime_error {
 public:
  InductionError(const std::string& what, std::vector<std::string> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// Mines on the leading (1 - holdout_fraction) of the records, drops anything
// whose rules are violated on the remainder, and picks the column, row and
// game-over automata by their signature rules.
Level1Model InduceLevel1(std::span<const StepRecord> records,
                         const MiningConfig& config = {});

nlohmann::ordered_json AutomatonToJson(const Automaton& automaton);
nlohmann::ordered_json Level1ToJson(const Level1Model& model);

}  // namespace lampworld

#endif  // LAMPWORLD_INDUCTION_H_
