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

#ifndef LAMPWORLD_WORLD_H_
#define LAMPWORLD_WORLD_H_

// The hidden-board Tick-Tack-Toe world. The agent sees one cell at a time
// through a movable eye plus three event lamps; everything else is hidden.
//
// Step() is the transition function and View() the observation function.
// Both are pure: a WorldState is a small value type (board, eye, phase,
// outcome, RNG word) so states can be copied, compared and replayed freely.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lampworld {

inline constexpr int kNumCells = 9;
inline constexpr int kBoardSize = 3;

// Cell ids are (row - 1) * 3 + (col - 1) with 1-based col/row.
using CellId = int;

constexpr CellId CellIdOf(int col, int row) {
  return (row - 1) * kBoardSize + (col - 1);
}
constexpr int ColOf(CellId id) { return id % kBoardSize + 1; }
constexpr int RowOf(CellId id) { return id / kBoardSize + 1; }

enum class Cell : std::uint8_t { kEmpty = 0, kCross = 1, kO = 2 };

std::string_view CellName(Cell cell);

struct Board {
  std::array<Cell, kNumCells> cells{};

  Cell& operator[](CellId id) { return cells[id]; }
  Cell operator[](CellId id) const { return cells[id]; }
  Cell At(int col, int row) const { return cells[CellIdOf(col, row)]; }

  int Count(Cell value) const;
  bool Full() const { return Count(Cell::kEmpty) == 0; }

  // Base-3 code in [0, 3^9); cell 0 is the least significant digit.
  std::uint16_t Code() const;
  static Board FromCode(std::uint16_t code);

  // Rows of "X", "O" and "." separated by '/', e.g. "XO./.X./..O".
  std::string ToString() const;
  static Board FromString(std::string_view text);

  friend bool operator==(const Board&, const Board&) = default;
  friend auto operator<=>(const Board&, const Board&) = default;
};

// The eight rows, columns and diagonals of the board.
using Line = std::array<CellId, 3>;
const std::array<Line, 8>& GeometricLines();

// Side owning a completed geometric line, if any.
std::optional<Cell> LineOwner(const Board& board);

struct Eye {
  int col = 1;
  int row = 1;

  CellId cell() const { return CellIdOf(col, row); }
  friend bool operator==(const Eye&, const Eye&) = default;
};

// Checkbox encoding: code = b0 + 2*b1 + 4*b2.
enum class Move : std::uint8_t {
  kLeft = 0,
  kRight = 1,
  kUp = 2,
  kDown = 3,
  kPutCross = 4,
  kNewGame = 5,
  kUnused6 = 6,
  kUnused7 = 7,
};
inline constexpr int kNumMoves = 8;

constexpr int MoveCode(Move move) { return static_cast<int>(move); }
std::optional<Move> MoveFromCode(int code);
Move MoveFromCheckboxes(bool b0, bool b1, bool b2);
std::string_view MoveName(Move move);
std::optional<Move> MoveFromName(std::string_view name);

enum class Lamp : std::uint8_t {
  kCross = 0,
  kO = 1,
  kVictory = 2,
  kLoss = 3,
  kBadMove = 4,
};
inline constexpr int kNumLamps = 5;
std::string_view LampName(Lamp lamp);

struct LampView {
  bool cross = false;
  bool o = false;
  bool victory = false;
  bool loss = false;
  bool bad_move = false;

  bool Get(Lamp lamp) const;
  // Bits in wire order [cross, o, victory, loss, bad_move].
  std::array<int, kNumLamps> Bits() const;
  static LampView FromBits(const std::array<int, kNumLamps>& bits);

  friend bool operator==(const LampView&, const LampView&) = default;
};

enum class Phase : std::uint8_t { kPlaying = 0, kOver = 1 };
enum class Outcome : std::uint8_t { kNone = 0, kVictory, kLoss, kDraw };

std::string_view OutcomeName(Outcome outcome);

// SplitMix64: state += 0x9E3779B97F4A7C15, then the output is the state
// passed through the SplitMix64 finalizer. Bounded draws reject values
// below (2^64 mod n) so every residue is equally likely.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t Next();
  std::uint64_t Uniform(std::uint64_t n);
  std::uint64_t state() const { return state_; }

  friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

struct WorldState {
  Board board;
  Eye eye;
  Phase phase = Phase::kPlaying;
  Outcome last_outcome = Outcome::kNone;
  SplitMix64 rng;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

// What happened during the step just taken. Event lamps are one-step
// flashes derived from this; cell lamps come from the state itself.
struct StepEvents {
  Outcome set_ended = Outcome::kNone;
  bool bad_move = false;
};

struct StepResult {
  WorldState state;
  LampView lamps;
  StepEvents events;
};

WorldState InitialState(std::uint64_t seed);

StepResult Step(const WorldState& state, Move move);

LampView View(const WorldState& state, const StepEvents& last_events = {});

// World 1 exposes the whole public state instead of five lamps.
struct FullObservation {
  Board board;
  Eye eye;
  Phase phase = Phase::kPlaying;
  Outcome last_outcome = Outcome::kNone;

  friend bool operator==(const FullObservation&,
                         const FullObservation&) = default;
};

FullObservation World1View(const WorldState& state);

// Injective packing of a FullObservation: board code, eye, phase, outcome.
std::uint64_t EncodeObservation(const FullObservation& observation);
FullObservation DecodeObservation(std::uint64_t code);

}  // namespace lampworld

#endif  // LAMPWORLD_WORLD_H_
