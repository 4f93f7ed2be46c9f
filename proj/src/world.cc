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

#include "lampworld/world.h"

#include <algorithm>
#include <stdexcept>

namespace lampworld {
namespace {

constexpr std::array<std::string_view, kNumMoves> kMoveNames = {
    "Left", "Right", "Up", "Down", "PutCross", "NewGame", "Unused6", "Unused7"};

char CellChar(Cell cell) {
  switch (cell) {
    case Cell::kEmpty:
      return '.';
    case Cell::kCross:
      return 'X';
    case Cell::kO:
      return 'O';
  }
  return '?';
}

Outcome DecideOutcome(const Board& board) {
  if (auto owner = LineOwner(board)) {
    return *owner == Cell::kCross ? Outcome::kVictory : Outcome::kLoss;
  }
  return board.Full() ? Outcome::kDraw : Outcome::kNone;
}

StepResult Reject(const WorldState& state) {
  StepEvents events{.bad_move = true};
  return {state, View(state, events), events};
}

}  // namespace

std::string_view CellName(Cell cell) {
  switch (cell) {
    case Cell::kEmpty:
      return "Empty";
    case Cell::kCross:
      return "Cross";
    case Cell::kO:
      return "O";
  }
  return "?";
}

int Board::Count(Cell value) const {
  return static_cast<int>(std::count(cells.begin(), cells.end(), value));
}

std::uint16_t Board::Code() const {
  std::uint16_t code = 0;
  for (int i = kNumCells - 1; i >= 0; --i) {
    code = static_cast<std::uint16_t>(code * 3 + static_cast<int>(cells[i]));
  }
  return code;
}

Board Board::FromCode(std::uint16_t code) {
  Board board;
  for (int i = 0; i < kNumCells; ++i) {
    board.cells[i] = static_cast<Cell>(code % 3);
    code /= 3;
  }
  return board;
}

std::string Board::ToString() const {
  std::string out;
  for (int row = 1; row <= kBoardSize; ++row) {
    if (row > 1) out.push_back('/');
    for (int col = 1; col <= kBoardSize; ++col) out.push_back(CellChar(At(col, row)));
  }
  return out;
}

Board Board::FromString(std::string_view text) {
  Board board;
  int i = 0;
  for (char c : text) {
    if (c == '/' || c == ' ') continue;
    if (i >= kNumCells) throw std::invalid_argument("board string too long");
    switch (c) {
      case '.':
        board.cells[i] = Cell::kEmpty;
        break;
      case 'X':
        board.cells[i] = Cell::kCross;
        break;
      case 'O':
        board.cells[i] = Cell::kO;
        break;
      default:
        throw std::invalid_argument("bad board character");
    }
    ++i;
  }
  if (i != kNumCells) throw std::invalid_argument("board string too short");
  return board;
}

const std::array<Line, 8>& GeometricLines() {
  static constexpr std::array<Line, 8> kLines = {{
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
      {0, 4, 8}, {2, 4, 6},             // diagonals
  }};
  return kLines;
}

std::optional<Cell> LineOwner(const Board& board) {
  for (const Line& line : GeometricLines()) {
    Cell first = board[line[0]];
    if (first != Cell::kEmpty && first == board[line[1]] &&
        first == board[line[2]]) {
      return first;
    }
  }
  return std::nullopt;
}

std::optional<Move> MoveFromCode(int code) {
  if (code < 0 || code >= kNumMoves) return std::nullopt;
  return static_cast<Move>(code);
}

Move MoveFromCheckboxes(bool b0, bool b1, bool b2) {
  return static_cast<Move>(int{b0} + 2 * int{b1} + 4 * int{b2});
}

std::string_view MoveName(Move move) { return kMoveNames[MoveCode(move)]; }

std::optional<Move> MoveFromName(std::string_view name) {
  for (int i = 0; i < kNumMoves; ++i) {
    if (kMoveNames[i] == name) return static_cast<Move>(i);
  }
  return std::nullopt;
}

std::string_view LampName(Lamp lamp) {
  switch (lamp) {
    case Lamp::kCross:
      return "cross";
    case Lamp::kO:
      return "o";
    case Lamp::kVictory:
      return "victory";
    case Lamp::kLoss:
      return "loss";
    case Lamp::kBadMove:
      return "bad_move";
  }
  return "?";
}

bool LampView::Get(Lamp lamp) const {
  switch (lamp) {
    case Lamp::kCross:
      return cross;
    case Lamp::kO:
      return o;
    case Lamp::kVictory:
      return victory;
    case Lamp::kLoss:
      return loss;
    case Lamp::kBadMove:
      return bad_move;
  }
  return false;
}

std::array<int, kNumLamps> LampView::Bits() const {
  return {int{cross}, int{o}, int{victory}, int{loss}, int{bad_move}};
}

LampView LampView::FromBits(const std::array<int, kNumLamps>& bits) {
  return {bits[0] != 0, bits[1] != 0, bits[2] != 0, bits[3] != 0,
          bits[4] != 0};
}

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kNone:
      return "none";
    case Outcome::kVictory:
      return "victory";
    case Outcome::kLoss:
      return "loss";
    case Outcome::kDraw:
      return "draw";
  }
  return "?";
}

std::uint64_t SplitMix64::Next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::Uniform(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Uniform(0)");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = Next();
    if (r >= threshold) return r % n;
  }
}

WorldState InitialState(std::uint64_t seed) {
  WorldState state;
  state.rng = SplitMix64(seed);
  return state;
}

StepResult Step(const WorldState& state, Move move) {
  WorldState next = state;
  StepEvents events;
  switch (move) {
    case Move::kLeft:
      if (state.eye.col == 1) return Reject(state);
      --next.eye.col;
      break;
    case Move::kRight:
      if (state.eye.col == kBoardSize) return Reject(state);
      ++next.eye.col;
      break;
    case Move::kUp:
      if (state.eye.row == 1) return Reject(state);
      --next.eye.row;
      break;
    case Move::kDown:
      if (state.eye.row == kBoardSize) return Reject(state);
      ++next.eye.row;
      break;
    case Move::kPutCross: {
      if (state.phase == Phase::kOver) return Reject(state);
      if (state.board[state.eye.cell()] != Cell::kEmpty) return Reject(state);
      next.board[state.eye.cell()] = Cell::kCross;
      Outcome outcome = DecideOutcome(next.board);
      if (outcome == Outcome::kNone) {
        // Tom answers inside the same step, uniformly over empty cells.
        std::array<CellId, kNumCells> empty{};
        int n = 0;
        for (CellId id = 0; id < kNumCells; ++id) {
          if (next.board[id] == Cell::kEmpty) empty[n++] = id;
        }
        next.board[empty[next.rng.Uniform(n)]] = Cell::kO;
        outcome = DecideOutcome(next.board);
      }
      if (outcome != Outcome::kNone) {
        next.phase = Phase::kOver;
        next.last_outcome = outcome;
        events.set_ended = outcome;
      }
      break;
    }
    case Move::kNewGame:
      if (state.phase == Phase::kPlaying) return Reject(state);
      next.board = Board{};
      next.phase = Phase::kPlaying;
      next.last_outcome = Outcome::kNone;
      break;
    case Move::kUnused6:
    case Move::kUnused7:
      return Reject(state);
  }
  return {next, View(next, events), events};
}

LampView View(const WorldState& state, const StepEvents& last_events) {
  LampView lamps;
  const Cell seen = state.board[state.eye.cell()];
  lamps.cross = seen == Cell::kCross;
  lamps.o = seen == Cell::kO;
  lamps.victory = last_events.set_ended == Outcome::kVictory ||
                  last_events.set_ended == Outcome::kDraw;
  lamps.loss = last_events.set_ended == Outcome::kLoss ||
               last_events.set_ended == Outcome::kDraw;
  lamps.bad_move = last_events.bad_move;
  return lamps;
}

FullObservation World1View(const WorldState& state) {
  return {state.board, state.eye, state.phase, state.last_outcome};
}

std::uint64_t EncodeObservation(const FullObservation& observation) {
  std::uint64_t code = observation.board.Code();
  code = code * 9 + static_cast<std::uint64_t>(observation.eye.cell());
  code = code * 2 + static_cast<std::uint64_t>(observation.phase);
  code = code * 4 + static_cast<std::uint64_t>(observation.last_outcome);
  return code;
}

FullObservation DecodeObservation(std::uint64_t code) {
  FullObservation observation;
  observation.last_outcome = static_cast<Outcome>(code % 4);
  code /= 4;
  observation.phase = static_cast<Phase>(code % 2);
  code /= 2;
  const CellId eye = static_cast<CellId>(code % 9);
  observation.eye = Eye{ColOf(eye), RowOf(eye)};
  code /= 9;
  observation.board = Board::FromCode(static_cast<std::uint16_t>(code));
  return observation;
}

}  // namespace lampworld
