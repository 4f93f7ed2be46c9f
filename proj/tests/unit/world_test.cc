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

#include <map>

#include "gtest/gtest.h"
#include "support/oracles.h"

namespace lampworld {
namespace {

WorldState WithBoard(const std::string& board, Eye eye = {}) {
  WorldState state = InitialState(1);
  state.board = Board::FromString(board);
  state.eye = eye;
  return state;
}

TEST(WorldTest, InitialStateIsEmptyWithEyeInCorner) {
  const WorldState state = InitialState(42);
  EXPECT_EQ(state.board, Board{});
  EXPECT_EQ(state.eye, (Eye{1, 1}));
  EXPECT_EQ(state.phase, Phase::kPlaying);
  EXPECT_EQ(View(state), LampView{});
  EXPECT_EQ(InitialState(42), InitialState(42));
}

TEST(WorldTest, CellIdsAndMoveCodes) {
  EXPECT_EQ(CellIdOf(1, 1), 0);
  EXPECT_EQ(CellIdOf(3, 1), 2);
  EXPECT_EQ(CellIdOf(1, 3), 6);
  EXPECT_EQ(CellIdOf(3, 3), 8);
  for (CellId id = 0; id < kNumCells; ++id) EXPECT_EQ(CellIdOf(ColOf(id), RowOf(id)), id);
  EXPECT_EQ(MoveFromCheckboxes(false, false, false), Move::kLeft);
  EXPECT_EQ(MoveFromCheckboxes(false, false, true), Move::kPutCross);
  EXPECT_EQ(MoveFromCheckboxes(true, false, true), Move::kNewGame);
  EXPECT_EQ(MoveFromCheckboxes(true, true, true), Move::kUnused7);
  EXPECT_FALSE(MoveFromCode(8).has_value());
  EXPECT_FALSE(MoveFromCode(-1).has_value());
  for (int code = 0; code < kNumMoves; ++code) {
    const Move move = *MoveFromCode(code);
    EXPECT_EQ(MoveFromName(MoveName(move)), move);
  }
}

TEST(WorldTest, BoardCodeAndTextRoundTrip) {
  const Board board = Board::FromString("XO./.X./..O");
  EXPECT_EQ(board.ToString(), "XO./.X./..O");
  EXPECT_EQ(Board::FromCode(board.Code()), board);
  EXPECT_EQ(board.Count(Cell::kCross), 2);
  EXPECT_EQ(board.Count(Cell::kO), 2);
}

TEST(WorldTest, LeftFromFirstColumnIsBad) {
  const WorldState state = InitialState(3);
  const StepResult result = Step(state, Move::kLeft);
  EXPECT_TRUE(result.lamps.bad_move);
  EXPECT_EQ(result.state, state);
}

TEST(WorldTest, BoundaryMovesAreBad) {
  for (CellId id = 0; id < kNumCells; ++id) {
    WorldState state = InitialState(5);
    state.eye = {ColOf(id), RowOf(id)};
    EXPECT_EQ(Step(state, Move::kLeft).lamps.bad_move, state.eye.col == 1);
    EXPECT_EQ(Step(state, Move::kRight).lamps.bad_move, state.eye.col == 3);
    EXPECT_EQ(Step(state, Move::kUp).lamps.bad_move, state.eye.row == 1);
    EXPECT_EQ(Step(state, Move::kDown).lamps.bad_move, state.eye.row == 3);
  }
}

TEST(WorldTest, PutCrossOnOccupiedCellIsBad) {
  const WorldState state = WithBoard("X../.O./...");
  const StepResult result = Step(state, Move::kPutCross);
  EXPECT_TRUE(result.lamps.bad_move);
  EXPECT_EQ(result.state, state);
}

TEST(WorldTest, NewGameWhilePlayingIsBadIncludingFirstMove) {
  const WorldState state = InitialState(9);
  const StepResult result = Step(state, Move::kNewGame);
  EXPECT_TRUE(result.lamps.bad_move);
  EXPECT_EQ(result.state, state);
}

TEST(WorldTest, UnusedMovesAreAlwaysBad) {
  for (const std::uint64_t seed : {1, 2, 3}) {
    const Trace trace = testing::RandomTrace(seed, 300);
    const auto truth = testing::SimulateTrace(seed, trace.records);
    for (const WorldState& state : truth.states) {
      EXPECT_TRUE(Step(state, Move::kUnused6).lamps.bad_move);
      EXPECT_TRUE(Step(state, Move::kUnused7).lamps.bad_move);
      EXPECT_EQ(Step(state, Move::kUnused6).state, state);
    }
  }
}

TEST(WorldTest, TomAnswersWithOneOInTheSameStep) {
  const StepResult result = Step(InitialState(11), Move::kPutCross);
  EXPECT_FALSE(result.lamps.bad_move);
  EXPECT_EQ(result.state.board[0], Cell::kCross);
  EXPECT_EQ(result.state.board.Count(Cell::kO), 1);
  EXPECT_EQ(result.state.board.Count(Cell::kCross), 1);
  EXPECT_TRUE(result.lamps.cross);
  EXPECT_NE(result.state.rng, InitialState(11).rng);
}

TEST(WorldTest, NewGameWhileOverClearsBoardAndKeepsEye) {
  WorldState state = WithBoard("XXX/OO./...", {2, 3});
  state.phase = Phase::kOver;
  state.last_outcome = Outcome::kVictory;
  const StepResult result = Step(state, Move::kNewGame);
  EXPECT_FALSE(result.lamps.bad_move);
  EXPECT_EQ(result.state.board, Board{});
  EXPECT_EQ(result.state.eye, (Eye{2, 3}));
  EXPECT_EQ(result.state.phase, Phase::kPlaying);
  EXPECT_EQ(result.state.last_outcome, Outcome::kNone);
}

TEST(WorldTest, PutCrossWhileOverIsBadButTheEyeMoves) {
  WorldState state = WithBoard("XXX/OO./...", {3, 3});
  state.phase = Phase::kOver;
  state.last_outcome = Outcome::kVictory;
  EXPECT_TRUE(Step(state, Move::kPutCross).lamps.bad_move);
  const StepResult moved = Step(state, Move::kLeft);
  EXPECT_FALSE(moved.lamps.bad_move);
  EXPECT_EQ(moved.state.eye, (Eye{2, 3}));
}

// Boards with X to move and no winner where the last empty cell is filled
// by X without completing a line: the only way a draw can happen, since X
// always makes the ninth mark.
TEST(WorldTest, DrawFlashesBothLamps) {
  const WorldState state = WithBoard("XOX/XOO/OX.", {3, 3});
  const StepResult result = Step(state, Move::kPutCross);
  EXPECT_FALSE(result.lamps.bad_move);
  EXPECT_TRUE(result.lamps.victory);
  EXPECT_TRUE(result.lamps.loss);
  EXPECT_EQ(result.state.phase, Phase::kOver);
  EXPECT_EQ(result.state.last_outcome, Outcome::kDraw);
}

// Every position with two Crosses on a line and the third cell empty,
// no winner yet and X to move: completing the line wins before Tom moves.
TEST(WorldTest, CompletingALineWinsBeforeTomMoves) {
  int checked = 0;
  for (int code = 0; code < 19683; ++code) {
    const Board board = Board::FromCode(static_cast<std::uint16_t>(code));
    const int x = board.Count(Cell::kCross);
    const int o = board.Count(Cell::kO);
    if (x != o || LineOwner(board).has_value()) continue;
    for (const auto& line : testing::OracleLines()) {
      int crosses = 0;
      int empty_at = -1;
      for (int id : line) {
        if (board[id] == Cell::kCross) ++crosses;
        if (board[id] == Cell::kEmpty) empty_at = id;
      }
      if (crosses != 2 || empty_at < 0) continue;
      WorldState state = InitialState(static_cast<std::uint64_t>(code));
      state.board = board;
      state.eye = {ColOf(empty_at), RowOf(empty_at)};
      const StepResult result = Step(state, Move::kPutCross);
      ASSERT_TRUE(result.lamps.victory);
      ASSERT_FALSE(result.lamps.loss);
      ASSERT_EQ(result.state.board.Count(Cell::kO), o);
      ASSERT_EQ(result.state.rng, state.rng);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(WorldTest, EventLampsAreOneStepFlashes) {
  WorldState state = WithBoard("XX./OO./...", {3, 1});
  StepResult result = Step(state, Move::kPutCross);
  ASSERT_TRUE(result.lamps.victory);
  result = Step(result.state, Move::kLeft);
  EXPECT_FALSE(result.lamps.victory);
  EXPECT_FALSE(result.lamps.loss);
  EXPECT_TRUE(result.lamps.cross);
}

TEST(WorldTest, CellLampsShowTheCellUnderTheEye) {
  WorldState state = WithBoard("XO./.../...", {1, 1});
  EXPECT_TRUE(View(state).cross);
  EXPECT_FALSE(View(state).o);
  state.eye = {2, 1};
  EXPECT_TRUE(View(state).o);
  state.eye = {3, 1};
  EXPECT_EQ(View(state), LampView{});
}

TEST(WorldTest, SplitMixFollowsItsPublishedUpdateRule) {
  // First outputs for seed 0 of the reference SplitMix64.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.Next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.Next(), 0x06c45d188009454fULL);
  SplitMix64 bounded(123);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(bounded.Uniform(7), 7u);
}

TEST(WorldTest, World1ObservationIsInjectiveOnReachableStates) {
  // Distinct public states must get distinct observation codes.
  std::map<std::uint64_t, FullObservation> seen;
  for (const std::uint64_t seed : {1, 2, 3, 4}) {
    const Trace trace = testing::RandomTrace(seed, 2000);
    for (const WorldState& state : testing::SimulateTrace(seed, trace.records).states) {
      const FullObservation observation = World1View(state);
      EXPECT_EQ(DecodeObservation(EncodeObservation(observation)), observation);
      auto [it, inserted] = seen.emplace(EncodeObservation(observation), observation);
      if (!inserted) EXPECT_EQ(it->second, observation);
    }
  }
  EXPECT_GT(seen.size(), 100u);
  EXPECT_EQ(World1View(InitialState(5)).board, Board{});
}

// Properties over random play.
TEST(WorldTest, RandomPlayInvariants) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    WorldState state = InitialState(seed);
    SplitMix64 chooser(seed + 100);
    for (int i = 0; i < 20000; ++i) {
      const Move move = static_cast<Move>(chooser.Uniform(kNumMoves));
      const StepResult result = Step(state, move);
      ASSERT_FALSE(result.lamps.cross && result.lamps.o);
      if (result.lamps.bad_move) ASSERT_EQ(result.state, state);
      const int diff = result.state.board.Count(Cell::kCross) - result.state.board.Count(Cell::kO);
      ASSERT_TRUE(diff == 0 || diff == 1);
      const int new_o = result.state.board.Count(Cell::kO) - state.board.Count(Cell::kO);
      if (move != Move::kNewGame) {
        ASSERT_TRUE(new_o == 0 || (new_o == 1 && move == Move::kPutCross && !result.lamps.bad_move));
      }
      if (move == Move::kPutCross && !result.lamps.bad_move &&
          result.events.set_ended == Outcome::kNone) {
        ASSERT_EQ(diff, 0);
      }
      ASSERT_EQ(result.state.phase == Phase::kOver,
                LineOwner(result.state.board).has_value() || result.state.board.Full());
      ASSERT_EQ(result.state.last_outcome == Outcome::kNone,
                result.state.phase == Phase::kPlaying);
      state = result.state;
    }
  }
}

}  // namespace
}  // namespace lampworld
