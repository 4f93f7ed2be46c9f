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


#include "lampworld/belief.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "support/oracles.h"

namespace lampworld {
namespace {

EyePhase TruthOf(const WorldState& state) {
  return {state.eye.cell(), state.phase == Phase::kOver};
}

WinningSets GeometricSets() {
  WinningSets sets;
  for (const auto& line : testing::OracleLines()) {
    sets.cross.push_back({line[0], line[1], line[2]});
    sets.o.push_back({line[0], line[1], line[2]});
  }
  return sets;
}

// Drives the world and a belief fed with the true eye and phase.
class Tracker {
 public:
  explicit Tracker(std::uint64_t seed, const WinningSets* sets = nullptr)
      : state_(InitialState(seed)), belief_(BeliefInit(TruthOf(state_))), sets_(sets) {}

  StepResult Step(Move move) {
    const StepResult result = lampworld::Step(state_, move);
    state_ = result.state;
    belief_ = BeliefStep(belief_, move, result.lamps, TruthOf(state_), sets_);
    return result;
  }

  // Visits every cell: snake from the top-left corner.
  void Sweep() {
    while (state_.eye.col > 1) Step(Move::kLeft);
    while (state_.eye.row > 1) Step(Move::kUp);
    for (Move move : {Move::kRight, Move::kRight, Move::kDown, Move::kLeft, Move::kLeft,
                      Move::kDown, Move::kRight, Move::kRight}) {
      Step(move);
    }
  }

  void GoTo(CellId id) {
    while (state_.eye.col < ColOf(id)) Step(Move::kRight);
    while (state_.eye.col > ColOf(id)) Step(Move::kLeft);
    while (state_.eye.row < RowOf(id)) Step(Move::kDown);
    while (state_.eye.row > RowOf(id)) Step(Move::kUp);
  }

  const WorldState& state() const { return state_; }
  const BeliefState& belief() const { return belief_; }

 private:
  WorldState state_;
  BeliefState belief_;
  const WinningSets* sets_;
};

TEST(BeliefTest, InitIsTheEmptyBoard) {
  const BeliefState belief = BeliefInit();
  ASSERT_EQ(belief.size(), 1u);
  EXPECT_EQ(belief.candidates()[0], Board{});
  for (CellKnowledge k : ProjectKnownCells(belief)) EXPECT_EQ(k, CellKnowledge::kEmpty);
}

TEST(BeliefTest, FirstReplyLeavesExactlyTheOtherCellsUnknown) {
  Tracker tracker(3);
  tracker.Step(Move::kPutCross);
  EXPECT_EQ(tracker.belief().size(), 8u);
  const KnownCells known = ProjectKnownCells(tracker.belief());
  EXPECT_EQ(known[0], CellKnowledge::kCross);
  for (CellId id = 1; id < kNumCells; ++id) EXPECT_EQ(known[id], CellKnowledge::kUnknown);
}

TEST(BeliefTest, SweepCollapsesToTheTrueBoard) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Tracker tracker(seed);
    tracker.Step(Move::kPutCross);
    tracker.Sweep();
    ASSERT_EQ(tracker.belief().size(), 1u);
    EXPECT_EQ(tracker.belief().candidates()[0], tracker.state().board);
    for (CellKnowledge k : ProjectKnownCells(tracker.belief())) {
      EXPECT_NE(k, CellKnowledge::kUnknown);
    }
  }
}

// From a known board, a successful undecided PutCross branches over every
// cell left empty after the Cross.
TEST(BeliefTest, ReplyBranchingFactorIsTheEmptyCount) {
  bool saw_five_empty = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Tracker tracker(seed);
    while (tracker.state().phase == Phase::kPlaying) {
      tracker.Sweep();
      ASSERT_EQ(tracker.belief().size(), 1u);
      const Board before = tracker.state().board;
      CellId target = 0;
      while (before[target] != Cell::kEmpty) ++target;
      tracker.GoTo(target);
      const StepResult result = tracker.Step(Move::kPutCross);
      ASSERT_FALSE(result.lamps.bad_move);
      if (result.events.set_ended != Outcome::kNone) break;
      const int empty_after_cross = before.Count(Cell::kEmpty) - 1;
      EXPECT_EQ(static_cast<int>(tracker.belief().size()), empty_after_cross);
      if (before.Count(Cell::kEmpty) == 5) {
        EXPECT_EQ(tracker.belief().size(), 4u);
        saw_five_empty = true;
      }
    }
  }
  EXPECT_TRUE(saw_five_empty);
}

TEST(BeliefTest, SeenCellFiltersCandidates) {
  Tracker tracker(6);
  tracker.Step(Move::kPutCross);
  tracker.Step(Move::kRight);
  const Cell seen = tracker.state().board[1];
  for (const Board& b : tracker.belief().candidates()) EXPECT_EQ(b[1], seen);
  EXPECT_EQ(tracker.belief().size(), seen == Cell::kO ? 1u : 7u);
}

TEST(BeliefTest, NewGameWhileOverResets) {
  WinningSets sets = GeometricSets();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Tracker tracker(seed, &sets);
    SplitMix64 chooser(seed);
    while (tracker.state().phase == Phase::kPlaying) {
      tracker.Step(static_cast<Move>(chooser.Uniform(5)));
    }
    tracker.Step(Move::kNewGame);
    EXPECT_EQ(tracker.belief(), BeliefInit(TruthOf(tracker.state())));
  }
}

TEST(BeliefTest, InconsistentLampsRaiseContradiction) {
  const BeliefState belief = BeliefInit();
  LampView lamps;
  lamps.o = true;  // nothing can be there
  EXPECT_THROW(BeliefStep(belief, Move::kLeft, lamps, {0, false}), ModelContradiction);
}

TEST(BeliefTest, StepIsDeterministic) {
  Tracker a(9);
  Tracker b(9);
  SplitMix64 chooser(1);
  for (int i = 0; i < 500; ++i) {
    const Move move = static_cast<Move>(chooser.Uniform(kNumMoves));
    a.Step(move);
    b.Step(move);
    ASSERT_EQ(a.belief(), b.belief());
  }
}

// Soundness and the size bound over long random runs, with and without
// winning sets.
TEST(BeliefTest, TrueBoardIsAlwaysACandidate) {
  const WinningSets sets = GeometricSets();
  std::size_t largest = 0;
  for (const WinningSets* judge : {static_cast<const WinningSets*>(nullptr), &sets}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      Tracker tracker(seed, judge);
      SplitMix64 chooser(seed + 50);
      for (int i = 0; i < 10000; ++i) {
        tracker.Step(static_cast<Move>(chooser.Uniform(kNumMoves)));
        ASSERT_TRUE(tracker.belief().Contains(tracker.state().board));
        ASSERT_LE(tracker.belief().size(), kMaxBeliefCandidates);
        largest = std::max(largest, tracker.belief().size());
      }
    }
  }
  EXPECT_GT(largest, 1u);
}

TEST(BeliefTest, JsonShowsUnknownCells) {
  Tracker tracker(3);
  tracker.Step(Move::kPutCross);
  const auto json = BeliefToJson(tracker.belief());
  EXPECT_EQ(json["candidates"], 8);
  EXPECT_EQ(json["known_cells"][0], "Cross");
  EXPECT_EQ(json["known_cells"][1], "Unknown");
}

}  // namespace
}  // namespace lampworld
