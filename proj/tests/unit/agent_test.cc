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


#include "lampworld/agent.h"

#include "gtest/gtest.h"
#include "support/oracles.h"

namespace lampworld {
namespace {

StepRecord Flash(std::int64_t t, bool victory, bool loss, bool bad = false) {
  StepRecord record;
  record.t = t;
  record.move = Move::kPutCross;
  record.lamps.victory = victory;
  record.lamps.loss = loss;
  record.lamps.bad_move = bad;
  return record;
}

TEST(AgentTest, ScoreCountsFlashesInTheWindow) {
  const std::vector<StepRecord> records = {
      Flash(0, true, false), Flash(1, false, false, true), Flash(2, false, true),
      Flash(3, true, true),  Flash(4, true, false),        Flash(5, false, false, true)};
  const ScoreCard all = Score(records, 0, 6);
  EXPECT_EQ(all.victories, 2);
  EXPECT_EQ(all.losses, 1);
  EXPECT_EQ(all.draws, 1);
  EXPECT_EQ(all.bad_moves, 2);
  EXPECT_EQ(all.sets(), 4);
  const ScoreCard part = Score(records, 1, 4);
  EXPECT_EQ(part, (ScoreCard{1, 4, 0, 1, 1, 1}));
}

TEST(AgentTest, TimelineWindowsAddUpToTheWhole) {
  const Trace trace = testing::RandomTrace(3, 12345);
  const auto timeline = ScoreTimeline(trace.records, 1000);
  ASSERT_EQ(timeline.size(), 13u);
  ScoreCard total;
  std::int64_t expected_start = 0;
  for (const ScoreCard& card : timeline) {
    EXPECT_EQ(card.window_start, expected_start);
    EXPECT_GT(card.window_end, card.window_start);
    expected_start = card.window_end;
    total += card;
  }
  EXPECT_EQ(expected_start, 12345);
  const ScoreCard whole = Score(trace.records, 0, 12345);
  EXPECT_EQ(total.victories, whole.victories);
  EXPECT_EQ(total.losses, whole.losses);
  EXPECT_EQ(total.draws, whole.draws);
  EXPECT_EQ(total.bad_moves, whole.bad_moves);
}

TEST(AgentTest, CsvAndJson) {
  EXPECT_EQ(ScoreCardCsvHeader(), "window_start,window_end,victories,losses,draws,bad_moves");
  const ScoreCard card{0, 1000, 5, 1, 2, 30};
  EXPECT_EQ(ScoreCardCsvRow(card), "0,1000,5,1,2,30");
  EXPECT_EQ(ScoreCardToJson(card)["bad_moves"], 30);
}

// Runs the agent against a world for `steps` steps.
Agent Drive(AgentConfig config, std::uint64_t world_seed, std::int64_t steps) {
  Agent agent(config);
  Recorder recorder(world_seed);
  LampView lamps;
  for (std::int64_t i = 0; i < steps; ++i) lamps = recorder.Step(agent.Act(lamps)).lamps;
  return agent;
}

TEST(AgentTest, ExplorationStopsPlayingUnusedMovesOnceMined) {
  AgentConfig config;
  config.seed = 5;
  config.explore_steps = 12000;
  config.constant_rule_interval = 5000;
  const Agent agent = Drive(config, 5, 10000);
  ASSERT_FALSE(agent.constant_rules().empty());
  std::int64_t unused_before = 0;
  for (const StepRecord& record : agent.records()) {
    const bool unused = record.move == Move::kUnused6 || record.move == Move::kUnused7;
    if (record.t < 5000) {
      unused_before += unused;
    } else {
      ASSERT_FALSE(unused) << "t=" << record.t;
    }
  }
  EXPECT_GT(unused_before, 0);
}

TEST(AgentTest, ModelJsonBeforeInduction) {
  AgentConfig config;
  config.explore_steps = 1000;
  const Agent agent = Drive(config, 1, 200);
  const auto json = agent.ModelJson();
  EXPECT_EQ(json["phase"], "Explore");
  // The lamps of the latest move arrive with the next call.
  EXPECT_EQ(json["steps"], 199);
  EXPECT_TRUE(json["level1"].is_null());
  EXPECT_TRUE(json["belief"].is_null());
}

TEST(AgentTest, TooShortExplorationAbortsAfterOneExtension) {
  AgentConfig config;
  config.explore_steps = 100;
  Agent agent(config);
  Recorder recorder(2);
  LampView lamps;
  std::int64_t steps = 0;
  try {
    for (; steps < 1000; ++steps) lamps = recorder.Step(agent.Act(lamps)).lamps;
    FAIL() << "no abort";
  } catch (const AgentAbort& e) {
    EXPECT_EQ(steps, 200);
    EXPECT_NE(std::string(e.what()).find("game_over"), std::string::npos) << e.what();
  }
}

TEST(AgentTest, SameSeedsGiveTheSameMoves) {
  AgentConfig config;
  config.seed = 9;
  const Agent a = Drive(config, 4, 3000);
  const Agent b = Drive(config, 4, 3000);
  EXPECT_TRUE(std::equal(a.records().begin(), a.records().end(), b.records().begin(),
                         b.records().end()));
}

class LifecycleTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    LifecycleConfig config;
    config.world_seed = 3;
    config.agent.seed = 3;
    config.exploit_sets = 200;
    result_ = new LifecycleResult(RunLifecycle(config));
  }
  static void TearDownTestSuite() { delete result_; }
  static LifecycleResult* result_;
};
LifecycleResult* LifecycleTest::result_ = nullptr;

TEST_F(LifecycleTest, ReachesExploitAndPlaysCleanly) {
  const LifecycleResult& r = *result_;
  ASSERT_TRUE(r.exploit_start.has_value());
  EXPECT_EQ(r.exploit_sets, 200);
  EXPECT_EQ(r.exploit.bad_moves, 0);
  EXPECT_EQ(r.exploit.losses, 0);
  EXPECT_GE(r.exploit.victories, 190);
  EXPECT_EQ(r.exploit.sets(), 200);
}

TEST_F(LifecycleTest, PhasesAreOrderedAndTheTraceReplays) {
  const LifecycleResult& r = *result_;
  EXPECT_TRUE(Replay(r.trace).consistent);
  EXPECT_GE(*r.exploit_start, 20000);
  const ScoreCard sum = [&] {
    ScoreCard s = r.explore;
    s += r.consolidate;
    s += r.exploit;
    return s;
  }();
  const ScoreCard whole = Score(r.trace.records, 0, r.trace.records.size());
  EXPECT_EQ(sum.victories, whole.victories);
  EXPECT_EQ(sum.bad_moves, whole.bad_moves);
  EXPECT_EQ(r.model["phase"], "Exploit");
  EXPECT_EQ(r.model["winning_sets"]["cross"].size(), 8u);
  EXPECT_TRUE(r.model["winning_sets_converged"].get<bool>());
  for (const auto& f : r.model["formulas"]) EXPECT_TRUE(f["holds"].get<bool>()) << f;
}

TEST_F(LifecycleTest, ModelHasTheThreeLevelOneMachines) {
  const LifecycleResult& r = *result_;
  ASSERT_TRUE(r.model["level1"].is_object());
  EXPECT_EQ(r.model["level1"]["column"]["states"], 3);
  EXPECT_EQ(r.model["level1"]["row"]["states"], 3);
  EXPECT_EQ(r.model["level1"]["game_over"]["states"], 2);
}

}  // namespace
}  // namespace lampworld
