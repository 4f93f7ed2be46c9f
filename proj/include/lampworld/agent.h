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


#ifndef LAMPWORLD_AGENT_H_
#define LAMPWORLD_AGENT_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lampworld/belief.h"
#include "lampworld/induction.h"
#include "lampworld/planner.h"
#include "lampworld/rules.h"
#include "lampworld/trace.h"
#include "lampworld/world.h"

namespace lampworld {

enum class AgentPhase : std::uint8_t { kExplore = 0, kConsolidateModel, kExploit };
std::string_view AgentPhaseName(AgentPhase phase);

struct ScoreCard {
  std::int64_t window_start = 0;  // first step index
  std::int64_t window_end = 0;    // one past the last step index
  std::int64_t victories = 0;
  std::int64_t losses = 0;
  std::int64_t draws = 0;
  std::int64_t bad_moves = 0;

  std::int64_t sets() const { return victories + losses + draws; }
  ScoreCard& operator+=(const ScoreCard& other);
  friend bool operator==(const ScoreCard&, const ScoreCard&) = default;
};

// Counts flashes of the records with t in [start, end). A step where both
// victory and loss flash is one draw.
ScoreCard Score(std::span<const StepRecord> records, std::int64_t start,
                std::int64_t end);
std::vector<ScoreCard> ScoreTimeline(std::span<const StepRecord> records,
                                     std::int64_t window = 1000);

std::string ScoreCardCsvHeader();
std::string ScoreCardCsvRow(const ScoreCard& card);
nlohmann::ordered_json ScoreCardToJson(const ScoreCard& card);

struct AgentConfig {
  std::uint64_t seed = 0;
  std::int64_t explore_steps = 20000;
  std::int64_t constant_rule_interval = 5000;
  int min_sets = 100;
  int stable_sets = 50;
  // Consolidation gives up after this many steps without converging.
  std::int64_t consolidate_step_limit = 200000;
  SearchMode search_mode = SearchMode::kExpectimax;
  MiningConfig mining;
};

class AgentAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The step device. It sees nothing but its own moves and the lamps.
class Agent {
 public:
  explicit Agent(AgentConfig config = {});
  ~Agent();
  Agent(Agent&&) noexcept;
  Agent& operator=(Agent&&) noexcept;

  // Takes the lamps produced by the previous move (all off before the
  // first step) and returns the next move. Throws AgentAbort when learning
  // fails for good.
  Move Act(const LampView& observation);

  AgentPhase phase() const { return phase_; }
  // Phase in which each move was chosen, indexed by step.
  std::span<const AgentPhase> move_phases() const { return move_phases_; }
  std::span<const StepRecord> records() const { return records_; }
  std::int64_t exploit_sets() const { return exploit_sets_; }
  int contradictions() const { return contradictions_; }
  const std::optional<Level1Model>& level1() const { return level1_; }
  const WinningSetLearner& learner() const { return learner_; }
  const std::optional<BeliefState>& belief() const { return belief_; }
  const std::vector<ConstantRule>& constant_rules() const { return constant_rules_; }

  // Formula suite verdicts over the steps since consolidation began.
  std::vector<std::pair<Formula, FormulaVerdict>> VerifyFormulas() const;

  nlohmann::ordered_json ModelJson() const;

 private:
  void Learn(const StepRecord& record);
  void FinishExplore();
  void Track(const StepRecord& record);
  void RecordSet(const Board& final_board);
  Move Choose(const LampView& observation);
  Move RandomMove(const LampView& observation);
  Move StepToward(CellId target);
  Move ConsolidateMove(const LampView& observation);
  Move ExploitMove(const LampView& observation);
  Move SetEndMove(const LampView& observation);
  void RefreshSearch();

  AgentConfig config_;
  SplitMix64 rng_;
  AgentPhase phase_ = AgentPhase::kExplore;
  std::optional<Move> pending_;
  bool extended_ = false;

  std::vector<StepRecord> records_;
  std::vector<AgentPhase> move_phases_;
  std::vector<ConstantRule> constant_rules_;
  std::optional<Level1Model> level1_;
  Level1States l1_;
  std::optional<BeliefState> belief_;  // empty while tracking is lost
  Outcome pending_outcome_ = Outcome::kNone;
  bool set_recorded_ = false;
  std::optional<CellId> target_;
  // Cells read while the set is over and tracking is lost.
  std::array<std::optional<Cell>, kNumCells> sweep_{};

  WinningSetLearner learner_;
  std::optional<WinningSets> winning_;
  std::unique_ptr<GameTreeSearch> search_;
  std::int64_t consolidate_start_ = 0;
  CellHistory history_;
  std::int64_t exploit_sets_ = 0;
  int contradictions_ = 0;
};

struct LifecycleConfig {
  int world_id = 2;
  std::uint64_t world_seed = 7;
  AgentConfig agent;
  std::int64_t exploit_sets = 1000;
  // Hard cap on total steps.
  std::int64_t max_steps = 2000000;
  std::int64_t window = 1000;
};

struct LifecycleResult {
  Trace trace;
  std::vector<ScoreCard> timeline;
  ScoreCard explore;
  ScoreCard consolidate;
  ScoreCard exploit;
  std::optional<std::int64_t> exploit_start;
  std::int64_t exploit_sets = 0;
  int contradictions = 0;
  nlohmann::ordered_json model;
};

// Runs the agent against a fresh World 2 until it has finished
// `exploit_sets` sets in Exploit or hit `max_steps`.
LifecycleResult RunLifecycle(const LifecycleConfig& config);

}  // namespace lampworld

#endif  // LAMPWORLD_AGENT_H_
