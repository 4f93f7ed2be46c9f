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

#include <algorithm>
#include <utility>

namespace lampworld {
namespace {

Cell SeenValue(const LampView& lamps) {
  if (lamps.cross) return Cell::kCross;
  if (lamps.o) return Cell::kO;
  return Cell::kEmpty;
}

std::optional<Outcome> FlashOutcome(const LampView& lamps) {
  if (lamps.victory && lamps.loss) return Outcome::kDraw;
  if (lamps.victory) return Outcome::kVictory;
  if (lamps.loss) return Outcome::kLoss;
  return std::nullopt;
}

bool Marked(CellKnowledge k) {
  return k == CellKnowledge::kCross || k == CellKnowledge::kO;
}

int Distance(CellId a, CellId b) {
  return std::abs(ColOf(a) - ColOf(b)) + std::abs(RowOf(a) - RowOf(b));
}

KnownCells AllUnknown() {
  KnownCells cells;
  cells.fill(CellKnowledge::kUnknown);
  return cells;
}

}  // namespace

std::string_view AgentPhaseName(AgentPhase phase) {
  switch (phase) {
    case AgentPhase::kExplore:
      return "Explore";
    case AgentPhase::kConsolidateModel:
      return "ConsolidateModel";
    case AgentPhase::kExploit:
      return "Exploit";
  }
  return "?";
}

ScoreCard& ScoreCard::operator+=(const ScoreCard& other) {
  victories += other.victories;
  losses += other.losses;
  draws += other.draws;
  bad_moves += other.bad_moves;
  return *this;
}

ScoreCard Score(std::span<const StepRecord> records, std::int64_t start,
                std::int64_t end) {
  ScoreCard card;
  card.window_start = start;
  card.window_end = end;
  for (const StepRecord& record : records) {
    if (record.t < start || record.t >= end) continue;
    if (record.lamps.bad_move) ++card.bad_moves;
    if (auto outcome = FlashOutcome(record.lamps)) {
      if (*outcome == Outcome::kDraw) {
        ++card.draws;
      } else if (*outcome == Outcome::kVictory) {
        ++card.victories;
      } else {
        ++card.losses;
      }
    }
  }
  return card;
}

std::vector<ScoreCard> ScoreTimeline(std::span<const StepRecord> records,
                                     std::int64_t window) {
  std::vector<ScoreCard> timeline;
  const auto n = static_cast<std::int64_t>(records.size());
  for (std::int64_t start = 0; start < n; start += window) {
    const std::int64_t end = std::min(n, start + window);
    timeline.push_back(Score(records.subspan(start, end - start), start, end));
  }
  return timeline;
}

std::string ScoreCardCsvHeader() {
  return "window_start,window_end,victories,losses,draws,bad_moves";
}

std::string ScoreCardCsvRow(const ScoreCard& card) {
  return std::to_string(card.window_start) + "," + std::to_string(card.window_end) + "," +
         std::to_string(card.victories) + "," + std::to_string(card.losses) + "," +
         std::to_string(card.draws) + "," + std::to_string(card.bad_moves);
}

nlohmann::ordered_json ScoreCardToJson(const ScoreCard& card) {
  return {{"window_start", card.window_start}, {"window_end", card.window_end},
          {"victories", card.victories},       {"losses", card.losses},
          {"draws", card.draws},               {"bad_moves", card.bad_moves}};
}

Agent::Agent(AgentConfig config)
    : config_(config),
      rng_(config.seed ^ 0x5eed'a9e7'0000'0000ULL),
      learner_(config.min_sets, config.stable_sets) {}

Agent::~Agent() = default;
Agent::Agent(Agent&&) noexcept = default;
Agent& Agent::operator=(Agent&&) noexcept = default;

Move Agent::Act(const LampView& observation) {
  if (pending_) {
    Learn({static_cast<std::int64_t>(records_.size()), *pending_, observation});
  }
  const Move move = Choose(observation);
  pending_ = move;
  move_phases_.push_back(phase_);
  return move;
}

void Agent::Learn(const StepRecord& record) {
  records_.push_back(record);
  const auto n = static_cast<std::int64_t>(records_.size());
  if (phase_ == AgentPhase::kExplore) {
    if (n % config_.constant_rule_interval == 0) {
      constant_rules_ = MineConstantRules(records_, config_.mining.min_support);
    }
    if (n >= config_.explore_steps) FinishExplore();
    return;
  }
  Track(record);
  if (phase_ == AgentPhase::kConsolidateModel &&
      n - consolidate_start_ > config_.consolidate_step_limit) {
    throw AgentAbort("winning sets did not converge within " +
                     std::to_string(config_.consolidate_step_limit) + " steps");
  }
}

void Agent::FinishExplore() {
  try {
    level1_ = InduceLevel1(records_, config_.mining);
  } catch (const InductionError& e) {
    if (!extended_) {
      extended_ = true;
      config_.explore_steps += config_.explore_steps;
      return;
    }
    std::string missing;
    for (const std::string& name : e.missing()) missing += " " + name;
    throw AgentAbort(std::string("level-1 induction failed after extended exploration: ") +
                     e.what() + "; missing:" + missing);
  }
  constant_rules_ = level1_->constant_rules;

  // Bring the level-1 states and the belief up to date from step 0.
  l1_ = {};
  belief_ = BeliefInit({level1_->EyeCell(l1_), level1_->IsOver(l1_)});
  consolidate_start_ = static_cast<std::int64_t>(records_.size());
  phase_ = AgentPhase::kConsolidateModel;
  for (const StepRecord& record : records_) Track(record);
  history_.moments.assign(1, belief_ ? ProjectKnownCells(*belief_) : AllUnknown());
}

void Agent::Track(const StepRecord& record) {
  l1_ = level1_->Advance(l1_, record);
  const EyePhase eye_phase{level1_->EyeCell(l1_), level1_->IsOver(l1_)};
  if (record.move == Move::kNewGame && !record.lamps.bad_move) {
    belief_ = BeliefInit(eye_phase);
    pending_outcome_ = Outcome::kNone;
    set_recorded_ = false;
    sweep_.fill(std::nullopt);
    target_.reset();
  } else if (belief_) {
    try {
      const WinningSets* judge = winning_ ? &*winning_ : nullptr;
      belief_ = BeliefStep(*belief_, record.move, record.lamps, eye_phase, judge);
    } catch (const ModelContradiction&) {
      belief_.reset();
      sweep_.fill(std::nullopt);
      ++contradictions_;
      if (phase_ == AgentPhase::kExploit) phase_ = AgentPhase::kConsolidateModel;
    }
  }
  if (!record.lamps.bad_move) {
    if (auto outcome = FlashOutcome(record.lamps)) {
      pending_outcome_ = *outcome;
      set_recorded_ = false;
      const auto t = static_cast<std::size_t>(record.t);
      if (t < move_phases_.size() && move_phases_[t] == AgentPhase::kExploit) {
        ++exploit_sets_;
      }
    }
  }
  if (!belief_ && eye_phase.over) sweep_[eye_phase.eye] = SeenValue(record.lamps);
  if (record.t >= consolidate_start_) {
    history_.moments.push_back(belief_ ? ProjectKnownCells(*belief_) : AllUnknown());
  }
}

void Agent::RecordSet(const Board& final_board) {
  learner_.Observe({final_board, pending_outcome_});
  set_recorded_ = true;
  if (learner_.converged()) {
    winning_ = learner_.report().AsWinningSets();
  }
  if (phase_ == AgentPhase::kExploit) {
    RefreshSearch();
    return;
  }
  if (!learner_.converged()) return;
  for (const auto& [formula, verdict] : VerifyFormulas()) {
    if (!verdict.holds) {
      throw AgentAbort("formula " + formula.name + " falsified at moment " +
                       std::to_string(verdict.counterexample->moment));
    }
  }
  phase_ = AgentPhase::kExploit;
  RefreshSearch();
}

void Agent::RefreshSearch() {
  const WinningSets sets = learner_.report().AsWinningSets();
  if (!search_ || search_->sets() != sets) {
    search_ = std::make_unique<GameTreeSearch>(sets, config_.search_mode);
  }
}

std::vector<std::pair<Formula, FormulaVerdict>> Agent::VerifyFormulas() const {
  std::vector<std::pair<Formula, FormulaVerdict>> out;
  if (history_.moments.empty()) return out;
  const auto segment = std::span<const StepRecord>(records_).subspan(
      static_cast<std::size_t>(consolidate_start_));
  for (Formula& formula : StandardFormulaSuite()) {
    FormulaVerdict verdict = EvalFormula(formula, segment, history_);
    out.emplace_back(std::move(formula), std::move(verdict));
  }
  return out;
}

Move Agent::Choose(const LampView& observation) {
  if (phase_ == AgentPhase::kExplore) return RandomMove(observation);
  if (level1_->IsOver(l1_)) return SetEndMove(observation);
  if (!belief_) return RandomMove(observation);
  if (phase_ == AgentPhase::kConsolidateModel) return ConsolidateMove(observation);
  return ExploitMove(observation);
}

Move Agent::RandomMove(const LampView& observation) {
  const SeenCell seen = SeenFrom(observation);
  std::vector<Move> allowed;
  for (int code = 0; code < kNumMoves; ++code) {
    const Move move = static_cast<Move>(code);
    bool bad = false;
    if (level1_) {
      bad = level1_->PredictsBadMove(l1_, seen, move);
    } else {
      for (const ConstantRule& rule : constant_rules_) {
        if (rule.action == move && rule.bad_move &&
            (rule.context == SeenCell::kAny || rule.context == seen)) {
          bad = true;
        }
      }
    }
    if (!bad) allowed.push_back(move);
  }
  if (allowed.empty()) return static_cast<Move>(rng_.Uniform(kNumMoves));
  return allowed[rng_.Uniform(allowed.size())];
}

Move Agent::StepToward(CellId target) {
  return NavigateLearned(*level1_, l1_, target).front();
}

Move Agent::SetEndMove(const LampView& observation) {
  const CellId eye = level1_->EyeCell(l1_);
  const bool wants_board = pending_outcome_ != Outcome::kNone && !set_recorded_;
  if (!wants_board) return Move::kNewGame;
  if (belief_) {
    if (belief_->size() == 1) {
      RecordSet(belief_->candidates().front());
      return Move::kNewGame;
    }
    const KnownCells known = ProjectKnownCells(*belief_);
    std::optional<CellId> nearest;
    for (CellId id = 0; id < kNumCells; ++id) {
      if (known[id] != CellKnowledge::kUnknown) continue;
      if (!nearest || Distance(eye, id) < Distance(eye, *nearest)) nearest = id;
    }
    return StepToward(*nearest);
  }
  // Tracking was lost: read the frozen board cell by cell.
  std::optional<CellId> nearest;
  for (CellId id = 0; id < kNumCells; ++id) {
    if (sweep_[id]) continue;
    if (!nearest || Distance(eye, id) < Distance(eye, *nearest)) nearest = id;
  }
  if (nearest) return StepToward(*nearest);
  Board board;
  for (CellId id = 0; id < kNumCells; ++id) board[id] = *sweep_[id];
  RecordSet(board);
  (void)observation;
  return Move::kNewGame;
}

Move Agent::ConsolidateMove(const LampView& observation) {
  const KnownCells known = ProjectKnownCells(*belief_);
  const CellId eye = belief_->eye_phase().eye;
  if (!target_ || Marked(known[*target_])) {
    std::vector<CellId> open;
    for (CellId id = 0; id < kNumCells; ++id) {
      if (!Marked(known[id])) open.push_back(id);
    }
    if (open.empty()) return RandomMove(observation);
    target_ = open[rng_.Uniform(open.size())];
  }
  if (*target_ != eye) return StepToward(*target_);
  target_.reset();
  return Move::kPutCross;
}

Move Agent::ExploitMove(const LampView& observation) {
  MacroAction macro;
  try {
    macro = Plan(*belief_, *search_);
  } catch (const ModelContradiction&) {
    belief_.reset();
    ++contradictions_;
    phase_ = AgentPhase::kConsolidateModel;
    return RandomMove(observation);
  }
  const CellId eye = belief_->eye_phase().eye;
  switch (macro.kind) {
    case MacroKind::kNewGame:
      return Move::kNewGame;
    case MacroKind::kMarkCell:
      return macro.cell == eye ? Move::kPutCross : StepToward(macro.cell);
    case MacroKind::kObserveCell:
      return StepToward(macro.cell);
  }
  return Move::kNewGame;
}

nlohmann::ordered_json Agent::ModelJson() const {
  nlohmann::ordered_json out;
  out["phase"] = AgentPhaseName(phase_);
  out["steps"] = records_.size();
  out["level1"] = level1_ ? Level1ToJson(*level1_) : nlohmann::ordered_json(nullptr);
  if (!level1_) {
    out["constant_rules"] = nlohmann::ordered_json::array();
    for (const ConstantRule& rule : constant_rules_) {
      out["constant_rules"].push_back(
          {{"sees", SeenCellName(rule.context)},
           {"action", MoveName(rule.action)},
           {"prediction", rule.bad_move ? "bad_move" : "ok"},
           {"support", rule.support}});
    }
  }
  auto formulas = nlohmann::ordered_json::array();
  for (const auto& [formula, verdict] : VerifyFormulas()) {
    formulas.push_back(FormulaVerdictToJson(formula, verdict));
  }
  out["formulas"] = formulas;
  out["winning_sets"] = WinningSetsToJson(learner_.report());
  out["winning_sets_converged"] = learner_.converged();
  out["belief"] = belief_ ? BeliefToJson(*belief_) : nlohmann::ordered_json(nullptr);
  out["contradictions"] = contradictions_;
  return out;
}

LifecycleResult RunLifecycle(const LifecycleConfig& config) {
  Recorder recorder(config.world_seed, config.world_id);
  Agent agent(config.agent);
  LampView lamps;
  while (static_cast<std::int64_t>(recorder.trace().records.size()) < config.max_steps) {
    const Move move = agent.Act(lamps);
    if (agent.exploit_sets() >= config.exploit_sets) break;
    lamps = recorder.Step(move).lamps;
  }

  LifecycleResult result;
  result.trace = recorder.trace();
  const auto& records = result.trace.records;
  result.timeline = ScoreTimeline(records, config.window);
  const auto phases = agent.move_phases();
  for (const StepRecord& record : records) {
    const ScoreCard one = Score(std::span<const StepRecord>(&record, 1), record.t,
                                record.t + 1);
    switch (phases[record.t]) {
      case AgentPhase::kExplore:
        result.explore += one;
        break;
      case AgentPhase::kConsolidateModel:
        result.consolidate += one;
        break;
      case AgentPhase::kExploit:
        if (!result.exploit_start) result.exploit_start = record.t;
        result.exploit += one;
        break;
    }
  }
  result.exploit_sets = agent.exploit_sets();
  result.contradictions = agent.contradictions();
  result.model = agent.ModelJson();
  return result;
}

}  // namespace lampworld
