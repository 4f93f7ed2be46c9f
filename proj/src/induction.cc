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

#include "lampworld/induction.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lampworld {
namespace {

constexpr int kFirstLampSymbol = kNumMoves;
constexpr std::array<Lamp, 5> kLampEventOrder = {
    Lamp::kVictory, Lamp::kLoss, Lamp::kBadMove, Lamp::kCross, Lamp::kO};

std::uint16_t FiredMask(const StepRecord& record) {
  std::uint16_t mask = 0;
  if (!record.lamps.bad_move) mask |= std::uint16_t{1} << MoveCode(record.move);
  for (int i = 0; i < 5; ++i) {
    if (record.lamps.Get(kLampEventOrder[i])) {
      mask |= std::uint16_t{1} << (kFirstLampSymbol + i);
    }
  }
  return mask;
}

// Columnar copy of a training segment with the per-action baseline.
struct MiningContext {
  int min_support = 20;
  std::vector<std::uint8_t> moves;
  std::vector<std::uint8_t> bad;
  std::vector<std::uint16_t> fired;
  std::uint16_t ever_fired = 0;
  // Actions whose bad_move outcome is not constant over the segment; only
  // these can carry a rule that needs automaton state.
  std::array<bool, kNumMoves> open{};
  int n_open = 0;
  std::array<std::array<int, 2>, kNumMoves> baseline{};
  // log of the state-free frequency of each (action, outcome).
  std::array<std::array<double, 2>, kNumMoves> log_freq{};
  double max_chance_log = 0.0;

  MiningContext(std::span<const StepRecord> records, const MiningConfig& config)
      : min_support(config.min_support), max_chance_log(config.max_chance_log) {
    moves.reserve(records.size());
    bad.reserve(records.size());
    fired.reserve(records.size());
    for (const StepRecord& record : records) {
      moves.push_back(static_cast<std::uint8_t>(MoveCode(record.move)));
      bad.push_back(record.lamps.bad_move ? 1 : 0);
      fired.push_back(FiredMask(record));
      ever_fired |= fired.back();
      ++baseline[MoveCode(record.move)][record.lamps.bad_move ? 1 : 0];
    }
    for (int a = 0; a < kNumMoves; ++a) {
      open[a] = baseline[a][0] > 0 && baseline[a][1] > 0;
      n_open += open[a] ? 1 : 0;
      const double total = baseline[a][0] + baseline[a][1];
      for (int b = 0; b < 2; ++b) {
        log_freq[a][b] = total > 0 ? std::log(baseline[a][b] / total) : 0.0;
      }
    }
  }

  std::size_t size() const { return moves.size(); }
};

enum class EvalStatus { kOk, kInconsistent, kNoInformativeRule };

struct Evaluation {
  EvalStatus status = EvalStatus::kOk;
  std::array<std::array<std::array<int, 2>, kNumMoves>, kMaxStates> counts{};
  std::array<std::array<int, kMaxRelevant>, kMaxStates> exercised{};
};

Evaluation Evaluate(const MiningContext& ctx, const Automaton& a,
                    bool early_abort = true) {
  Evaluation eval;
  std::array<bool, kNumMoves> relevant_action{};
  std::uint16_t rel_mask = 0;
  for (int j = 0; j < a.n_relevant; ++j) {
    const int s = a.relevant[j].index();
    rel_mask |= std::uint16_t{1} << s;
    if (s < kNumMoves) relevant_action[s] = true;
  }
  std::array<std::array<std::uint8_t, kNumMoves>, kMaxStates> seen{};
  int open_pairs = a.n_states * ctx.n_open;
  const std::size_t n = ctx.size();
  int q = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const int act = ctx.moves[t];
    const int b = ctx.bad[t];
    std::uint8_t& flags = seen[q][act];
    const std::uint8_t updated = flags | static_cast<std::uint8_t>(1 << b);
    if (updated != flags) {
      flags = updated;
      if (updated == 3) {
        if (relevant_action[act]) {
          eval.status = EvalStatus::kInconsistent;
          return eval;
        }
        if (early_abort && ctx.open[act] && --open_pairs == 0) {
          eval.status = EvalStatus::kNoInformativeRule;
          return eval;
        }
      }
    }
    ++eval.counts[q][act][b];
    const std::uint16_t fm = ctx.fired[t] & rel_mask;
    if (fm == 0) continue;
    for (int j = 0; j < a.n_relevant; ++j) {
      if ((fm >> a.relevant[j].index()) & 1) {
        const int next = a.delta[q][j];
        if (next != q) ++eval.exercised[q][j];
        q = next;
      }
    }
  }
  return eval;
}

// Confident (state, action) rules. A single-state machine keeps every
// confident rule; larger machines keep only rules on actions whose outcome
// varies overall, and only when a state-free coincidence of that length is
// implausible across the whole hypothesis class.
std::vector<PeculiarityRule> RulesFrom(const MiningContext& ctx,
                                       const Evaluation& eval, int n_states,
                                       std::int64_t* coverage) {
  std::vector<PeculiarityRule> rules;
  std::int64_t covered = 0;
  for (int q = 0; q < n_states; ++q) {
    for (int act = 0; act < kNumMoves; ++act) {
      const int ok = eval.counts[q][act][0];
      const int bad = eval.counts[q][act][1];
      const int support = ok + bad;
      if (support < ctx.min_support || (ok > 0 && bad > 0)) continue;
      if (n_states > 1) {
        if (!ctx.open[act]) continue;
        if (support * ctx.log_freq[act][bad > 0 ? 1 : 0] > ctx.max_chance_log) continue;
      }
      rules.push_back({q, static_cast<Move>(act), bad > 0, support, 1.0});
      covered += support;
    }
  }
  if (coverage != nullptr) *coverage = covered;
  return rules;
}

// Renumbers a raw machine into canonical form: breadth-first from
// `initial`, unreachable states dropped, symbols that no longer move any
// state removed.
Automaton Canonicalize(int n_states, const std::vector<GuardSymbol>& symbols,
                       const std::vector<std::vector<int>>& delta, int initial) {
  const int k = static_cast<int>(symbols.size());
  std::vector<int> order;
  std::vector<int> renumber(n_states, -1);
  renumber[initial] = 0;
  order.push_back(initial);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int j = 0; j < k; ++j) {
      const int target = delta[order[i]][j];
      if (renumber[target] < 0) {
        renumber[target] = static_cast<int>(order.size());
        order.push_back(target);
      }
    }
  }
  Automaton out;
  out.n_states = static_cast<int>(order.size());
  for (int j = 0; j < k; ++j) {
    bool moves_something = false;
    for (int old : order) moves_something |= delta[old][j] != old;
    if (!moves_something) continue;
    const int slot = out.n_relevant++;
    out.relevant[slot] = symbols[j];
    for (int i = 0; i < out.n_states; ++i) {
      out.delta[i][slot] = static_cast<std::uint8_t>(renumber[delta[order[i]][j]]);
    }
  }
  return out;
}

std::vector<GuardSymbol> SymbolsOf(const Automaton& a) {
  return {a.relevant.begin(), a.relevant.begin() + a.n_relevant};
}

std::vector<std::vector<int>> DeltaOf(const Automaton& a) {
  std::vector<std::vector<int>> delta(a.n_states, std::vector<int>(a.n_relevant));
  for (int q = 0; q < a.n_states; ++q) {
    for (int j = 0; j < a.n_relevant; ++j) delta[q][j] = a.delta[q][j];
  }
  return delta;
}

// One-step-smaller machines: drop a relevant symbol, or merge two states
// when the merge stays deterministic.
std::vector<Automaton> Reductions(const Automaton& a) {
  std::vector<Automaton> out;
  const auto symbols = SymbolsOf(a);
  const auto delta = DeltaOf(a);
  for (int drop = 0; drop < a.n_relevant; ++drop) {
    std::vector<GuardSymbol> kept;
    std::vector<std::vector<int>> kept_delta(a.n_states);
    for (int j = 0; j < a.n_relevant; ++j) {
      if (j == drop) continue;
      kept.push_back(symbols[j]);
      for (int q = 0; q < a.n_states; ++q) kept_delta[q].push_back(delta[q][j]);
    }
    out.push_back(Canonicalize(a.n_states, kept, kept_delta, 0));
  }
  for (int p = 0; p < a.n_states; ++p) {
    for (int q = p + 1; q < a.n_states; ++q) {
      std::vector<int> map(a.n_states);
      int next = 0;
      for (int s = 0; s < a.n_states; ++s) map[s] = s == q ? -1 : next++;
      map[q] = map[p];
      const int merged_n = a.n_states - 1;
      std::vector<std::vector<int>> merged(merged_n, std::vector<int>(a.n_relevant, -1));
      bool deterministic = true;
      for (int s = 0; s < a.n_states && deterministic; ++s) {
        for (int j = 0; j < a.n_relevant; ++j) {
          const int target = map[delta[s][j]];
          int& slot = merged[map[s]][j];
          if (slot >= 0 && slot != target) {
            deterministic = false;
            break;
          }
          slot = target;
        }
      }
      if (deterministic) out.push_back(Canonicalize(merged_n, symbols, merged, map[0]));
    }
  }
  return out;
}

MineResult MineWithContext(const MiningContext& ctx, const Automaton& candidate) {
  MineResult result;
  result.automaton = candidate;
  result.automaton.rules.clear();
  if (static_cast<int>(ctx.size()) < ctx.min_support) {
    result.reason = "insufficient support: trace shorter than min_support";
    return result;
  }
  if (candidate.n_states == 1) {
    Evaluation eval = Evaluate(ctx, candidate, /*early_abort=*/false);
    result.automaton.rules = RulesFrom(ctx, eval, 1, nullptr);
    result.accepted = !result.automaton.rules.empty();
    if (!result.accepted) result.reason = "no rule reaches full confidence";
    return result;
  }
  Evaluation eval = Evaluate(ctx, candidate);
  if (eval.status == EvalStatus::kInconsistent) {
    result.reason = "a relevant action's bad_move outcome is not determined by state";
    return result;
  }
  if (eval.status == EvalStatus::kNoInformativeRule) {
    result.reason = "no state-dependent rule survives";
    return result;
  }
  for (int q = 0; q < candidate.n_states; ++q) {
    for (int j = 0; j < candidate.n_relevant; ++j) {
      if (candidate.delta[q][j] != q && eval.exercised[q][j] == 0) {
        result.reason = "transition never exercised";
        return result;
      }
    }
  }
  std::int64_t coverage = 0;
  auto informative = RulesFrom(ctx, eval, candidate.n_states, &coverage);
  if (informative.empty()) {
    result.reason = "no state-dependent rule with enough support";
    return result;
  }
  for (const Automaton& smaller : Reductions(candidate)) {
    Evaluation reduced = Evaluate(ctx, smaller);
    if (reduced.status != EvalStatus::kOk) continue;
    std::int64_t reduced_coverage = 0;
    RulesFrom(ctx, reduced, smaller.n_states, &reduced_coverage);
    if (reduced_coverage >= coverage) {
      result.reason = "not minimal: " + smaller.Encoding() + " predicts as much";
      return result;
    }
  }
  result.accepted = true;
  result.coverage = coverage;
  result.automaton.rules = std::move(informative);
  return result;
}

bool HasBadRule(const Automaton& a, Move move) {
  return std::any_of(a.rules.begin(), a.rules.end(), [&](const PeculiarityRule& r) {
    return r.action == move && r.bad_move;
  });
}

bool HasSymbol(const Automaton& a, GuardSymbol symbol) {
  return a.SlotOf(symbol).has_value();
}

bool HasLampEvent(const Automaton& a) {
  for (int j = 0; j < a.n_relevant; ++j) {
    if (a.relevant[j].kind() == GuardSymbol::Kind::kLampEvent) return true;
  }
  return false;
}

std::optional<Automaton> PickSmallest(const std::vector<Automaton>& accepted,
                                      const std::function<bool(const Automaton&)>& signature) {
  std::optional<Automaton> best;
  for (const Automaton& a : accepted) {
    if (!signature(a)) continue;
    if (!best || a.EncodingLess(*best)) best = a;
  }
  return best;
}

std::string PredictionText(bool bad_move) {
  return bad_move ? "bad_move=on" : "bad_move=off";
}

bool Smaller(const Automaton& a, const Automaton& b) {
  if (a.n_states != b.n_states) return a.n_states < b.n_states;
  return a.n_relevant < b.n_relevant;
}

// Global minimality: an automaton is dropped when every state-dependent
// prediction it makes on the training segment is already made by strictly
// smaller accepted predictors (smaller automata and seen-cell constant
// rules).
std::vector<Automaton> DropDominated(const MiningContext& ctx,
                                     std::span<const StepRecord> train,
                                     std::vector<Automaton> accepted,
                                     const std::vector<ConstantRule>& constant_rules) {
  std::sort(accepted.begin(), accepted.end(),
            [](const Automaton& a, const Automaton& b) { return a.EncodingLess(b); });
  const std::size_t n = train.size();
  std::vector<bool> covered(n, false);
  {
    LampView previous;
    for (std::size_t t = 0; t < n; ++t) {
      const SeenCell seen = SeenFrom(previous);
      for (const ConstantRule& rule : constant_rules) {
        if (rule.action == train[t].move && ctx.open[MoveCode(rule.action)] &&
            (rule.context == SeenCell::kAny || rule.context == seen)) {
          covered[t] = true;
        }
      }
      previous = train[t].lamps;
    }
  }
  std::vector<Automaton> kept;
  std::vector<bool> pending = covered;
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    const Automaton& a = accepted[i];
    if (i > 0 && Smaller(accepted[i - 1], a)) covered = pending;
    const std::vector<int> states = RunAutomaton(a, train);
    bool adds_something = a.n_states == 1;
    std::vector<std::size_t> predicted;
    for (std::size_t t = 0; t < n; ++t) {
      auto rule = a.RuleFor(states[t], train[t].move);
      if (!rule || !ctx.open[MoveCode(rule->action)]) continue;
      predicted.push_back(t);
      if (!covered[t]) adds_something = true;
    }
    if (!adds_something) continue;
    for (std::size_t t : predicted) pending[t] = true;
    kept.push_back(a);
  }
  return kept;
}

}  // namespace

GuardSymbol GuardSymbol::LampEvent(Lamp lamp) {
  for (int i = 0; i < 5; ++i) {
    if (kLampEventOrder[i] == lamp) return GuardSymbol(kFirstLampSymbol + i);
  }
  return GuardSymbol(kFirstLampSymbol);
}

Lamp GuardSymbol::lamp() const { return kLampEventOrder[index_ - kFirstLampSymbol]; }

std::string GuardSymbol::Name() const {
  if (kind() == Kind::kAction) return std::string(MoveName(action()));
  return "lamp:" + std::string(LampName(lamp()));
}

std::optional<GuardSymbol> GuardSymbol::FromName(std::string_view name) {
  for (int i = 0; i < kNumGuardSymbols; ++i) {
    if (GuardSymbol(i).Name() == name) return GuardSymbol(i);
  }
  return std::nullopt;
}

std::optional<int> Automaton::SlotOf(GuardSymbol symbol) const {
  for (int j = 0; j < n_relevant; ++j) {
    if (relevant[j] == symbol) return j;
  }
  return std::nullopt;
}

int Automaton::Advance(int state, const StepRecord& record) const {
  const std::uint16_t fm = FiredMask(record);
  for (int j = 0; j < n_relevant; ++j) {
    if ((fm >> relevant[j].index()) & 1) state = delta[state][j];
  }
  return state;
}

bool Automaton::IsCanonical() const {
  if (n_states < 1 || n_states > kMaxStates) return false;
  if (n_relevant < 0 || n_relevant > kMaxRelevant) return false;
  for (int j = 1; j < n_relevant; ++j) {
    if (!(relevant[j - 1] < relevant[j])) return false;
  }
  int next = 1;
  for (int q = 0; q < n_states; ++q) {
    if (q >= next) return false;
    for (int j = 0; j < n_relevant; ++j) {
      const int target = delta[q][j];
      if (target >= n_states) return false;
      if (target >= next) {
        if (target != next) return false;
        ++next;
      }
    }
  }
  if (next != n_states) return false;
  for (int j = 0; j < n_relevant; ++j) {
    bool moves_something = false;
    for (int q = 0; q < n_states; ++q) moves_something |= delta[q][j] != q;
    if (!moves_something) return false;
  }
  return true;
}

bool Automaton::SameMachine(const Automaton& other) const {
  if (n_states != other.n_states || n_relevant != other.n_relevant) return false;
  for (int j = 0; j < n_relevant; ++j) {
    if (relevant[j] != other.relevant[j]) return false;
  }
  for (int q = 0; q < n_states; ++q) {
    for (int j = 0; j < n_relevant; ++j) {
      if (delta[q][j] != other.delta[q][j]) return false;
    }
  }
  return true;
}

bool Automaton::EncodingLess(const Automaton& other) const {
  if (n_states != other.n_states) return n_states < other.n_states;
  if (n_relevant != other.n_relevant) return n_relevant < other.n_relevant;
  for (int j = 0; j < n_relevant; ++j) {
    if (relevant[j] != other.relevant[j]) return relevant[j] < other.relevant[j];
  }
  for (int q = 0; q < n_states; ++q) {
    for (int j = 0; j < n_relevant; ++j) {
      if (delta[q][j] != other.delta[q][j]) return delta[q][j] < other.delta[q][j];
    }
  }
  return false;
}

std::string Automaton::Encoding() const {
  std::string out = std::to_string(n_states) + "|";
  for (int j = 0; j < n_relevant; ++j) {
    if (j > 0) out += ",";
    out += relevant[j].Name();
  }
  out += "|";
  for (int q = 0; q < n_states; ++q) {
    for (int j = 0; j < n_relevant; ++j) out += std::to_string(delta[q][j]);
  }
  return out;
}

std::optional<PeculiarityRule> Automaton::RuleFor(int state, Move action) const {
  for (const PeculiarityRule& rule : rules) {
    if (rule.state == state && rule.action == action) return rule;
  }
  return std::nullopt;
}

std::vector<int> RunAutomaton(const Automaton& automaton,
                              std::span<const StepRecord> records) {
  std::vector<int> states;
  states.reserve(records.size() + 1);
  int q = 0;
  states.push_back(q);
  for (const StepRecord& record : records) {
    q = automaton.Advance(q, record);
    states.push_back(q);
  }
  return states;
}

void EnumerateForSymbols(int n_states, std::span<const GuardSymbol> symbols,
                         const std::function<void(const Automaton&)>& visit) {
  const int k = static_cast<int>(symbols.size());
  if (n_states == 1) {
    if (k == 0) visit(Automaton{});
    return;
  }
  if (k == 0) return;
  Automaton a;
  a.n_states = n_states;
  a.n_relevant = k;
  std::copy(symbols.begin(), symbols.end(), a.relevant.begin());
  const int digits = n_states * k;
  std::vector<int> odometer(digits, 0);
  for (;;) {
    for (int d = 0; d < digits; ++d) {
      a.delta[d / k][d % k] = static_cast<std::uint8_t>(odometer[d]);
    }
    if (a.IsCanonical()) visit(a);
    int d = digits - 1;
    while (d >= 0 && odometer[d] == n_states - 1) odometer[d--] = 0;
    if (d < 0) break;
    ++odometer[d];
  }
}

void EnumerateCandidates(int max_states, int max_relevant,
                         const std::function<void(const Automaton&)>& visit) {
  visit(Automaton{});
  for (int n = 2; n <= std::min(max_states, kMaxStates); ++n) {
    for (int k = 1; k <= std::min(max_relevant, kMaxRelevant); ++k) {
      // Symbol subsets of size k in lexicographic order.
      std::vector<int> pick(k);
      std::iota(pick.begin(), pick.end(), 0);
      for (;;) {
        std::vector<GuardSymbol> symbols;
        for (int s : pick) symbols.push_back(GuardSymbol::FromIndex(s));
        EnumerateForSymbols(n, symbols, visit);
        int i = k - 1;
        while (i >= 0 && pick[i] == kNumGuardSymbols - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
}

MineResult Mine(std::span<const StepRecord> records, const Automaton& candidate,
                const MiningConfig& config) {
  MiningContext ctx(records, config);
  return MineWithContext(ctx, candidate);
}

std::string_view SeenCellName(SeenCell seen) {
  switch (seen) {
    case SeenCell::kAny:
      return "any";
    case SeenCell::kEmpty:
      return "empty";
    case SeenCell::kCross:
      return "cross";
    case SeenCell::kO:
      return "o";
  }
  return "?";
}

SeenCell SeenFrom(const LampView& previous_lamps) {
  if (previous_lamps.cross) return SeenCell::kCross;
  if (previous_lamps.o) return SeenCell::kO;
  return SeenCell::kEmpty;
}

std::vector<ConstantRule> MineConstantRules(std::span<const StepRecord> records,
                                            int min_support) {
  // counts[context][action][bad]; context 0 is "any".
  std::array<std::array<std::array<int, 2>, kNumMoves>, 4> counts{};
  LampView previous;  // the starting view has every lamp off
  for (const StepRecord& record : records) {
    const int context = static_cast<int>(SeenFrom(previous));
    const int act = MoveCode(record.move);
    const int bad = record.lamps.bad_move ? 1 : 0;
    ++counts[0][act][bad];
    ++counts[context][act][bad];
    previous = record.lamps;
  }
  auto confident = [&](int context, int act) {
    const auto& c = counts[context][act];
    return c[0] + c[1] >= min_support && (c[0] == 0 || c[1] == 0);
  };
  std::vector<ConstantRule> rules;
  for (int context = 0; context < 4; ++context) {
    for (int act = 0; act < kNumMoves; ++act) {
      if (!confident(context, act)) continue;
      if (context != 0 && confident(0, act)) continue;
      const auto& c = counts[context][act];
      rules.push_back({static_cast<SeenCell>(context), static_cast<Move>(act),
                       c[1] > 0, c[0] + c[1], 1.0});
    }
  }
  return rules;
}

Level1States Level1Model::Advance(const Level1States& states,
                                  const StepRecord& record) const {
  return {column.Advance(states.column, record), row.Advance(states.row, record),
          game_over.Advance(states.game_over, record)};
}

bool Level1Model::IsOver(const Level1States& states) const {
  auto rule = game_over.RuleFor(states.game_over, Move::kNewGame);
  return rule.has_value() && !rule->bad_move;
}

CellId Level1Model::EyeCell(const Level1States& states) const {
  return states.row * kBoardSize + states.column;
}

bool Level1Model::PredictsBadMove(const Level1States& states, SeenCell seen,
                                  Move move) const {
  for (const ConstantRule& rule : constant_rules) {
    if (rule.action == move && rule.bad_move &&
        (rule.context == SeenCell::kAny || rule.context == seen)) {
      return true;
    }
  }
  const std::array<std::pair<const Automaton*, int>, 3> machines = {{
      {&column, states.column}, {&row, states.row}, {&game_over, states.game_over}}};
  for (const auto& [machine, state] : machines) {
    auto rule = machine->RuleFor(state, move);
    if (rule && rule->bad_move) return true;
  }
  return false;
}

Level1Model InduceLevel1(std::span<const StepRecord> records,
                         const MiningConfig& config) {
  const auto n = static_cast<std::int64_t>(records.size());
  const auto held =
      static_cast<std::int64_t>(std::floor(static_cast<double>(n) * config.holdout_fraction));
  const std::int64_t train_len = n - held;
  const std::vector<std::string> all_missing = {"column", "row", "game_over"};
  if (train_len < config.min_support) {
    throw InductionError("insufficient exploration: " + std::to_string(n) +
                             " steps is below the minimum support",
                         all_missing);
  }
  const auto train = records.first(train_len);
  MiningContext ctx(train, config);

  std::vector<Automaton> accepted;
  auto consider = [&](const Automaton& candidate) {
    for (int j = 0; j < candidate.n_relevant; ++j) {
      if (((ctx.ever_fired >> candidate.relevant[j].index()) & 1) == 0) return;
    }
    MineResult mined = MineWithContext(ctx, candidate);
    if (mined.accepted) accepted.push_back(std::move(mined.automaton));
  };
  // Symbols that never fire on the training segment cannot carry an
  // exercised transition, so their subsets are skipped wholesale.
  consider(Automaton{});
  for (int n_states = 2; n_states <= kMaxStates; ++n_states) {
    for (int k = 1; k <= kMaxRelevant; ++k) {
      std::vector<int> pick(k);
      std::iota(pick.begin(), pick.end(), 0);
      for (;;) {
        bool usable = true;
        std::vector<GuardSymbol> symbols;
        for (int s : pick) {
          usable &= ((ctx.ever_fired >> s) & 1) != 0;
          symbols.push_back(GuardSymbol::FromIndex(s));
        }
        if (usable) EnumerateForSymbols(n_states, symbols, consider);
        int i = k - 1;
        while (i >= 0 && pick[i] == kNumGuardSymbols - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }

  // Held-out soundness: any rule violation beyond the training segment
  // discards the automaton.
  std::erase_if(accepted, [&](const Automaton& a) {
    int q = 0;
    for (std::int64_t t = 0; t < n; ++t) {
      const StepRecord& record = records[t];
      if (t >= train_len) {
        auto rule = a.RuleFor(q, record.move);
        if (rule && rule->bad_move != record.lamps.bad_move) return true;
      }
      q = a.Advance(q, record);
    }
    return false;
  });

  Level1Model model;
  model.constant_rules = MineConstantRules(train, config.min_support);
  model.accepted = DropDominated(ctx, train, accepted, model.constant_rules);
  {
    LampView previous;
    std::vector<bool> violated(model.constant_rules.size(), false);
    for (std::int64_t t = 0; t < n; ++t) {
      const StepRecord& record = records[t];
      if (t >= train_len) {
        const SeenCell seen = SeenFrom(previous);
        for (std::size_t i = 0; i < model.constant_rules.size(); ++i) {
          const ConstantRule& rule = model.constant_rules[i];
          if (rule.action == record.move &&
              (rule.context == SeenCell::kAny || rule.context == seen) &&
              rule.bad_move != record.lamps.bad_move) {
            violated[i] = true;
          }
        }
      }
      previous = record.lamps;
    }
    std::vector<ConstantRule> sound;
    for (std::size_t i = 0; i < violated.size(); ++i) {
      if (!violated[i]) sound.push_back(model.constant_rules[i]);
    }
    model.constant_rules = std::move(sound);
  }

  const GuardSymbol left = GuardSymbol::Action(Move::kLeft);
  const GuardSymbol right = GuardSymbol::Action(Move::kRight);
  const GuardSymbol up = GuardSymbol::Action(Move::kUp);
  const GuardSymbol down = GuardSymbol::Action(Move::kDown);
  auto column = PickSmallest(accepted, [&](const Automaton& a) {
    return HasSymbol(a, left) && HasSymbol(a, right) &&
           HasBadRule(a, Move::kLeft) && HasBadRule(a, Move::kRight);
  });
  auto row = PickSmallest(accepted, [&](const Automaton& a) {
    return HasSymbol(a, up) && HasSymbol(a, down) && HasBadRule(a, Move::kUp) &&
           HasBadRule(a, Move::kDown);
  });
  auto game_over = PickSmallest(accepted, [&](const Automaton& a) {
    return HasLampEvent(a) && HasBadRule(a, Move::kNewGame) &&
           std::any_of(a.rules.begin(), a.rules.end(), [](const PeculiarityRule& r) {
             return r.action == Move::kNewGame && !r.bad_move;
           });
  });
  std::vector<std::string> missing;
  if (!column) missing.push_back("column");
  if (!row) missing.push_back("row");
  if (!game_over) missing.push_back("game_over");
  if (!missing.empty()) {
    std::string what = "insufficient exploration: no automaton found for";
    for (const auto& m : missing) what += " " + m;
    throw InductionError(what, missing);
  }
  model.column = *column;
  model.row = *row;
  model.game_over = *game_over;
  return model;
}

nlohmann::ordered_json AutomatonToJson(const Automaton& automaton) {
  nlohmann::ordered_json out;
  out["states"] = automaton.n_states;
  out["initial"] = 0;
  out["relevant"] = nlohmann::ordered_json::array();
  for (int j = 0; j < automaton.n_relevant; ++j) {
    out["relevant"].push_back(automaton.relevant[j].Name());
  }
  out["transitions"] = nlohmann::ordered_json::array();
  for (int q = 0; q < automaton.n_states; ++q) {
    for (int j = 0; j < automaton.n_relevant; ++j) {
      if (automaton.delta[q][j] == q) continue;
      out["transitions"].push_back({{"from", q},
                                    {"on", automaton.relevant[j].Name()},
                                    {"to", automaton.delta[q][j]}});
    }
  }
  out["rules"] = nlohmann::ordered_json::array();
  for (const PeculiarityRule& rule : automaton.rules) {
    out["rules"].push_back({{"state", rule.state},
                            {"action", MoveName(rule.action)},
                            {"prediction", PredictionText(rule.bad_move)},
                            {"support", rule.support},
                            {"confidence", rule.confidence}});
  }
  return out;
}

nlohmann::ordered_json Level1ToJson(const Level1Model& model) {
  nlohmann::ordered_json out;
  out["column"] = AutomatonToJson(model.column);
  out["row"] = AutomatonToJson(model.row);
  out["game_over"] = AutomatonToJson(model.game_over);
  out["constant_rules"] = nlohmann::ordered_json::array();
  for (const ConstantRule& rule : model.constant_rules) {
    out["constant_rules"].push_back({{"sees", SeenCellName(rule.context)},
                                     {"action", MoveName(rule.action)},
                                     {"prediction", PredictionText(rule.bad_move)},
                                     {"support", rule.support},
                                     {"confidence", rule.confidence}});
  }
  out["accepted_automata"] = model.accepted.size();
  return out;
}

}  // namespace lampworld
