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

#include "lampworld/rules.h"

#include <algorithm>
#include <stdexcept>

namespace lampworld {
namespace {

// Kleene three-valued truth.
enum class Truth : std::uint8_t { kFalse, kTrue, kUnknown };

Truth Not(Truth t) {
  if (t == Truth::kUnknown) return t;
  return t == Truth::kTrue ? Truth::kFalse : Truth::kTrue;
}

Truth FromBool(bool b) { return b ? Truth::kTrue : Truth::kFalse; }

class Grounding {
 public:
  Grounding(std::span<const StepRecord> records, const CellHistory& history)
      : records_(records), history_(history) {}

  Truth Eval(const Atom& atom, std::int64_t moment, CellId a, CellId b) const {
    const std::int64_t m = atom.time == TimeTerm::kNow ? moment : Prev(moment);
    const CellId cell = atom.cell == CellVar::kA ? a : b;
    switch (atom.predicate) {
      case Predicate::kIsO:
        return Holds(m, cell, CellKnowledge::kO);
      case Predicate::kIsCross:
        return Holds(m, cell, CellKnowledge::kCross);
      case Predicate::kAppearO:
        return Appears(m, cell, CellKnowledge::kO);
      case Predicate::kAppearCross:
        return Appears(m, cell, CellKnowledge::kCross);
      case Predicate::kPlayedMove:
        return FromBool(m >= 1 && records_[m - 1].move == atom.move);
      case Predicate::kLampOn: {
        if (m < 1) return Truth::kFalse;
        for (int i = 0; i < kNumLamps; ++i) {
          if (((atom.lamp_mask >> i) & 1) &&
              records_[m - 1].lamps.Get(static_cast<Lamp>(i))) {
            return Truth::kTrue;
          }
        }
        return Truth::kFalse;
      }
    }
    return Truth::kUnknown;
  }

  Truth Conjunction(std::span<const Literal> literals, std::int64_t moment,
                    CellId a, CellId b) const {
    Truth result = Truth::kTrue;
    for (const Literal& literal : literals) {
      Truth t = Eval(literal.atom, moment, a, b);
      if (literal.negated) t = Not(t);
      if (t == Truth::kFalse) return Truth::kFalse;
      if (t == Truth::kUnknown) result = Truth::kUnknown;
    }
    return result;
  }

 private:
  Truth Holds(std::int64_t m, CellId cell, CellKnowledge value) const {
    const CellKnowledge k = history_.moments[m][cell];
    if (k == CellKnowledge::kUnknown) return Truth::kUnknown;
    return FromBool(k == value);
  }

  Truth Appears(std::int64_t m, CellId cell, CellKnowledge value) const {
    const Truth now = Holds(m, cell, value);
    if (m == 0) return now;
    const Truth before = Holds(m - 1, cell, value);
    if (now == Truth::kFalse || before == Truth::kTrue) return Truth::kFalse;
    if (now == Truth::kUnknown || before == Truth::kUnknown) return Truth::kUnknown;
    return Truth::kTrue;
  }

  std::span<const StepRecord> records_;
  const CellHistory& history_;
};

std::string AtomText(const Atom& atom) {
  const std::string cell = atom.cell == CellVar::kA ? "A" : "B";
  const std::string time = atom.time == TimeTerm::kNow ? "T" : "prev(T)";
  switch (atom.predicate) {
    case Predicate::kIsO:
      return "isO(" + cell + ", " + time + ")";
    case Predicate::kIsCross:
      return "isCross(" + cell + ", " + time + ")";
    case Predicate::kAppearO:
      return "appearO(" + cell + ", " + time + ")";
    case Predicate::kAppearCross:
      return "appearCross(" + cell + ", " + time + ")";
    case Predicate::kPlayedMove:
      return "playedMove(" + std::string(MoveName(atom.move)) + ", " + time + ")";
    case Predicate::kLampOn: {
      std::string lamps;
      for (int i = 0; i < kNumLamps; ++i) {
        if (((atom.lamp_mask >> i) & 1) == 0) continue;
        if (!lamps.empty()) lamps += "|";
        lamps += LampName(static_cast<Lamp>(i));
      }
      return "lampOn(" + lamps + ", " + time + ")";
    }
  }
  return "?";
}

std::string ConjunctionText(const std::vector<Literal>& literals) {
  std::string out;
  for (const Literal& literal : literals) {
    if (!out.empty()) out += " & ";
    if (literal.negated) out += "not ";
    out += AtomText(literal.atom);
  }
  return out;
}

Literal Lit(Predicate predicate, CellVar cell, TimeTerm time, bool negated = false) {
  return {Atom{predicate, cell, time, Move::kLeft, 0}, negated};
}

Literal Played(Move move, bool negated = false) {
  return {Atom{Predicate::kPlayedMove, CellVar::kA, TimeTerm::kNow, move, 0}, negated};
}

Literal LampLit(Lamp lamp, bool negated = false) {
  return {Atom{Predicate::kLampOn, CellVar::kA, TimeTerm::kNow, Move::kLeft,
               static_cast<std::uint8_t>(1u << static_cast<int>(lamp))},
          negated};
}

bool Owns(const Board& board, const Line& line, Cell side) {
  return board[line[0]] == side && board[line[1]] == side && board[line[2]] == side;
}

bool Favors(Outcome outcome, Cell side) {
  return side == Cell::kCross ? outcome == Outcome::kVictory : outcome == Outcome::kLoss;
}

}  // namespace

CellHistory HistoryFromBoards(std::span<const Board> boards) {
  CellHistory history;
  history.moments.reserve(boards.size());
  for (const Board& board : boards) {
    KnownCells known{};
    for (CellId id = 0; id < kNumCells; ++id) {
      known[id] = static_cast<CellKnowledge>(board[id]);
    }
    history.moments.push_back(known);
  }
  return history;
}

bool Formula::UsesB() const {
  auto uses = [](const std::vector<Literal>& literals) {
    return std::any_of(literals.begin(), literals.end(),
                       [](const Literal& l) { return l.atom.cell == CellVar::kB; });
  };
  return conclude_same_cell || uses(premise) || uses(conclusion);
}

std::string Formula::ToString() const {
  std::string out = UsesB() ? "forall T, A, B: " : "forall T, A: ";
  out += ConjunctionText(premise) + " -> ";
  out += conclude_same_cell ? "A = B" : ConjunctionText(conclusion);
  return out;
}

FormulaVerdict EvalFormula(const Formula& formula,
                           std::span<const StepRecord> records,
                           const CellHistory& history) {
  if (history.moments.size() != records.size() + 1) {
    throw std::invalid_argument("cell history must have one moment per record plus the start");
  }
  Grounding grounding(records, history);
  FormulaVerdict verdict;
  const int b_range = formula.UsesB() ? kNumCells : 1;
  const auto last = static_cast<std::int64_t>(records.size());
  for (std::int64_t t = 1; t <= last; ++t) {
    bool undecided = false;
    for (CellId a = 0; a < kNumCells; ++a) {
      for (CellId b = 0; b < b_range; ++b) {
        const Truth premise = grounding.Conjunction(formula.premise, t, a, b);
        if (premise == Truth::kFalse) continue;
        Truth conclusion = formula.conclude_same_cell
                               ? FromBool(a == b)
                               : grounding.Conjunction(formula.conclusion, t, a, b);
        if (premise == Truth::kTrue && conclusion == Truth::kFalse) {
          verdict.holds = false;
          verdict.counterexample = Counterexample{t, a, b};
          return verdict;
        }
        if (premise == Truth::kUnknown || conclusion == Truth::kUnknown) undecided = true;
      }
    }
    if (undecided) verdict.insufficient.push_back(t);
  }
  return verdict;
}

std::vector<Formula> StandardFormulaSuite() {
  using enum Predicate;
  constexpr auto kA = CellVar::kA;
  constexpr auto kB = CellVar::kB;
  constexpr auto kNow = TimeTerm::kNow;
  constexpr auto kPrev = TimeTerm::kPrev;
  std::vector<Formula> suite;
  suite.push_back({"one-o-per-reply",
                   {Lit(kAppearO, kA, kNow), Lit(kAppearO, kB, kNow)},
                   true,
                   {}});
  suite.push_back({"o-needs-put-cross",
                   {Lit(kAppearO, kA, kNow)},
                   false,
                   {Played(Move::kPutCross), LampLit(Lamp::kBadMove, true)}});
  suite.push_back({"o-persists",
                   {Lit(kIsO, kA, kPrev), Played(Move::kNewGame, true)},
                   false,
                   {Lit(kIsO, kA, kNow)}});
  suite.push_back({"o-persists-on-bad-move",
                   {Lit(kIsO, kA, kPrev), LampLit(Lamp::kBadMove)},
                   false,
                   {Lit(kIsO, kA, kNow)}});
  suite.push_back({"cross-persists",
                   {Lit(kIsCross, kA, kPrev), Played(Move::kNewGame, true)},
                   false,
                   {Lit(kIsCross, kA, kNow)}});
  suite.push_back({"cross-persists-on-bad-move",
                   {Lit(kIsCross, kA, kPrev), LampLit(Lamp::kBadMove)},
                   false,
                   {Lit(kIsCross, kA, kNow)}});
  suite.push_back({"cross-needs-put-cross",
                   {Lit(kAppearCross, kA, kNow)},
                   false,
                   {Played(Move::kPutCross), LampLit(Lamp::kBadMove, true)}});
  return suite;
}

const std::vector<Line>& AllTriples() {
  static const std::vector<Line> kTriples = [] {
    std::vector<Line> triples;
    for (CellId i = 0; i < kNumCells; ++i) {
      for (CellId j = i + 1; j < kNumCells; ++j) {
        for (CellId k = j + 1; k < kNumCells; ++k) triples.push_back({i, j, k});
      }
    }
    return triples;
  }();
  return kTriples;
}

WinningSets WinningSetReport::AsWinningSets() const {
  WinningSets sets;
  for (const WinningSet& w : accepted) {
    (w.side == Cell::kCross ? sets.cross : sets.o).push_back(w.cells);
  }
  return sets;
}

WinningSetReport DiscoverWinningSets(std::span<const CompletedSet> sets) {
  WinningSetReport report;
  report.sets_seen = sets.size();
  for (Cell side : {Cell::kCross, Cell::kO}) {
    for (const Line& triple : AllTriples()) {
      int owned = 0;
      bool refuted = false;
      for (const CompletedSet& set : sets) {
        if (!Owns(set.final_board, triple, side)) continue;
        ++owned;
        if (!Favors(set.outcome, side)) {
          refuted = true;
          break;
        }
      }
      if (owned == 0) {
        report.undecided.push_back({triple, side});
      } else if (!refuted) {
        report.accepted.push_back({triple, side});
      }
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const CompletedSet& set = sets[i];
    for (Cell side : {Cell::kCross, Cell::kO}) {
      if (!Favors(set.outcome, side)) continue;
      const bool explained =
          std::any_of(report.accepted.begin(), report.accepted.end(), [&](const WinningSet& w) {
            return w.side == side && Owns(set.final_board, w.cells, side);
          });
      if (!explained) report.unexplained.push_back(i);
    }
  }
  std::vector<bool> sole(report.accepted.size(), false);
  for (const CompletedSet& set : sets) {
    for (Cell side : {Cell::kCross, Cell::kO}) {
      if (!Favors(set.outcome, side)) continue;
      int owned = 0;
      std::size_t which = 0;
      for (std::size_t k = 0; k < report.accepted.size(); ++k) {
        const WinningSet& w = report.accepted[k];
        if (w.side == side && Owns(set.final_board, w.cells, side)) {
          ++owned;
          which = k;
        }
      }
      if (owned == 1) sole[which] = true;
    }
  }
  for (std::size_t k = 0; k < sole.size(); ++k) {
    if (!sole[k]) report.redundant.push_back(report.accepted[k]);
  }
  return report;
}

void WinningSetLearner::Observe(const CompletedSet& set) {
  sets_.push_back(set);
  WinningSetReport next = DiscoverWinningSets(sets_);
  const bool same = next.accepted == report_.accepted && next.unexplained.empty();
  unchanged_ = same ? unchanged_ + 1 : 0;
  report_ = std::move(next);
}

bool WinningSetLearner::converged() const {
  return static_cast<int>(sets_.size()) >= min_sets_ && unchanged_ >= stable_sets_ &&
         report_.redundant.empty() &&
         report_.AsWinningSets().known();
}

nlohmann::ordered_json FormulaVerdictToJson(const Formula& formula,
                                            const FormulaVerdict& verdict) {
  nlohmann::ordered_json out;
  out["name"] = formula.name;
  out["formula"] = formula.ToString();
  out["holds"] = verdict.holds;
  if (verdict.counterexample) {
    out["counterexample"] = {{"T", verdict.counterexample->moment},
                             {"A", verdict.counterexample->a},
                             {"B", verdict.counterexample->b}};
  } else {
    out["counterexample"] = nullptr;
  }
  out["insufficient_moments"] = verdict.insufficient.size();
  return out;
}

nlohmann::ordered_json WinningSetsToJson(const WinningSetReport& report) {
  nlohmann::ordered_json out;
  auto lines = [&](Cell side) {
    auto list = nlohmann::ordered_json::array();
    for (const WinningSet& w : report.accepted) {
      if (w.side == side) list.push_back(w.cells);
    }
    return list;
  };
  out["cross"] = lines(Cell::kCross);
  out["o"] = lines(Cell::kO);
  out["undecided"] = report.undecided.size();
  out["sets_seen"] = report.sets_seen;
  return out;
}

}  // namespace lampworld
