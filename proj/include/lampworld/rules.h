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

#ifndef LAMPWORLD_RULES_H_
#define LAMPWORLD_RULES_H_

// First-order regularities over a trace. Formulas are universally
// quantified implications over a moment T >= 1 and cells A, B; they are
// checked by grounding every (T, A, B). Moment 0 is the start; moment T is
// the situation after trace record T - 1, so prev(T) = T - 1 always exists.
//
// Also here: discovery of the 3-cell winning sets from completed sets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lampworld/belief.h"
#include "lampworld/trace.h"
#include "lampworld/world.h"

namespace lampworld {

// Per-moment cell contents; moments[0] precedes the first record. Cells
// may be kUnknown where the belief never resolved them.
struct CellHistory {
  std::vector<KnownCells> moments;
};

CellHistory HistoryFromBoards(std::span<const Board> boards);

enum class Predicate : std::uint8_t {
  kIsO,
  kIsCross,
  kAppearO,      // isO(A, T) & not isO(A, prev(T))
  kAppearCross,  // isCross(A, T) & not isCross(A, prev(T))
  kPlayedMove,
  kLampOn,       // any lamp of the mask is on
};
enum class CellVar : std::uint8_t { kA, kB };
enum class TimeTerm : std::uint8_t { kNow, kPrev };

struct Atom {
  Predicate predicate = Predicate::kIsO;
  CellVar cell = CellVar::kA;
  TimeTerm time = TimeTerm::kNow;
  Move move = Move::kLeft;      // kPlayedMove only
  std::uint8_t lamp_mask = 0;   // kLampOn only; bit i is Lamp(i)
};

struct Literal {
  Atom atom;
  bool negated = false;
};

// forall T >= 1, A, B: premise -> conclusion, where the conclusion is
// either A = B or a conjunction of literals.
struct Formula {
  std::string name;
  std::vector<Literal> premise;
  bool conclude_same_cell = false;
  std::vector<Literal> conclusion;

  bool UsesB() const;
  std::string ToString() const;
};

struct Counterexample {
  std::int64_t moment = 0;
  CellId a = 0;
  CellId b = 0;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct FormulaVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;  // the first one found
  // Moments where some grounding could not be decided because a cell it
  // needs is unknown.
  std::vector<std::int64_t> insufficient;
};

// `history` must have records.size() + 1 moments.
FormulaVerdict EvalFormula(const Formula& formula,
                           std::span<const StepRecord> records,
                           const CellHistory& history);

// One-O-per-reply plus origin and persistence of marks.
std::vector<Formula> StandardFormulaSuite();

struct WinningSet {
  Line cells{};
  Cell side = Cell::kCross;

  friend bool operator==(const WinningSet&, const WinningSet&) = default;
};

struct CompletedSet {
  Board final_board;
  Outcome outcome = Outcome::kNone;
};

// All C(9,3) = 84 cell triples in lexicographic order.
const std::vector<Line>& AllTriples();

struct WinningSetReport {
  std::vector<WinningSet> accepted;
  // Triples never fully owned by that side at a set end.
  std::vector<WinningSet> undecided;
  // Indices of sets won by a side with no accepted triple owned.
  std::vector<std::size_t> unexplained;
  // Accepted triples that never were the only accepted triple owned by the
  // winner of a set. A coincidental triple stays here: whenever it is owned,
  // the real line that won is owned too.
  std::vector<WinningSet> redundant;
  std::size_t sets_seen = 0;

  WinningSets AsWinningSets() const;
};

// A triple is accepted for a side iff it was fully owned by that side at
// the end of at least one set and, every time it was, the set went to that
// side.
WinningSetReport DiscoverWinningSets(std::span<const CompletedSet> sets);

// Incremental discovery with a convergence rule: at least `min_sets`
// observations, then `stable_sets` consecutive observations that leave the
// accepted list unchanged with nothing unexplained, and no redundant triple.
class WinningSetLearner {
 public:
  explicit WinningSetLearner(int min_sets = 100, int stable_sets = 50)
      : min_sets_(min_sets), stable_sets_(stable_sets) {}

  void Observe(const CompletedSet& set);
  bool converged() const;
  const WinningSetReport& report() const { return report_; }
  std::span<const CompletedSet> sets() const { return sets_; }

 private:
  int min_sets_;
  int stable_sets_;
  int unchanged_ = 0;
  std::vector<CompletedSet> sets_;
  WinningSetReport report_;
};

nlohmann::ordered_json FormulaVerdictToJson(const Formula& formula,
                                            const FormulaVerdict& verdict);
nlohmann::ordered_json WinningSetsToJson(const WinningSetReport& report);

}  // namespace lampworld

#endif  // LAMPWORLD_RULES_H_
