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


#ifndef LAMPWORLD_PLANNER_H_
#define LAMPWORLD_PLANNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "lampworld/belief.h"
#include "lampworld/induction.h"
#include "lampworld/world.h"

namespace lampworld {

// Exact game values: +1 Cross wins, -1 O wins, 0 draw.
using Value = boost::rational<std::int64_t>;

std::string ValueToString(const Value& value);

// Column moves first, then row moves.
std::vector<Move> Navigate(const Eye& from, const Eye& to);

// Shortest eye path to an abstract cell using only the learned column and
// row automata, skipping moves they predict to be bad. Empty if `target`
// is the current cell; throws ModelContradiction if unreachable.
std::vector<Move> NavigateLearned(const Level1Model& model,
                                  const Level1States& states, CellId target);

enum class SearchMode { kExpectimax, kMinimax };

struct SearchResult {
  Value value{0};
  // Chosen cell for the side to move; none at terminal positions and at O
  // chance nodes.
  std::optional<CellId> best;
};

// Memoized full-depth search. Cross maximizes. O minimizes under kMinimax
// and is a uniform chance node under kExpectimax. Ties go to the smallest
// cell id.
class GameTreeSearch {
 public:
  GameTreeSearch(WinningSets sets, SearchMode mode);

  SearchResult Search(const Board& board, Cell to_move);
  // Side to move inferred from the mark counts.
  SearchResult Search(const Board& board);

  const WinningSets& sets() const { return sets_; }
  SearchMode mode() const { return mode_; }

 private:
  struct Entry {
    bool done = false;
    SearchResult result;
  };

  SearchResult Compute(const Board& board, Cell to_move);

  WinningSets sets_;
  SearchMode mode_;
  std::vector<Entry> memo_;
};

SearchResult Expectimax(const Board& board, Cell to_move,
                        const WinningSets& sets);
SearchResult Minimax(const Board& board, Cell to_move, const WinningSets& sets);

enum class MacroKind { kNewGame, kMarkCell, kObserveCell };

struct MacroAction {
  MacroKind kind = MacroKind::kNewGame;
  CellId cell = 0;

  friend bool operator==(const MacroAction&, const MacroAction&) = default;
};

std::string MacroToString(const MacroAction& macro);

// Chooses the next macro from the belief. Marks when every candidate board
// agrees on the expectimax cell, otherwise looks at the nearest unknown
// cell on which the disagreeing candidates differ.
MacroAction Plan(const BeliefState& belief, GameTreeSearch& search);

}  // namespace lampworld

#endif  // LAMPWORLD_PLANNER_H_
