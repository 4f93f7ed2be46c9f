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


#include "lampworld/planner.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <utility>

namespace lampworld {
namespace {

constexpr int kBoardCodes = 19683;  // 3^9

Value TerminalValue(Outcome outcome) {
  switch (outcome) {
    case Outcome::kVictory:
      return Value(1);
    case Outcome::kLoss:
      return Value(-1);
    default:
      return Value(0);
  }
}

int Distance(CellId a, CellId b) {
  return std::abs(ColOf(a) - ColOf(b)) + std::abs(RowOf(a) - RowOf(b));
}

}  // namespace

std::string ValueToString(const Value& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::vector<Move> Navigate(const Eye& from, const Eye& to) {
  std::vector<Move> path;
  for (int c = from.col; c < to.col; ++c) path.push_back(Move::kRight);
  for (int c = from.col; c > to.col; --c) path.push_back(Move::kLeft);
  for (int r = from.row; r < to.row; ++r) path.push_back(Move::kDown);
  for (int r = from.row; r > to.row; --r) path.push_back(Move::kUp);
  return path;
}

std::vector<Move> NavigateLearned(const Level1Model& model,
                                  const Level1States& states, CellId target) {
  constexpr std::array<Move, 4> kEyeMoves = {Move::kLeft, Move::kRight, Move::kUp,
                                             Move::kDown};
  const auto cell_of = [](int col, int row) { return row * kBoardSize + col; };
  std::array<int, kNumCells> parent;
  std::array<Move, kNumCells> via{};
  parent.fill(-1);
  const int start = cell_of(states.column, states.row);
  if (start == target) return {};
  parent[start] = start;
  std::deque<int> queue = {start};
  while (!queue.empty()) {
    const int here = queue.front();
    queue.pop_front();
    const int col = here % kBoardSize;
    const int row = here / kBoardSize;
    for (Move move : kEyeMoves) {
      Level1States probe = states;
      probe.column = col;
      probe.row = row;
      if (model.PredictsBadMove(probe, SeenCell::kAny, move)) continue;
      int next_col = col;
      int next_row = row;
      if (auto slot = model.column.SlotOf(GuardSymbol::Action(move))) {
        next_col = model.column.Next(col, *slot);
      }
      if (auto slot = model.row.SlotOf(GuardSymbol::Action(move))) {
        next_row = model.row.Next(row, *slot);
      }
      const int next = cell_of(next_col, next_row);
      if (parent[next] != -1) continue;
      parent[next] = here;
      via[next] = move;
      queue.push_back(next);
    }
  }
  if (parent[target] == -1) {
    throw ModelContradiction("learned eye automata cannot reach cell " +
                             std::to_string(target));
  }
  std::vector<Move> path;
  for (int at = target; at != start; at = parent[at]) path.push_back(via[at]);
  std::reverse(path.begin(), path.end());
  return path;
}

GameTreeSearch::GameTreeSearch(WinningSets sets, SearchMode mode)
    : sets_(std::move(sets)), mode_(mode), memo_(2 * kBoardCodes) {}

SearchResult GameTreeSearch::Search(const Board& board) {
  return Search(board, board.Count(Cell::kCross) > board.Count(Cell::kO) ? Cell::kO
                                                                          : Cell::kCross);
}

SearchResult GameTreeSearch::Search(const Board& board, Cell to_move) {
  Entry& entry = memo_[board.Code() * 2 + (to_move == Cell::kO ? 1 : 0)];
  if (!entry.done) {
    entry.result = Compute(board, to_move);
    entry.done = true;
  }
  return entry.result;
}

SearchResult GameTreeSearch::Compute(const Board& board, Cell to_move) {
  const Outcome outcome = sets_.Judge(board);
  if (outcome != Outcome::kNone) return {TerminalValue(outcome), std::nullopt};

  const Cell other = to_move == Cell::kCross ? Cell::kO : Cell::kCross;
  SearchResult result;
  if (to_move == Cell::kO && mode_ == SearchMode::kExpectimax) {
    Value sum(0);
    int empty = 0;
    for (CellId id = 0; id < kNumCells; ++id) {
      if (board[id] != Cell::kEmpty) continue;
      Board child = board;
      child[id] = Cell::kO;
      sum += Search(child, other).value;
      ++empty;
    }
    result.value = sum / empty;
    return result;
  }
  for (CellId id = 0; id < kNumCells; ++id) {
    if (board[id] != Cell::kEmpty) continue;
    Board child = board;
    child[id] = to_move;
    const Value v = Search(child, other).value;
    const bool better = !result.best || (to_move == Cell::kCross ? v > result.value
                                                                 : v < result.value);
    if (better) {
      result.value = v;
      result.best = id;
    }
  }
  return result;
}

SearchResult Expectimax(const Board& board, Cell to_move, const WinningSets& sets) {
  GameTreeSearch search(sets, SearchMode::kExpectimax);
  return search.Search(board, to_move);
}

SearchResult Minimax(const Board& board, Cell to_move, const WinningSets& sets) {
  GameTreeSearch search(sets, SearchMode::kMinimax);
  return search.Search(board, to_move);
}

std::string MacroToString(const MacroAction& macro) {
  switch (macro.kind) {
    case MacroKind::kNewGame:
      return "NewGame";
    case MacroKind::kMarkCell:
      return "MarkCell(" + std::to_string(macro.cell) + ")";
    case MacroKind::kObserveCell:
      return "ObserveCell(" + std::to_string(macro.cell) + ")";
  }
  return "?";
}

MacroAction Plan(const BeliefState& belief, GameTreeSearch& search) {
  if (belief.eye_phase().over) return {MacroKind::kNewGame, 0};

  const auto candidates = belief.candidates();
  std::vector<CellId> best;
  best.reserve(candidates.size());
  for (const Board& board : candidates) {
    const SearchResult result = search.Search(board, Cell::kCross);
    if (!result.best) {
      throw ModelContradiction("set is decided on " + board.ToString() +
                               " but the game-over automaton says playing");
    }
    best.push_back(*result.best);
  }
  if (std::all_of(best.begin(), best.end(), [&](CellId c) { return c == best.front(); })) {
    return {MacroKind::kMarkCell, best.front()};
  }

  const KnownCells known = ProjectKnownCells(belief);
  const CellId eye = belief.eye_phase().eye;
  std::optional<CellId> pick;
  bool pick_relevant = false;
  for (CellId id = 0; id < kNumCells; ++id) {
    if (known[id] != CellKnowledge::kUnknown) continue;
    // (best cell, content) pairs seen; relevant if two differ in both.
    std::array<std::array<bool, 3>, kNumCells> seen{};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      seen[best[i]][static_cast<int>(candidates[i][id])] = true;
    }
    bool relevant = false;
    for (int b1 = 0; b1 < kNumCells && !relevant; ++b1) {
      for (int b2 = b1 + 1; b2 < kNumCells && !relevant; ++b2) {
        for (int c1 = 0; c1 < 3 && !relevant; ++c1) {
          for (int c2 = 0; c2 < 3; ++c2) {
            if (c1 != c2 && seen[b1][c1] && seen[b2][c2]) {
              relevant = true;
              break;
            }
          }
        }
      }
    }
    const bool closer = !pick || Distance(eye, id) < Distance(eye, *pick);
    if ((relevant && !pick_relevant) || (relevant == pick_relevant && closer)) {
      pick = id;
      pick_relevant = relevant;
    }
  }
  if (!pick) throw ModelContradiction("candidates differ but no cell is unknown");
  return {MacroKind::kObserveCell, *pick};
}

}  // namespace lampworld
