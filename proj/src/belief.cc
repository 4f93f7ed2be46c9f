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
#include <functional>

namespace lampworld {
namespace {

bool OwnsLine(const Board& board, const std::vector<Line>& lines, Cell side) {
  return std::any_of(lines.begin(), lines.end(), [&](const Line& line) {
    return board[line[0]] == side && board[line[1]] == side && board[line[2]] == side;
  });
}

bool FlashMatches(Outcome outcome, const LampView& lamps) {
  switch (outcome) {
    case Outcome::kNone:
      return !lamps.victory && !lamps.loss;
    case Outcome::kVictory:
      return lamps.victory && !lamps.loss;
    case Outcome::kLoss:
      return lamps.loss && !lamps.victory;
    case Outcome::kDraw:
      return lamps.victory && lamps.loss;
  }
  return false;
}

Cell SeenCellValue(const LampView& lamps) {
  if (lamps.cross) return Cell::kCross;
  if (lamps.o) return Cell::kO;
  return Cell::kEmpty;
}

void BranchTomReplies(const Board& placed, std::vector<Board>& out,
                      const std::function<bool(const Board&)>& keep) {
  for (CellId id = 0; id < kNumCells; ++id) {
    if (placed[id] != Cell::kEmpty) continue;
    Board reply = placed;
    reply[id] = Cell::kO;
    if (keep(reply)) out.push_back(reply);
  }
}

}  // namespace

std::string_view CellKnowledgeName(CellKnowledge knowledge) {
  switch (knowledge) {
    case CellKnowledge::kEmpty:
      return "Empty";
    case CellKnowledge::kCross:
      return "Cross";
    case CellKnowledge::kO:
      return "O";
    case CellKnowledge::kUnknown:
      return "Unknown";
  }
  return "?";
}

Outcome WinningSets::Judge(const Board& board) const {
  if (OwnsLine(board, cross, Cell::kCross)) return Outcome::kVictory;
  if (OwnsLine(board, o, Cell::kO)) return Outcome::kLoss;
  return board.Full() ? Outcome::kDraw : Outcome::kNone;
}

bool BeliefState::Contains(const Board& board) const {
  return std::binary_search(candidates_.begin(), candidates_.end(), board,
                            [](const Board& a, const Board& b) { return a.Code() < b.Code(); });
}

BeliefState BeliefInit(const EyePhase& eye_phase) {
  BeliefState belief;
  belief.candidates_.push_back(Board{});
  belief.eye_phase_ = eye_phase;
  return belief;
}

BeliefState BeliefStep(const BeliefState& belief, Move move,
                       const LampView& lamps, const EyePhase& after,
                       const WinningSets* winning) {
  const bool judge = winning != nullptr && winning->known();
  const CellId at = belief.eye_phase_.eye;
  std::vector<Board> next;
  if (lamps.bad_move) {
    next = belief.candidates_;
  } else if (move == Move::kNewGame) {
    next.push_back(Board{});
  } else if (move == Move::kPutCross) {
    const bool flash = lamps.victory || lamps.loss;
    for (const Board& candidate : belief.candidates_) {
      if (candidate[at] != Cell::kEmpty) continue;
      Board placed = candidate;
      placed[at] = Cell::kCross;
      if (judge) {
        const Outcome after_cross = winning->Judge(placed);
        if (after_cross != Outcome::kNone) {
          if (FlashMatches(after_cross, lamps)) next.push_back(placed);
          continue;
        }
        BranchTomReplies(placed, next, [&](const Board& reply) {
          return FlashMatches(winning->Judge(reply), lamps);
        });
      } else {
        if (flash) next.push_back(placed);
        BranchTomReplies(placed, next, [](const Board&) { return true; });
      }
    }
  } else {
    next = belief.candidates_;
  }

  const Cell seen = SeenCellValue(lamps);
  std::erase_if(next, [&](const Board& b) { return b[after.eye] != seen; });
  if (next.empty()) {
    throw ModelContradiction("no board is consistent with " +
                             std::string(MoveName(move)) + " and the observed lamps");
  }
  std::sort(next.begin(), next.end(),
            [](const Board& a, const Board& b) { return a.Code() < b.Code(); });
  next.erase(std::unique(next.begin(), next.end()), next.end());

  BeliefState out;
  out.candidates_ = std::move(next);
  out.eye_phase_ = after;
  return out;
}

KnownCells ProjectKnownCells(const BeliefState& belief) {
  KnownCells known{};
  const auto candidates = belief.candidates();
  for (CellId id = 0; id < kNumCells; ++id) {
    const Cell first = candidates.front()[id];
    const bool agree = std::all_of(candidates.begin(), candidates.end(),
                                   [&](const Board& b) { return b[id] == first; });
    known[id] = agree ? static_cast<CellKnowledge>(first) : CellKnowledge::kUnknown;
  }
  return known;
}

nlohmann::ordered_json BeliefToJson(const BeliefState& belief) {
  nlohmann::ordered_json out;
  out["candidates"] = belief.size();
  out["eye"] = belief.eye_phase().eye;
  out["over"] = belief.eye_phase().over;
  auto cells = nlohmann::ordered_json::array();
  for (CellKnowledge k : ProjectKnownCells(belief)) cells.push_back(CellKnowledgeName(k));
  out["known_cells"] = cells;
  return out;
}

}  // namespace lampworld
