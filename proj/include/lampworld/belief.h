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

#ifndef LAMPWORLD_BELIEF_H_
#define LAMPWORLD_BELIEF_H_

// Second-level tracking of the hidden board. Each cell follows the fixed
// template Empty -> Cross (own PutCross at that cell), Empty -> O (Tom's
// reply), anything -> Empty (NewGame after the set is over). Instead of nine
// independent nondeterministic cell machines we keep the exact set of
// boards consistent with everything seen since the last NewGame, which
// preserves the "exactly one O per reply" correlation. Cell coordinates
// come from the first-level column and row automata.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lampworld/world.h"

namespace lampworld {

// 8 * 7 * 6 * 5: four unobserved Tom replies.
inline constexpr std::size_t kMaxBeliefCandidates = 1680;

enum class CellKnowledge : std::uint8_t { kEmpty = 0, kCross, kO, kUnknown };
std::string_view CellKnowledgeName(CellKnowledge knowledge);

using KnownCells = std::array<CellKnowledge, kNumCells>;

// Where the eye is and whether the set is over, as reported by the
// first-level automata.
struct EyePhase {
  CellId eye = 0;
  bool over = false;

  friend bool operator==(const EyePhase&, const EyePhase&) = default;
};

// Winning 3-cell sets per side, once learned. Empty means unknown.
struct WinningSets {
  std::vector<Line> cross;
  std::vector<Line> o;

  bool known() const { return !cross.empty() && !o.empty(); }
  // Outcome a final board implies under these sets; kNone if undecided.
  Outcome Judge(const Board& board) const;

  friend bool operator==(const WinningSets&, const WinningSets&) = default;
};

class ModelContradiction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BeliefState {
 public:
  BeliefState() = default;

  // Candidates sorted by board code, no duplicates.
  std::span<const Board> candidates() const { return candidates_; }
  std::size_t size() const { return candidates_.size(); }
  const EyePhase& eye_phase() const { return eye_phase_; }

  bool Contains(const Board& board) const;

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  friend BeliefState BeliefInit(const EyePhase&);
  friend BeliefState BeliefStep(const BeliefState&, Move, const LampView&,
                                const EyePhase&, const WinningSets*);

  std::vector<Board> candidates_;
  EyePhase eye_phase_;
};

// Single all-empty candidate.
BeliefState BeliefInit(const EyePhase& eye_phase = {});

// Advances the belief through one observed step. `before` is taken from the
// belief itself; `after` is the first-level reading after the step. With
// `winning` known, set endings are also checked against the final board;
// without it, a flash allows Tom to have replied or not.
// Throws ModelContradiction if no candidate survives.
BeliefState BeliefStep(const BeliefState& belief, Move move,
                       const LampView& lamps, const EyePhase& after,
                       const WinningSets* winning = nullptr);

KnownCells ProjectKnownCells(const BeliefState& belief);

nlohmann::ordered_json BeliefToJson(const BeliefState& belief);

}  // namespace lampworld

#endif  // LAMPWORLD_BELIEF_H_
