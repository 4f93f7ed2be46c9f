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

#ifndef LAMPWORLD_TRACE_H_
#define LAMPWORLD_TRACE_H_

// Step traces: what the agent did and what it saw, plus the seed needed to
// reproduce the hidden side. On disk a trace is JSON lines:
//
//   {"world":2,"seed":42}
//   {"t":0,"move":1,"lamps":[0,0,0,0,0]}
//   ...
//
// Serialization is canonical, so parse followed by serialize is
// byte-identical.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lampworld/world.h"

namespace lampworld {

struct StepRecord {
  std::int64_t t = 0;
  Move move = Move::kLeft;
  LampView lamps;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Trace {
  int world_id = 2;
  std::uint64_t seed = 0;
  std::vector<StepRecord> records;

  friend bool operator==(const Trace&, const Trace&) = default;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(const std::string& what, std::int64_t line)
      : std::runtime_error(what), line_(line) {}
  // 1-based line of a parse failure, or 0 when not tied to a line.
  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

// Appends a record; record.t must equal the current length.
void Append(Trace& trace, const StepRecord& record);

// Previous moment; t must be at least 1.
std::int64_t Prev(std::int64_t t);

struct ReplayVerdict {
  bool consistent = true;
  std::optional<std::int64_t> divergent_t;
};

// Re-simulates the trace's moves from InitialState(seed) and compares lamps.
ReplayVerdict Replay(const Trace& trace);

std::string SerializeHeader(const Trace& trace);
std::string SerializeRecord(const StepRecord& record);
std::string SerializeTrace(const Trace& trace);

StepRecord ParseRecord(std::string_view line, std::int64_t line_number = 0);
Trace ParseTrace(std::string_view text);

void WriteTraceFile(const Trace& trace, const std::string& path);
Trace ReadTraceFile(const std::string& path);

// Drives a world and records every step. Holds the hidden state, so only
// tests, the CLI and the session service touch it directly.
class Recorder {
 public:
  explicit Recorder(std::uint64_t seed, int world_id = 2);

  const StepRecord& Step(Move move);

  const WorldState& state() const { return state_; }
  const Trace& trace() const { return trace_; }
  LampView lamps() const { return lamps_; }

 private:
  WorldState state_;
  Trace trace_;
  LampView lamps_;
};

}  // namespace lampworld

#endif  // LAMPWORLD_TRACE_H_
