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

#include "lampworld/trace.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lampworld {

using ordered_json = nlohmann::ordered_json;

void Append(Trace& trace, const StepRecord& record) {
  const auto expected = static_cast<std::int64_t>(trace.records.size());
  if (record.t != expected) {
    throw TraceError("record index " + std::to_string(record.t) +
                         " does not follow " + std::to_string(expected - 1),
                     0);
  }
  trace.records.push_back(record);
}

std::int64_t Prev(std::int64_t t) {
  if (t < 1) throw std::out_of_range("prev() is undefined at moment 0");
  return t - 1;
}

ReplayVerdict Replay(const Trace& trace) {
  WorldState state = InitialState(trace.seed);
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const StepRecord& record = trace.records[i];
    if (record.t != static_cast<std::int64_t>(i)) {
      return {false, static_cast<std::int64_t>(i)};
    }
    StepResult result = Step(state, record.move);
    if (!(result.lamps == record.lamps)) return {false, record.t};
    state = result.state;
  }
  return {};
}

std::string SerializeHeader(const Trace& trace) {
  ordered_json header;
  header["world"] = trace.world_id;
  header["seed"] = trace.seed;
  return header.dump();
}

std::string SerializeRecord(const StepRecord& record) {
  ordered_json line;
  line["t"] = record.t;
  line["move"] = MoveCode(record.move);
  line["lamps"] = record.lamps.Bits();
  return line.dump();
}

std::string SerializeTrace(const Trace& trace) {
  std::string out = SerializeHeader(trace);
  out.push_back('\n');
  for (const StepRecord& record : trace.records) {
    out += SerializeRecord(record);
    out.push_back('\n');
  }
  return out;
}

namespace {

ordered_json ParseObject(std::string_view line, std::int64_t line_number) {
  ordered_json parsed = ordered_json::parse(line, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw TraceError("line " + std::to_string(line_number) + ": not a JSON object",
                     line_number);
  }
  return parsed;
}

[[noreturn]] void Malformed(std::int64_t line_number, const std::string& what) {
  throw TraceError("line " + std::to_string(line_number) + ": " + what,
                   line_number);
}

}  // namespace

StepRecord ParseRecord(std::string_view line, std::int64_t line_number) {
  ordered_json parsed = ParseObject(line, line_number);
  if (parsed.size() != 3 || !parsed.contains("t") || !parsed.contains("move") ||
      !parsed.contains("lamps")) {
    Malformed(line_number, "expected keys t, move, lamps");
  }
  const auto& t = parsed["t"];
  const auto& move = parsed["move"];
  const auto& lamps = parsed["lamps"];
  if (!t.is_number_integer() || t.get<std::int64_t>() < 0) {
    Malformed(line_number, "t must be a non-negative integer");
  }
  if (!move.is_number_integer()) Malformed(line_number, "move must be an integer");
  auto code = MoveFromCode(move.get<int>());
  if (!code) Malformed(line_number, "move out of range 0..7");
  if (!lamps.is_array() || lamps.size() != kNumLamps) {
    Malformed(line_number, "lamps must be an array of five bits");
  }
  std::array<int, kNumLamps> bits{};
  for (int i = 0; i < kNumLamps; ++i) {
    if (!lamps[i].is_number_integer()) Malformed(line_number, "lamp bit not 0/1");
    bits[i] = lamps[i].get<int>();
    if (bits[i] != 0 && bits[i] != 1) Malformed(line_number, "lamp bit not 0/1");
  }
  return {t.get<std::int64_t>(), *code, LampView::FromBits(bits)};
}

Trace ParseTrace(std::string_view text) {
  Trace trace;
  std::int64_t line_number = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.empty()) continue;
    if (!have_header) {
      ordered_json header = ParseObject(line, line_number);
      if (!header.contains("world") || !header.contains("seed") ||
          !header["world"].is_number_integer() ||
          !header["seed"].is_number_unsigned()) {
        Malformed(line_number, "expected header {\"world\":W,\"seed\":S}");
      }
      trace.world_id = header["world"].get<int>();
      if (trace.world_id != 1 && trace.world_id != 2) {
        Malformed(line_number, "world must be 1 or 2");
      }
      trace.seed = header["seed"].get<std::uint64_t>();
      have_header = true;
      continue;
    }
    StepRecord record = ParseRecord(line, line_number);
    if (record.t != static_cast<std::int64_t>(trace.records.size())) {
      Malformed(line_number, "step index " + std::to_string(record.t) +
                                 " out of sequence");
    }
    trace.records.push_back(record);
  }
  if (!have_header) throw TraceError("missing trace header", 1);
  return trace;
}

void WriteTraceFile(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceError("cannot open " + path + " for writing", 0);
  out << SerializeTrace(trace);
}

Trace ReadTraceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open " + path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseTrace(buffer.str());
}

Recorder::Recorder(std::uint64_t seed, int world_id)
    : state_(InitialState(seed)), lamps_(View(state_)) {
  trace_.world_id = world_id;
  trace_.seed = seed;
}

const StepRecord& Recorder::Step(Move move) {
  StepResult result = lampworld::Step(state_, move);
  state_ = result.state;
  lamps_ = result.lamps;
  Append(trace_, {static_cast<std::int64_t>(trace_.records.size()), move,
                  result.lamps});
  return trace_.records.back();
}

}  // namespace lampworld
