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

#include <cstdio>
#include <filesystem>

#include "gtest/gtest.h"
#include "support/oracles.h"

namespace lampworld {
namespace {

TEST(TraceTest, AppendChecksTheIndex) {
  Trace trace;
  Append(trace, {0, Move::kRight, {}});
  EXPECT_EQ(trace.records.size(), 1u);
  EXPECT_THROW(Append(trace, {2, Move::kRight, {}}), TraceError);
  EXPECT_EQ(trace.records.size(), 1u);
}

TEST(TraceTest, PrevIsThePredecessor) {
  EXPECT_EQ(Prev(1), 0);
  EXPECT_EQ(Prev(100), 99);
  EXPECT_THROW(Prev(0), std::out_of_range);
}

TEST(TraceTest, RecordFormat) {
  StepRecord record{3, Move::kPutCross, {}};
  record.lamps.cross = true;
  record.lamps.victory = true;
  EXPECT_EQ(SerializeRecord(record), R"({"t":3,"move":4,"lamps":[1,0,1,0,0]})");
  EXPECT_EQ(ParseRecord(SerializeRecord(record)), record);
  Trace trace;
  trace.seed = 42;
  EXPECT_EQ(SerializeHeader(trace), R"({"world":2,"seed":42})");
}

TEST(TraceTest, MalformedLinesReportTheirLineNumber) {
  const std::string text =
      "{\"world\":2,\"seed\":1}\n"
      "{\"t\":0,\"move\":1,\"lamps\":[0,0,0,0,0]}\n"
      "{\"t\":1,\"move\":9,\"lamps\":[0,0,0,0,0]}\n";
  try {
    ParseTrace(text);
    FAIL() << "expected a parse error";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(ParseTrace("{\"world\":3,\"seed\":1}\n"), TraceError);
  EXPECT_THROW(ParseRecord(R"({"t":0,"move":1,"lamps":[0,0,0,0]})"), TraceError);
  EXPECT_THROW(ParseRecord(R"({"t":0,"move":1,"lamps":[0,2,0,0,0]})"), TraceError);
  EXPECT_THROW(ParseRecord("not json"), TraceError);
}

TEST(TraceTest, RecordedRunReplaysConsistently) {
  const Trace trace = testing::RandomTrace(5, 2000);
  const ReplayVerdict verdict = Replay(trace);
  EXPECT_TRUE(verdict.consistent);
  EXPECT_FALSE(verdict.divergent_t.has_value());
}

TEST(TraceTest, FlippedLampIsReportedAtItsStep) {
  Trace trace = testing::RandomTrace(5, 500);
  trace.records[123].lamps.bad_move = !trace.records[123].lamps.bad_move;
  const ReplayVerdict verdict = Replay(trace);
  EXPECT_FALSE(verdict.consistent);
  EXPECT_EQ(verdict.divergent_t, 123);
}

// With another seed only Tom's choices differ, so the first divergence is
// at or after the first successful PutCross, and exactly there whenever the
// differing O is already visible at that step.
TEST(TraceTest, WrongSeedDivergesNoEarlierThanTomsFirstReply) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Trace trace = testing::RandomTrace(seed, 3000);
    std::optional<std::int64_t> first_reply;
    for (const StepRecord& record : trace.records) {
      if (record.move == Move::kPutCross && !record.lamps.bad_move) {
        first_reply = record.t;
        break;
      }
    }
    ASSERT_TRUE(first_reply.has_value());
    trace.seed = seed + 1000;
    const ReplayVerdict verdict = Replay(trace);
    if (verdict.consistent) continue;
    EXPECT_GE(*verdict.divergent_t, *first_reply);
    // Independent check: the first lamp difference between the two worlds.
    const auto original = testing::SimulateTrace(seed, trace.records);
    const auto other = testing::SimulateTrace(seed + 1000, trace.records);
    std::optional<std::int64_t> first_difference;
    for (const StepRecord& record : trace.records) {
      WorldState a = original.states[record.t];
      WorldState b = other.states[record.t];
      if (Step(a, record.move).lamps != Step(b, record.move).lamps) {
        first_difference = record.t;
        break;
      }
    }
    EXPECT_EQ(verdict.divergent_t, first_difference);
  }
}

TEST(TraceTest, SerializeParseSerializeIsByteIdentical) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Trace trace = testing::RandomTrace(seed, 1000);
    const std::string text = SerializeTrace(trace);
    const Trace parsed = ParseTrace(text);
    ASSERT_EQ(parsed, trace);
    ASSERT_EQ(SerializeTrace(parsed), text);
    ASSERT_TRUE(Replay(parsed).consistent);
  }
}

TEST(TraceTest, FileRoundTrip) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "lampworld_trace_test.jsonl").string();
  const Trace trace = testing::RandomTrace(8, 300);
  WriteTraceFile(trace, path);
  EXPECT_EQ(ReadTraceFile(path), trace);
  std::remove(path.c_str());
  EXPECT_THROW(ReadTraceFile(path), TraceError);
}

TEST(TraceTest, HundredThousandAppendsStayReplayValid) {
  Recorder recorder(77);
  SplitMix64 chooser(78);
  for (int i = 0; i < 100000; ++i) recorder.Step(static_cast<Move>(chooser.Uniform(kNumMoves)));
  EXPECT_EQ(recorder.trace().records.size(), 100000u);
  EXPECT_TRUE(Replay(recorder.trace()).consistent);
}

}  // namespace
}  // namespace lampworld
