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


#ifndef LAMPWORLD_SERVICE_H_
#define LAMPWORLD_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lampworld/agent.h"
#include "lampworld/trace.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace lampworld {

enum class SessionMode { kHuman, kAgent };

// Error with the HTTP status it maps to.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct SessionSpec {
  int world_id = 2;
  std::uint64_t seed = 0;
  SessionMode mode = SessionMode::kHuman;
  std::int64_t explore_steps = 20000;
};

struct SessionInfo {
  std::string id;
  SessionSpec spec;
  LampView lamps;  // lamps before the first step
};

class Session;

// Owns every live session. Steps of one session are serialized; distinct
// sessions step concurrently.
class SessionManager {
 public:
  SessionManager();
  ~SessionManager();

  SessionInfo Create(const SessionSpec& spec);

  // One human move.
  StepRecord Step(const std::string& id, int move_code);
  // Lets the agent of an agent session take `count` steps.
  std::vector<StepRecord> AgentSteps(const std::string& id, std::int64_t count);

  nlohmann::ordered_json Model(const std::string& id);
  std::string TraceJsonl(const std::string& id);
  SessionSpec Spec(const std::string& id);
  // World 1 only: the full observation after the latest step.
  FullObservation Observation(const std::string& id);

  // Records with t >= from. Waits up to `wait` for at least one when none
  // are available yet.
  std::vector<StepRecord> RecordsFrom(const std::string& id, std::int64_t from,
                                      std::chrono::milliseconds wait);

 private:
  std::shared_ptr<Session> Find(const std::string& id);

  std::mutex mutex_;
  std::uint64_t next_ = 1;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

nlohmann::ordered_json RecordToJson(const StepRecord& record);
nlohmann::ordered_json ObservationToJson(const FullObservation& observation);

// Installs the HTTP routes on `server`:
//   POST /sessions                {"world","seed","mode"[,"explore_steps"]}
//   POST /sessions/{id}/steps     human {"move"}; agent {"count"}
//   GET  /sessions/{id}/model     agent sessions only
//   GET  /sessions/{id}/trace     JSONL
//   GET  /sessions/{id}/events    server-sent StepRecords; ?from=k, ?follow=0
void InstallRoutes(httplib::Server& server, SessionManager& sessions);

}  // namespace lampworld

#endif  // LAMPWORLD_SERVICE_H_
