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


#include "lampworld/service.h"

#include <condition_variable>
#include <utility>

#include "httplib.h"

namespace lampworld {

class Session {
 public:
  Session(std::string id, const SessionSpec& spec)
      : id_(std::move(id)), spec_(spec), recorder_(spec.seed, spec.world_id),
        lamps_(recorder_.lamps()) {
    if (spec.mode == SessionMode::kAgent) {
      AgentConfig config;
      config.seed = spec.seed;
      config.explore_steps = spec.explore_steps;
      agent_.emplace(config);
    }
  }

  const std::string& id() const { return id_; }
  const SessionSpec& spec() const { return spec_; }

  StepRecord Step(Move move) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (agent_) throw ServiceError(400, "agent sessions take {\"count\": n}, not moves");
    StepRecord record = recorder_.Step(move);
    lamps_ = record.lamps;
    changed_.notify_all();
    return record;
  }

  std::vector<StepRecord> AgentSteps(std::int64_t count) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!agent_) throw ServiceError(400, "human sessions take {\"move\": k}");
    if (failure_) throw ServiceError(409, "agent stopped: " + *failure_);
    std::vector<StepRecord> out;
    for (std::int64_t i = 0; i < count; ++i) {
      Move move;
      try {
        move = agent_->Act(lamps_);
      } catch (const AgentAbort& e) {
        failure_ = e.what();
        break;
      }
      out.push_back(recorder_.Step(move));
      lamps_ = out.back().lamps;
    }
    changed_.notify_all();
    if (out.empty() && failure_) throw ServiceError(409, "agent stopped: " + *failure_);
    return out;
  }

  nlohmann::ordered_json Model() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!agent_) throw ServiceError(403, "models are only served for agent sessions");
    nlohmann::ordered_json model = agent_->ModelJson();
    model["error"] = failure_ ? nlohmann::ordered_json(*failure_) : nullptr;
    return model;
  }

  std::string TraceJsonl() {
    std::lock_guard<std::mutex> lock(mutex_);
    return SerializeTrace(recorder_.trace());
  }

  FullObservation Observation() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (spec_.world_id != 1) throw ServiceError(403, "World 2 state is hidden");
    return World1View(recorder_.state());
  }

  std::vector<StepRecord> RecordsFrom(std::int64_t from, std::chrono::milliseconds wait) {
    std::unique_lock<std::mutex> lock(mutex_);
    const auto& records = recorder_.trace().records;
    const auto available = [&] { return static_cast<std::int64_t>(records.size()) > from; };
    if (!available()) changed_.wait_for(lock, wait, available);
    if (!available()) return {};
    return {records.begin() + from, records.end()};
  }

 private:
  const std::string id_;
  const SessionSpec spec_;
  std::mutex mutex_;
  std::condition_variable changed_;
  Recorder recorder_;
  LampView lamps_;
  std::optional<Agent> agent_;
  std::optional<std::string> failure_;
};

SessionManager::SessionManager() = default;
SessionManager::~SessionManager() = default;

SessionInfo SessionManager::Create(const SessionSpec& spec) {
  if (spec.world_id != 1 && spec.world_id != 2) {
    throw ServiceError(400, "world must be 1 or 2, got " + std::to_string(spec.world_id));
  }
  if (spec.explore_steps < 100) throw ServiceError(400, "explore_steps must be at least 100");
  std::lock_guard<std::mutex> lock(mutex_);
  SplitMix64 token(next_++);
  char id[20];
  std::snprintf(id, sizeof(id), "s%016llx", static_cast<unsigned long long>(token.Next()));
  auto session = std::make_shared<Session>(id, spec);
  sessions_[id] = session;
  return {id, spec, View(InitialState(spec.seed))};
}

std::shared_ptr<Session> SessionManager::Find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "no session " + id);
  return it->second;
}

StepRecord SessionManager::Step(const std::string& id, int move_code) {
  auto session = Find(id);
  const std::optional<Move> move = MoveFromCode(move_code);
  if (!move) throw ServiceError(400, "move must be in 0..7, got " + std::to_string(move_code));
  return session->Step(*move);
}

std::vector<StepRecord> SessionManager::AgentSteps(const std::string& id, std::int64_t count) {
  auto session = Find(id);
  if (count < 1 || count > 1000000) throw ServiceError(400, "count must be in 1..1000000");
  return session->AgentSteps(count);
}

nlohmann::ordered_json SessionManager::Model(const std::string& id) {
  return Find(id)->Model();
}

std::string SessionManager::TraceJsonl(const std::string& id) {
  return Find(id)->TraceJsonl();
}

SessionSpec SessionManager::Spec(const std::string& id) { return Find(id)->spec(); }

FullObservation SessionManager::Observation(const std::string& id) {
  return Find(id)->Observation();
}

std::vector<StepRecord> SessionManager::RecordsFrom(const std::string& id, std::int64_t from,
                                                    std::chrono::milliseconds wait) {
  return Find(id)->RecordsFrom(from, wait);
}

nlohmann::ordered_json RecordToJson(const StepRecord& record) {
  return nlohmann::ordered_json::parse(SerializeRecord(record));
}

nlohmann::ordered_json ObservationToJson(const FullObservation& observation) {
  return {{"board", observation.board.ToString()},
          {"eye", {observation.eye.col, observation.eye.row}},
          {"phase", observation.phase == Phase::kOver ? "over" : "playing"},
          {"last_outcome", OutcomeName(observation.last_outcome)}};
}

namespace {

using Json = nlohmann::ordered_json;

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs `handler`, mapping failures to JSON error responses.
template <typename Handler>
void Guarded(httplib::Response& res, Handler handler) {
  try {
    handler();
  } catch (const ServiceError& e) {
    Reply(res, e.status(), {{"error", e.what()}});
  } catch (const nlohmann::json::exception& e) {
    Reply(res, 400, {{"error", std::string("bad request body: ") + e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"error", e.what()}});
  }
}

Json ParseBody(const httplib::Request& req) {
  Json body = Json::parse(req.body.empty() ? "{}" : req.body);
  if (!body.is_object()) throw ServiceError(400, "request body must be a JSON object");
  return body;
}

std::int64_t IntField(const Json& body, const char* name, std::int64_t fallback,
                      bool required) {
  if (!body.contains(name)) {
    if (required) throw ServiceError(400, std::string("missing field ") + name);
    return fallback;
  }
  if (!body[name].is_number_integer()) {
    throw ServiceError(400, std::string(name) + " must be an integer");
  }
  return body[name].get<std::int64_t>();
}

}  // namespace

void InstallRoutes(httplib::Server& server, SessionManager& sessions) {
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const Json body = ParseBody(req);
      SessionSpec spec;
      spec.world_id = static_cast<int>(IntField(body, "world", 2, true));
      const std::int64_t seed = IntField(body, "seed", 0, false);
      if (seed < 0) throw ServiceError(400, "seed must be non-negative");
      spec.seed = static_cast<std::uint64_t>(seed);
      const std::string mode = body.value("mode", std::string("human"));
      if (mode == "human") {
        spec.mode = SessionMode::kHuman;
      } else if (mode == "agent") {
        spec.mode = SessionMode::kAgent;
      } else {
        throw ServiceError(400, "mode must be human or agent");
      }
      spec.explore_steps = IntField(body, "explore_steps", spec.explore_steps, false);
      const SessionInfo info = sessions.Create(spec);
      Json out = {{"id", info.id},
                  {"world", spec.world_id},
                  {"seed", spec.seed},
                  {"mode", mode},
                  {"lamps", info.lamps.Bits()}};
      if (spec.world_id == 1) out["observation"] = ObservationToJson(sessions.Observation(info.id));
      Reply(res, 201, out);
    });
  });

  server.Post(R"(/sessions/([^/]+)/steps)",
              [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = req.matches[1];
      const Json body = ParseBody(req);
      const SessionSpec spec = sessions.Spec(id);
      if (spec.mode == SessionMode::kHuman) {
        const std::int64_t move = IntField(body, "move", 0, true);
        if (move < 0 || move >= kNumMoves) {
          throw ServiceError(400, "move must be in 0..7, got " + std::to_string(move));
        }
        const StepRecord record = sessions.Step(id, static_cast<int>(move));
        Json out = {{"t", record.t}, {"lamps", record.lamps.Bits()}};
        if (spec.world_id == 1) out["observation"] = ObservationToJson(sessions.Observation(id));
        Reply(res, 200, out);
      } else {
        const std::int64_t count = IntField(body, "count", 1, false);
        Json records = Json::array();
        for (const StepRecord& record : sessions.AgentSteps(id, count)) {
          records.push_back(RecordToJson(record));
        }
        Reply(res, 200, {{"records", records}});
      }
    });
  });

  server.Get(R"(/sessions/([^/]+)/model)",
             [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, sessions.Model(req.matches[1])); });
  });

  server.Get(R"(/sessions/([^/]+)/trace)",
             [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      res.set_content(sessions.TraceJsonl(req.matches[1]), "application/x-ndjson");
    });
  });

  server.Get(R"(/sessions/([^/]+)/events)",
             [&](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = req.matches[1];
      sessions.Spec(id);  // 404 before the stream starts
      auto next = std::make_shared<std::int64_t>(0);
      if (req.has_param("from")) *next = std::stoll(req.get_param_value("from"));
      if (*next < 0) throw ServiceError(400, "from must be non-negative");
      const bool follow = req.get_param_value("follow") != "0";
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream", [&sessions, id, next, follow](std::size_t, httplib::DataSink& sink) {
            const auto records = sessions.RecordsFrom(
                id, *next, follow ? std::chrono::milliseconds(500) : std::chrono::milliseconds(0));
            for (const StepRecord& record : records) {
              const std::string event = "id: " + std::to_string(record.t) +
                                        "\ndata: " + SerializeRecord(record) + "\n\n";
              if (!sink.write(event.data(), event.size())) return false;
              *next = record.t + 1;
            }
            if (records.empty()) {
              if (!follow) {
                sink.done();
                return true;
              }
              static constexpr char kKeepAlive[] = ": keep-alive\n\n";
              return sink.write(kKeepAlive, sizeof(kKeepAlive) - 1);
            }
            return true;
          });
    });
  });
}

}  // namespace lampworld
