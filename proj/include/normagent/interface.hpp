// Copyright 2026 The norm-agent Authors.
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

// Front ends for the dialogue agent: sessions with transcripts, a terminal
// REPL, a script runner and a JSON-over-HTTP service.
//
// HTTP endpoints:
//
//   POST   /sessions                   -> 201 {"id", "state"}
//   POST   /sessions/{id}/utterances   {"text"} -> {"reply", "state"}
//   GET    /sessions/{id}              -> {"id", "state", "transcript"}
//   DELETE /sessions/{id}              -> 204
//
// Unknown sessions answer 404 and malformed bodies 400, both with
// {"error": message}.

#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "normagent/dialogue.hpp"
#include "normagent/world.hpp"

namespace normagent {

struct TranscriptEntry {
  std::string speaker;  // "human" or "agent"
  std::string text;
  std::string timestamp;  // ISO 8601, UTC
};

std::string utc_timestamp();

// JSON-lines transcript log shared by all sessions.
class TranscriptLog {
 public:
  explicit TranscriptLog(const std::filesystem::path& path);

  void append(const std::string& session_id, const TranscriptEntry& entry);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

// Machine-readable view of a dialogue state: VEL norms, `action(object)`
// trace, violated instances and whether an alternative is active.
nlohmann::json state_to_json(const DialogueState& st);

// Plain-text version of the same view.
std::string dump_state(const DialogueState& st);

// A dialogue state plus its transcript. All access is serialized.
class Session {
 public:
  Session(std::string id, std::shared_ptr<const DomainSpec> domain,
          TranscriptLog* log = nullptr);

  const std::string& id() const { return id_; }

  std::string converse(std::string_view utterance);

  DialogueState state() const;
  std::vector<TranscriptEntry> transcript() const;
  nlohmann::json state_json() const;
  nlohmann::json record_json() const;

 private:
  void record(std::string speaker, std::string text);

  const std::string id_;
  TranscriptLog* log_;
  mutable std::mutex mu_;
  DialogueState state_;
  std::vector<TranscriptEntry> transcript_;
};

class SessionStore {
 public:
  explicit SessionStore(std::shared_ptr<const DomainSpec> domain,
                        TranscriptLog* log = nullptr);

  std::shared_ptr<Session> create();
  std::shared_ptr<Session> find(const std::string& id) const;
  bool erase(const std::string& id);

 private:
  std::shared_ptr<const DomainSpec> domain_;
  TranscriptLog* log_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

// Interactive loop. Lines starting with '/' are commands: /quit, /state,
// /transcript. Returns the process exit status.
int run_repl(std::shared_ptr<const DomainSpec> domain, std::istream& in,
             std::ostream& out, TranscriptLog* log = nullptr,
             bool prompt = false);

// Plays a script: one human utterance per line, optionally followed by
// "= expected reply" lines; '#' starts a comment line. Prints the
// transcript; on the first mismatch prints a diff and returns 1.
int run_script(std::shared_ptr<const DomainSpec> domain, std::istream& script,
               std::ostream& out, TranscriptLog* log = nullptr);

class Service {
 public:
  explicit Service(std::shared_ptr<const DomainSpec> domain,
                   TranscriptLog* log = nullptr);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to host:port (port 0 picks a free one); returns the bound port or
  // -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires a successful bind().
  bool listen();
  // Blocks until listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace normagent
