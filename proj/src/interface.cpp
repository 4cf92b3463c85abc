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

#include "normagent/interface.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "httplib.h"
#include "normagent/nlg.hpp"

namespace normagent {

using nlohmann::json;

std::string utc_timestamp() {
  using namespace std::chrono;
  auto now = system_clock::now();
  std::time_t secs = system_clock::to_time_t(now);
  auto millis =
      duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3)
      << std::setfill('0') << millis << 'Z';
  return out.str();
}

TranscriptLog::TranscriptLog(const std::filesystem::path& path)
    : out_(path, std::ios::app) {
  if (!out_) throw std::runtime_error("cannot open log " + path.string());
}

void TranscriptLog::append(const std::string& session_id,
                           const TranscriptEntry& entry) {
  json line = {{"session", session_id},
               {"speaker", entry.speaker},
               {"text", entry.text},
               {"timestamp", entry.timestamp}};
  std::lock_guard lock(mu_);
  out_ << line.dump() << '\n';
  out_.flush();
}

namespace {

std::string english_or_vel(const Formula& f, const Lexicon& lex) {
  try {
    return realize_norm(f, Mood::kNormPresent, lex);
  } catch (const NlgError&) {
    return print_vel(f);
  }
}

const char* alt_kind_name(AltKind kind) {
  return kind == AltKind::kCounterfactual ? "counterfactual" : "hypothetical";
}

std::string binding_text(const Binding& b) {
  std::string out;
  for (const auto& [var, obj] : b.entries) {
    if (!out.empty()) out += ", ";
    out += var + "=" + obj;
  }
  return out;
}

}  // namespace

json state_to_json(const DialogueState& st) {
  const Lexicon& lex = st.domain->lexicon;
  json norms = json::array();
  json english = json::array();
  json ranks = json::array();
  for (const auto& n : st.norms.norms()) {
    norms.push_back(print_vel(n.formula));
    english.push_back(english_or_vel(n.formula, lex));
    ranks.push_back(n.rank);
  }
  json trace = json::array();
  for (const auto& a : st.actual.trace.actions) trace.push_back(to_string(a));
  json violations = json::array();
  for (const auto& entry : st.actual.report.entries) {
    for (const auto& [binding, verdict] : entry.violated) {
      json b = json::object();
      for (const auto& [var, obj] : binding.entries) b[var] = obj;
      std::string text;
      try {
        text = realize_instance(entry.norm.formula, binding,
                                Mood::kPastFactual, lex);
      } catch (const NlgError&) {
        text = print_vel(substitute(entry.norm.formula, binding));
      }
      violations.push_back(
          {{"norm", print_vel(entry.norm.formula)},
           {"binding", b},
           {"witness", verdict.witness ? json(*verdict.witness) : json()},
           {"english", text}});
    }
  }
  std::string behavior;
  try {
    behavior = realize_trace(st.actual.trace, Mood::kPastFactual, lex);
  } catch (const NlgError&) {
  }
  return {{"norms", norms},
          {"norms_english", english},
          {"ranks", ranks},
          {"trace", trace},
          {"behavior", behavior},
          {"violations", violations},
          {"alt_active", st.alt.has_value()},
          {"alt_kind", st.alt ? json(alt_kind_name(st.alt->kind)) : json()}};
}

std::string dump_state(const DialogueState& st) {
  std::ostringstream out;
  out << "norms:\n";
  for (const auto& n : st.norms.norms()) {
    out << "  [" << n.rank << "] " << print_vel(n.formula) << '\n';
  }
  out << "trace:";
  for (const auto& a : st.actual.trace.actions) out << ' ' << to_string(a);
  out << "\nviolations:\n";
  for (const auto& entry : st.actual.report.entries) {
    for (const auto& [binding, verdict] : entry.violated) {
      out << "  " << print_vel(entry.norm.formula);
      if (!binding.entries.empty()) out << " {" << binding_text(binding) << '}';
      if (verdict.witness) out << " @" << *verdict.witness;
      out << '\n';
    }
  }
  out << "alternative: " << (st.alt ? alt_kind_name(st.alt->kind) : "none")
      << '\n';
  return out.str();
}

Session::Session(std::string id, std::shared_ptr<const DomainSpec> domain,
                 TranscriptLog* log)
    : id_(std::move(id)), log_(log), state_(new_session(std::move(domain))) {}

std::string Session::converse(std::string_view utterance) {
  std::lock_guard lock(mu_);
  record("human", std::string(utterance));
  auto [next, reply] = respond(state_, utterance);
  state_ = std::move(next);
  record("agent", reply);
  return reply;
}

void Session::record(std::string speaker, std::string text) {
  TranscriptEntry e{std::move(speaker), std::move(text), utc_timestamp()};
  if (log_) log_->append(id_, e);
  transcript_.push_back(std::move(e));
}

DialogueState Session::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::vector<TranscriptEntry> Session::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

json Session::state_json() const {
  std::lock_guard lock(mu_);
  return state_to_json(state_);
}

json Session::record_json() const {
  std::lock_guard lock(mu_);
  json transcript = json::array();
  for (const auto& e : transcript_) {
    transcript.push_back(
        {{"speaker", e.speaker}, {"text", e.text}, {"timestamp", e.timestamp}});
  }
  return {{"id", id_},
          {"state", state_to_json(state_)},
          {"transcript", transcript}};
}

SessionStore::SessionStore(std::shared_ptr<const DomainSpec> domain,
                           TranscriptLog* log)
    : domain_(std::move(domain)), log_(log) {}

namespace {

std::string random_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng()
      << std::setw(16) << rng();
  return out.str();
}

}  // namespace

std::shared_ptr<Session> SessionStore::create() {
  // Planning happens outside the store lock.
  std::string id;
  {
    std::lock_guard lock(mu_);
    do {
      id = random_id();
    } while (sessions_.contains(id));
    sessions_.emplace(id, nullptr);
  }
  std::shared_ptr<Session> session;
  try {
    session = std::make_shared<Session>(id, domain_, log_);
  } catch (...) {
    std::lock_guard lock(mu_);
    sessions_.erase(id);
    throw;
  }
  std::lock_guard lock(mu_);
  sessions_[id] = session;
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end() || !it->second) return false;
  sessions_.erase(it);
  return true;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int run_repl(std::shared_ptr<const DomainSpec> domain, std::istream& in,
             std::ostream& out, TranscriptLog* log, bool prompt) {
  Session session(random_id(), std::move(domain), log);
  std::string line;
  for (;;) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    line = trim(line);
    if (line.empty()) continue;
    if (line == "/quit") break;
    if (line == "/state") {
      out << dump_state(session.state());
      continue;
    }
    if (line == "/transcript") {
      for (const auto& e : session.transcript()) {
        out << (e.speaker == "human" ? "Human: " : "Agent: ") << e.text
            << '\n';
      }
      continue;
    }
    if (line.front() == '/') {
      out << "unknown command " << line << '\n';
      continue;
    }
    out << session.converse(line) << '\n';
  }
  return 0;
}

int run_script(std::shared_ptr<const DomainSpec> domain, std::istream& script,
               std::ostream& out, TranscriptLog* log) {
  Session session(random_id(), std::move(domain), log);
  std::string line;
  std::string last_reply;
  bool have_reply = false;
  int number = 0;
  while (std::getline(script, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '=') {
      std::string expected = trim(line.substr(1));
      if (!have_reply) {
        out << "line " << number << ": expectation without an utterance\n";
        return 1;
      }
      if (expected != last_reply) {
        out << "mismatch at line " << number << ":\n"
            << "  expected: " << expected << '\n'
            << "  actual:   " << last_reply << '\n';
        return 1;
      }
      continue;
    }
    last_reply = session.converse(line);
    have_reply = true;
    out << "Human: " << line << '\n' << "Agent: " << last_reply << '\n';
  }
  return 0;
}

struct Service::Impl {
  Impl(std::shared_ptr<const DomainSpec> domain, TranscriptLog* log)
      : store(std::move(domain), log) {}

  SessionStore store;
  httplib::Server server;
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& what) {
  send_json(res, status, {{"error", what}});
}

}  // namespace

Service::Service(std::shared_ptr<const DomainSpec> domain, TranscriptLog* log)
    : impl_(std::make_unique<Impl>(std::move(domain), log)) {
  auto& server = impl_->server;
  SessionStore& store = impl_->store;

  server.Post("/sessions", [&store](const httplib::Request&,
                                    httplib::Response& res) {
    try {
      auto session = store.create();
      send_json(res, 201,
                {{"id", session->id()}, {"state", session->state_json()}});
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  });

  server.Post(R"(/sessions/([0-9a-f]+)/utterances)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                auto session = store.find(req.matches[1]);
                if (!session) return send_error(res, 404, "unknown session");
                json body = json::parse(req.body, nullptr, false);
                if (body.is_discarded() || !body.is_object() ||
                    !body.contains("text") || !body["text"].is_string()) {
                  return send_error(res, 400,
                                    "expected a JSON object with a string "
                                    "\"text\" field");
                }
                std::string reply =
                    session->converse(body["text"].get<std::string>());
                send_json(res, 200,
                          {{"reply", reply}, {"state", session->state_json()}});
              });

  server.Get(R"(/sessions/([0-9a-f]+))",
             [&store](const httplib::Request& req, httplib::Response& res) {
               auto session = store.find(req.matches[1]);
               if (!session) return send_error(res, 404, "unknown session");
               send_json(res, 200, session->record_json());
             });

  server.Delete(R"(/sessions/([0-9a-f]+))",
                [&store](const httplib::Request& req, httplib::Response& res) {
                  if (!store.erase(req.matches[1])) {
                    return send_error(res, 404, "unknown session");
                  }
                  res.status = 204;
                });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not found" : "error");
    }
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

void Service::stop() { impl_->server.stop(); }

}  // namespace normagent
