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

// norm-agent: converse with a norm-following planning agent.
//
//   norm-agent repl --domain domains/shopping.domain
//   norm-agent run-script --domain domains/shopping.domain scripts/fig1.script
//   norm-agent serve --domain domains/shopping.domain --bind 127.0.0.1:8080

#include <unistd.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "normagent/interface.hpp"
#include "normagent/planner.hpp"

namespace {

normagent::Service* g_service = nullptr;

void handle_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialogue agent that plans under prioritized norms"};
  app.require_subcommand(1);

  std::string domain_path;
  std::optional<int> horizon;
  std::string log_path;
  std::string bind = "127.0.0.1:8080";
  std::string script_path;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--domain", domain_path, "Domain file")->required();
    cmd->add_option("--horizon", horizon, "Override the planning horizon")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--log", log_path, "Append the transcript as JSON lines");
  };
  CLI::App* repl = app.add_subcommand("repl", "Interactive session");
  common(repl);
  CLI::App* serve = app.add_subcommand("serve", "JSON-over-HTTP service");
  common(serve);
  serve->add_option("--bind", bind, "ADDR:PORT to listen on");
  CLI::App* script = app.add_subcommand(
      "run-script", "Play a script, checking '= expected' reply lines");
  common(script);
  script->add_option("script", script_path, "Script file")->required();

  CLI11_PARSE(app, argc, argv);

  std::shared_ptr<const normagent::DomainSpec> domain;
  try {
    auto d = normagent::load_domain_file(domain_path);
    if (horizon) d.horizon = *horizon;
    domain = std::make_shared<const normagent::DomainSpec>(std::move(d));
  } catch (const std::exception& e) {
    std::cerr << "norm-agent: " << e.what() << '\n';
    return 1;
  }

  std::unique_ptr<normagent::TranscriptLog> log;
  try {
    if (!log_path.empty()) {
      log = std::make_unique<normagent::TranscriptLog>(log_path);
    }

    if (*repl) {
      return normagent::run_repl(domain, std::cin, std::cout, log.get(),
                                 isatty(STDIN_FILENO) != 0);
    }

    if (*script) {
      std::ifstream in(script_path);
      if (!in) {
        std::cerr << "norm-agent: cannot read " << script_path << '\n';
        return 1;
      }
      return normagent::run_script(domain, in, std::cout, log.get());
    }

    auto colon = bind.rfind(':');
    if (colon == std::string::npos) {
      std::cerr << "norm-agent: --bind expects ADDR:PORT\n";
      return 1;
    }
    std::string host = bind.substr(0, colon);
    int port = std::stoi(bind.substr(colon + 1));
    normagent::Service service(domain, log.get());
    int bound = service.bind(host, port);
    if (bound < 0) {
      std::cerr << "norm-agent: cannot bind " << bind << '\n';
      return 1;
    }
    std::cerr << "listening on " << host << ':' << bound << '\n';
    g_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    bool ok = service.listen();
    g_service = nullptr;
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "norm-agent: " << e.what() << '\n';
    return 1;
  }
}
