#include <csignal>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "cli_util.hpp"
#include "irisattn/experiment/http_api.hpp"

using namespace irisattn;

int main(int argc, char** argv) {
  CLI::App app{"Examiner session service"};
  std::string data_dir, listen = "127.0.0.1:8080", policy = "independent";
  experiment::SessionConfig cfg;
  bool no_balance = false;

  app.add_option("--data", data_dir, "Data root: pairs.json, events.jsonl, pairs/<id>/...")
      ->required()
      ->envname("IRISATTN_DATA")
      ->check(CLI::ExistingDirectory);
  app.add_option("--listen", listen, "host:port")->envname("IRISATTN_LISTEN")->capture_default_str();
  app.add_option("--k", cfg.default_k, "Default pairs per session")->envname("IRISATTN_K")->capture_default_str();
  app.add_option("--seed", cfg.default_seed, "Base seed; session n uses seed + n - 1 unless given")
      ->envname("IRISATTN_SEED")
      ->capture_default_str();
  app.add_option("--policy", policy, "Scheduling policy")
      ->check(CLI::IsMember({"independent", "disjoint"}))
      ->capture_default_str();
  app.add_flag("--no-balance", no_balance, "Do not balance genuine and impostor pairs");
  CLI11_PARSE(app, argc, argv);

  cfg.balanced = !no_balance;
  cfg.policy = policy == "disjoint" ? experiment::SchedulingPolicy::kDisjoint : experiment::SchedulingPolicy::kIndependent;

  return cli::run_guarded([&] {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw std::runtime_error("--listen must be host:port");
    const std::string host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));

    const std::filesystem::path root(data_dir);
    experiment::SessionStore sessions(experiment::parse_pair_pool(cli::read_file((root / "pairs.json").string())),
                                      root / "events.jsonl", cfg);
    experiment::ArtifactStore artifacts(root);

    httplib::Server server;
    experiment::register_routes(server, sessions, artifacts);
    std::cerr << "listening on " << host << ':' << port << " with " << sessions.all_states().size()
              << " sessions replayed\n";
    if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + listen);
  });
}
