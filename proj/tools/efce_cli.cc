// Copyright 2026 The efce-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "efce/builtin_games.hpp"
#include "efce/dynamics.hpp"
#include "efce/efgt.hpp"
#include "efce/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kInvalid = 3;
constexpr int kNumerical = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GameSource {
  std::string path;
  std::string builtin;
  std::optional<std::uint64_t> builtin_seed;

  efce::GameTree load() const {
    if (!path.empty()) return efce::load_game(path);
    if (builtin.empty()) throw UsageError("one of --game or --builtin is required");
    try {
      return efce::builtin_game(builtin, builtin_seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void add_source(CLI::App* cmd, GameSource& src) {
  auto* game = cmd->add_option("--game", src.path, "EFGT file");
  auto* builtin = cmd->add_option("--builtin", src.builtin, "fig1, kuhn3 or random-tree");
  game->excludes(builtin);
  cmd->add_option("--builtin-seed", src.builtin_seed, "seed for randomized builtins");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw efce::Error("cannot write '" + path.string() + "'");
}

int cmd_validate(const efce::GameTree& g) {
  int num_terminals = static_cast<int>(g.terminals().size());
  std::cout << "game " << g.name() << "\n"
            << "players " << g.num_players() << "\n"
            << "nodes " << g.num_nodes() << "\n"
            << "terminals " << num_terminals << "\n"
            << "perfect_recall yes\n";
  for (int i = 0; i < g.num_players(); ++i) {
    const efce::Treeplex& tp = g.treeplex(i);
    std::cout << "player " << i + 1 << " infosets " << tp.num_infosets() << " sequences "
              << tp.num_sequences() - 1 << " (plus empty)\n";
  }
  return kOk;
}

int cmd_run(const efce::GameTree& g, const efce::RunConfig& config, const std::string& out_dir) {
  efce::RunLog log = efce::run(g, config);
  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "log.csv", log.to_csv());
  const std::string summary = log.summary(g, config);
  write_file(std::filesystem::path(out_dir) / "summary.txt", summary);
  std::cout << summary;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trigger-regret learning dynamics for extensive-form correlated equilibria"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check an EFGT file and print its sizes");
  validate->add_option("path", validate_path, "EFGT file")->required();

  GameSource dump_src;
  auto* dump = app.add_subcommand("dump", "print a game in EFGT form");
  add_source(dump, dump_src);

  GameSource run_src;
  efce::RunConfig config;
  std::string out_dir = ".";
  double fp_tol = 1e-10;
  auto* run = app.add_subcommand("run", "run self-play and write log.csv and summary.txt");
  add_source(run, run_src);
  run->add_option("--iterations", config.iterations, "T")->required()->check(CLI::PositiveNumber);
  run->add_option("--seed", config.seed, "master seed");
  run->add_option("--gap-every", config.gap_every, "EFCE gap period")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--delta", config.delta, "confidence for the gap bound")
      ->capture_default_str()
      ->check(CLI::Validator(
          [](const std::string& s) {
            double d = 0.0;
            return CLI::detail::lexical_cast(s, d) && d > 0.0 && d < 1.0
                       ? std::string()
                       : std::string("delta must lie in (0, 1)");
          },
          "(0,1)"));
  run->add_option("--fp-tol", fp_tol, "fixed-point tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--threads", config.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(efce::load_game(validate_path));
    if (*dump) {
      std::cout << efce::serialize_game(dump_src.load());
      return kOk;
    }
    config.stationary.tolerance = fp_tol;
    return cmd_run(run_src.load(), config, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const efce::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const efce::Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
}
