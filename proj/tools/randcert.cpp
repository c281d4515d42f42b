// Copyright 2026 The randcert Authors
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
// randcert: Bell-test randomness certification reports.
//
//   randcert selftest --theta-grid 50
//   randcert certify --scenario global_povm --theta 1.5707963267948966
//   randcert attack --seed 7 --out attack.json
//   randcert sweep --theta-grid 100 --format csv
//
// Exit codes: 0 all checks pass, 1 numeric tolerance failure, 2 usage error.

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randcert/cli.hpp"
#include "randcert/errors.hpp"

namespace {

struct Flags {
  std::vector<double> thetas;
  std::size_t theta_grid = 0;
  double epsilon = 1e-4;
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<std::string> tols;
  std::string out;
  std::string format = "json";
  std::string config;

  CLI::Option* o_theta = nullptr;
  CLI::Option* o_grid = nullptr;
  CLI::Option* o_eps = nullptr;
  CLI::Option* o_scenario = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_format = nullptr;
};

void add_flags(CLI::App* cmd, Flags& f) {
  f.o_theta = cmd->add_option("--theta", f.thetas,
                              "Schmidt angle in (0, pi/2]; repeatable");
  f.o_grid = cmd->add_option("--theta-grid", f.theta_grid,
                             "N evenly spaced angles over (0.01, pi/2]");
  f.o_eps = cmd->add_option("--epsilon", f.epsilon,
                            "near-Y POVM offset in (0, 1)");
  f.o_scenario = cmd->add_option("--scenario", f.scenario, "scenario name");
  f.o_seed = cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--tol", f.tols, "tolerance override KEY=VAL; repeatable");
  f.o_out = cmd->add_option("--out", f.out, "write the report to PATH");
  f.o_format = cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--config", f.config, "flat key=value config file");
}

randcert::RunConfig make_config(const Flags& f) {
  randcert::RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw randcert::UsageError("cannot read config " + f.config);
    std::ostringstream text;
    text << in.rdbuf();
    randcert::apply_config_text(cfg, text.str());
  }
  // Flags given on the command line win over the config file.
  if (f.o_theta->count()) cfg.thetas = f.thetas;
  if (f.o_grid->count()) cfg.theta_grid = f.theta_grid;
  if (f.o_eps->count()) cfg.epsilon = f.epsilon;
  if (f.o_scenario->count()) cfg.scenario = f.scenario;
  if (f.o_seed->count()) cfg.seed = f.seed;
  if (f.o_out->count()) cfg.out = f.out;
  if (f.o_format->count()) cfg.format = f.format;
  for (const auto& t : f.tols) cfg.tol.set_from_string(t);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomness certification numerics for a partially entangled "
               "two-qubit Bell test"};
  app.require_subcommand(1);
  CLI::App* selftest = app.add_subcommand(
      "selftest", "Bell values and spectral self-test per angle");
  CLI::App* certify = app.add_subcommand(
      "certify", "min-entropy certificate for one scenario");
  CLI::App* attack =
      app.add_subcommand("attack", "conjugation attack on a 4x4-outcome pair");
  CLI::App* sweep = app.add_subcommand("sweep", "per-angle summary table");
  const std::array<CLI::App*, 4> commands{selftest, certify, attack, sweep};
  std::array<Flags, 4> flags;
  for (std::size_t i = 0; i < commands.size(); ++i)
    add_flags(commands[i], flags[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  randcert::CommandResult result;
  try {
    std::size_t which = 0;
    while (!commands[which]->parsed()) ++which;
    const randcert::RunConfig cfg = make_config(flags[which]);
    if (which == 0)
      result = randcert::cmd_selftest(cfg);
    else if (which == 1)
      result = randcert::cmd_certify(cfg);
    else if (which == 2)
      result = randcert::cmd_attack(cfg);
    else
      result = randcert::cmd_sweep(cfg);

    if (cfg.out.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      out << result.output;
      if (!out) {
        std::cerr << "randcert: cannot write " << cfg.out << "\n";
        return 2;
      }
    }
  } catch (const randcert::UsageError& e) {
    std::cerr << "randcert: " << e.what() << "\n";
    return 2;
  } catch (const randcert::DomainError& e) {
    std::cerr << "randcert: " << e.what() << "\n";
    return 2;
  }
  for (const auto& fail : result.failures)
    std::cerr << "randcert: tolerance failure at " << fail << "\n";
  return result.exit_code;
}
