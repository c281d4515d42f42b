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
#pragma once

/**
 * Command implementations behind the randcert executable. Each command is a
 * pure function of its RunConfig and returns the rendered report plus an
 * exit code: 0 all checks pass, 1 a numeric tolerance failed, 2 bad usage.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace randcert {

/** Bad flags, config keys or parameter values. Maps to exit code 2. */
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Named tolerances. Keys:
 *   bell        Bell value residuals
 *   spectral    eigenvalue, fidelity and spectral-form residuals
 *   distribution  deviation of certified distributions from uniform
 *   entropy     deviation of attained min-entropies from their target
 *   attack      undetectability, zeroing and closed-form vs brute force
 *   povm_slope  c in |max P - 1/12| <= c * epsilon for the global POVM pair
 */
class Tolerances {
 public:
  Tolerances();
  double get(const std::string& key) const;
  /// Throws UsageError for unknown keys or non-positive values.
  void set(const std::string& key, double value);
  /// "key=value"; throws UsageError on malformed input.
  void set_from_string(const std::string& assignment);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct RunConfig {
  std::vector<double> thetas;
  std::size_t theta_grid = 0;
  double epsilon = 1e-4;
  std::string scenario;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::string out;
  std::string format = "json";
};

/**
 * Reads a flat key=value file (blank lines and '#' comments ignored) with the
 * same keys as the command-line flags: theta (comma separated), theta-grid,
 * epsilon, scenario, seed, tol.KEY, out, format.
 */
void apply_config_text(RunConfig& cfg, const std::string& text);

/// Explicit thetas followed by the grid points; pi/2 when both are empty.
/// Throws UsageError for an angle outside (0, pi/2].
std::vector<double> resolve_thetas(const RunConfig& cfg);

struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::vector<std::string> failures;
};

CommandResult cmd_selftest(const RunConfig& cfg);
/// Scenarios: local_povm, global_projective, global_povm.
CommandResult cmd_certify(const RunConfig& cfg);
/// Scenarios: tetrahedral (default), near_y, random.
CommandResult cmd_attack(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

/// Column names of the sweep CSV, in order.
const std::vector<std::string>& sweep_columns();

}  // namespace randcert
