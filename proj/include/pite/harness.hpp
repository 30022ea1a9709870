// Copyright 2026 The pite-lab Authors
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

/**
 * @file
 * Experiment runner behind the pite-lab command line.
 *
 * A config names one experiment, an optional seed and measurement mode, and
 * a flat parameter block. Two interchangeable formats are accepted:
 *
 *     [run]                          {"experiment": "double_well",
 *     experiment = double_well        "seed": 3,
 *     seed = 3                        "mode": "postselect",
 *     mode = postselect               "params": {"m0": 0.9,
 *     [params]                                   "dtau": [0.1]}}
 *     m0 = 0.9
 *     dtau = 0.1
 *
 * Lists in the line format are comma separated. Unknown sections or keys
 * are rejected, missing parameters take the experiment defaults.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pite/common.hpp"

namespace pite::harness {

enum class Mode { PostSelect, Sampled };

[[nodiscard]] std::string_view mode_name(Mode m) noexcept;
/// "postselect" or "sampled"; anything else is a config error.
[[nodiscard]] Mode parse_mode(std::string_view s);

using Value = std::variant<double, std::int64_t, std::string, std::vector<double>>;

enum class Kind { Real, Integer, Text, RealList };

struct ParamSpec {
    std::string name;
    Kind kind;
    Value default_value;
    std::string help;
    /// Allowed values for Text parameters; empty means free text.
    std::vector<std::string> choices;
};

struct ExperimentInfo {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
};

[[nodiscard]] const std::vector<ExperimentInfo> &experiments();
/// Throws ErrorCode::Config for unknown names.
[[nodiscard]] const ExperimentInfo &experiment_info(std::string_view name);

struct RunConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    Mode mode = Mode::PostSelect;
    /// Every parameter of the experiment, defaults filled in.
    std::map<std::string, Value> params;

    [[nodiscard]] double real(const std::string &key) const;
    [[nodiscard]] std::int64_t integer(const std::string &key) const;
    [[nodiscard]] const std::string &text(const std::string &key) const;
    [[nodiscard]] const std::vector<double> &reals(const std::string &key) const;
};

enum class Format { Auto, Ini, Json };

/// Parses and type-checks a config. Auto picks JSON when the first
/// non-blank character is '{'. Throws ErrorCode::Config.
[[nodiscard]] RunConfig parse_config(std::string_view text, Format format = Format::Auto);
[[nodiscard]] RunConfig load_config(const std::filesystem::path &path);
[[nodiscard]] RunConfig default_config(std::string_view experiment);

/// Builds every model object of the experiment without running it, so
/// precondition failures (spectral bound, domain, sizes) surface before any
/// output is written.
void check_preconditions(const RunConfig &cfg);

/// Numeric table; an empty optional is written as an empty field.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// Header row, then one row per entry, values at 17 significant digits.
[[nodiscard]] std::string format_csv(const Table &table);
void write_csv(const Table &table, const std::filesystem::path &path);

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::string summary_json;
};

/// Runs the experiment and writes trajectory.csv and summary.json (plus
/// extra tables for some experiments) into out_dir, creating it if needed.
RunResult run_experiment(const RunConfig &cfg, const std::filesystem::path &out_dir);

/// Maps an error to the command-line exit status: 2 for config problems,
/// 1 for I/O, 3 for numeric precondition violations.
[[nodiscard]] int exit_status(ErrorCode code) noexcept;

} // namespace pite::harness
