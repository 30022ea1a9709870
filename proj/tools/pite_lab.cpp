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

// pite-lab: run PITE experiments from config files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pite/capi.h"

namespace {

int report(pite_status s) {
    if (s != PITE_OK) {
        std::cerr << "pite-lab: " << pite_last_error() << "\n";
    }
    return pite_exit_status(s);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Probabilistic imaginary-time evolution experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pite_version()));

    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string mode;

    auto *run = app.add_subcommand("run", "run one experiment");
    run->add_option("--config", config, "config file (.ini or .json)")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--mode", mode, "postselect or sampled")
        ->check(CLI::IsMember({"postselect", "sampled"}));

    auto *list = app.add_subcommand("list-experiments", "print the available experiments");

    auto *validate = app.add_subcommand("validate", "check a config without running it");
    validate->add_option("--config", config, "config file (.ini or .json)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*list) {
        std::size_t needed = 0;
        if (const auto s = pite_list_experiments(nullptr, 0, &needed); s != PITE_OK) {
            return report(s);
        }
        std::vector<char> buf(needed);
        const auto s = pite_list_experiments(buf.data(), buf.size(), nullptr);
        std::cout << buf.data();
        return report(s);
    }
    if (*validate) {
        const auto s = pite_config_validate(config.c_str());
        if (s == PITE_OK) {
            std::cout << config << ": ok\n";
        }
        return report(s);
    }
    const auto s = pite_run_experiment(config.c_str(), out_dir.c_str(), seed ? &*seed : nullptr,
                                       mode.empty() ? nullptr : mode.c_str());
    return report(s);
}
