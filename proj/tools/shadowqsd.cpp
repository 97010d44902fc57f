// Copyright 2026 The shadowqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// shadowqsd run|mnes|exact <config>

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shadowqsd/experiment/runner.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Shadow-based quantum subspace diagonalization studies"};
    app.set_version_flag("--version", std::string(shadowqsd::kVersion));
    app.require_subcommand(1);

    std::string config;
    auto *run = app.add_subcommand("run", "Run the study named in the config");
    auto *mnes = app.add_subcommand("mnes", "Print the minimum number of evolved states");
    auto *exact = app.add_subcommand("exact", "Print the exact ground energy");
    for (auto *sub : {run, mnes, exact}) {
        sub->add_option("config", config, "Key-value config file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : shadowqsd::experiment::kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    return shadowqsd::experiment::run_config(command, config, std::cout, std::cerr);
}
