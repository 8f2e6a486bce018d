// Copyright 2026 The SQAV Authors
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

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char **argv) {
    using sqav::cli::RunManifest;

    CLI::App app{"Self-tallying quantum anonymous voting simulator"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string format;
    std::string config;

    for (const char *name : {"vote", "amc", "attack", "verify"}) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("--config", config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "output directory (default: $SQAV_OUT_DIR or .)");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : sqav::cli::kExitValidation;
    }

    CLI::App *sub = app.get_subcommands().front();
    manifest.command = sub->get_name();
    manifest.config = config;
    if (sub->count("--seed")) {
        manifest.seed = seed;
    }
    if (sub->count("--out")) {
        manifest.out_dir = out_dir;
    }
    if (sub->count("--format")) {
        manifest.format = format;
    }
    return sqav::cli::run(manifest, std::cout, std::cerr);
}
