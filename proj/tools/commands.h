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

#ifndef SQAV_TOOLS_COMMANDS_H
#define SQAV_TOOLS_COMMANDS_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace sqav::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitValidation = 2,
    kExitAbort = 3,
    kExitVerification = 4,
};

/// Environment variable naming the default output directory.
inline constexpr const char *kOutDirEnv = "SQAV_OUT_DIR";

struct RunManifest {
    std::string command;  ///< vote | amc | attack | verify
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::string> format;  ///< json | csv
};

/// Output directory: --out, else $SQAV_OUT_DIR, else the working directory.
std::filesystem::path resolve_out_dir(const RunManifest &m);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomic(const std::filesystem::path &path, const std::string &content);

int cmd_vote(const RunManifest &m, std::ostream &out);
int cmd_amc(const RunManifest &m, std::ostream &out);
int cmd_attack(const RunManifest &m, std::ostream &out);
int cmd_verify(const RunManifest &m, std::ostream &out);

/// Dispatches on m.command and maps library errors to exit codes, printing
/// diagnostics to `err`.
int run(const RunManifest &m, std::ostream &out, std::ostream &err);

}  // namespace sqav::cli

#endif
