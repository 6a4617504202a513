// Copyright 2026 The Guesslab Authors
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

#ifndef GUESSLAB_TOOLS_CLI_H
#define GUESSLAB_TOOLS_CLI_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "guesslab/model_io.h"

namespace guesslab::cli {

/// What a run was asked to do; embedded in every output it produces.
struct RunManifest {
    std::string verb;
    std::vector<std::string> inputs;
    std::string output_dir;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> overrides;

    Json to_json() const;
};

/// Options shared by every verb.
struct CommonOptions {
    std::string out;
    bool force = false;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

/// Writes named outputs into the output directory, or to stdout when none
/// was given. Refuses to replace an existing file unless forced.
class OutputSink {
   public:
    OutputSink(RunManifest manifest, bool force) : manifest_(std::move(manifest)), force_(force) {}

    const RunManifest &manifest() const {
        return manifest_;
    }
    void json(const std::string &name, Json body) const;
    void csv(const std::string &name, const std::string &body) const;
    void jsonl(const std::string &name, const std::string &body) const;
    /// Fails before anything is written if any of `names` would be replaced.
    void check_writable(const std::vector<std::string> &names) const;

   private:
    void write(const std::string &name, const std::string &text) const;

    RunManifest manifest_;
    bool force_;
};

/// Seed from the flag, else GUESSLAB_SEED, else nullopt.
std::optional<std::uint64_t> resolve_seed(const CommonOptions &opts);
/// key=value pairs; raises BadConfig on a missing '='.
std::map<std::string, std::string> parse_overrides(const std::vector<std::string> &items);

struct Verb {
    std::string name;
    std::string description;
    /// Declares the verb's options on `cmd` and returns the action to run
    /// after parsing.
    std::function<std::function<void(const CommonOptions &)>(CLI::App &cmd)> setup;
};

std::vector<Verb> verbs();

}  // namespace guesslab::cli

#endif
