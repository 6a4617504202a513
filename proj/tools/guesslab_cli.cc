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

#include <iostream>
#include <string>

#include "cli.h"
#include "guesslab/error.h"
#include "guesslab/tmp.h"

namespace {

void print_usage(std::ostream &out, const std::vector<guesslab::cli::Verb> &verbs) {
    out << "usage: guesslab <verb> [options]\n\nverbs:\n";
    for (const auto &v : verbs) {
        out << "  " << v.name << std::string(v.name.size() < 14 ? 14 - v.name.size() : 1, ' ') << v.description
            << "\n";
    }
    out << "\nshared options: --out DIR, --force, --seed N (or GUESSLAB_SEED), --set key=value\n"
        << "run 'guesslab <verb> --help' for verb options\n";
}

}  // namespace

int main(int argc, char **argv) {
    using namespace guesslab;
    auto verbs = cli::verbs();
    if (argc < 2) {
        print_usage(std::cerr, verbs);
        return 2;
    }
    std::string verb_name = argv[1];
    if (verb_name == "--help" || verb_name == "-h") {
        print_usage(std::cout, verbs);
        return 0;
    }
    if (verb_name == "--version") {
        std::cout << "guesslab " << GUESSLAB_VERSION << "\n";
        return 0;
    }
    const cli::Verb *verb = nullptr;
    for (const auto &v : verbs) {
        if (v.name == verb_name) {
            verb = &v;
        }
    }
    if (verb == nullptr) {
        std::cerr << "guesslab: unknown verb '" << verb_name << "'\n\n";
        print_usage(std::cerr, verbs);
        return 2;
    }

    CLI::App app(verb->description, "guesslab " + verb->name);
    cli::CommonOptions opts;
    std::uint64_t seed = 0;
    app.add_option("--out", opts.out, "Output directory (default: stdout)");
    app.add_flag("--force", opts.force, "Overwrite existing output files");
    auto *seed_opt = app.add_option("--seed", seed, "Random seed (fallback: GUESSLAB_SEED)");
    app.add_option("--set", opts.overrides, "Config override key=value (repeatable)");
    auto action = verb->setup(app);
    try {
        app.parse(argc - 1, argv + 1);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    if (seed_opt->count() > 0) {
        opts.seed = seed;
    }

    try {
        register_tmp_color_functions();
        action(opts);
    } catch (const Error &e) {
        std::cerr << "guesslab: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "guesslab: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
