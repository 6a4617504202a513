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

#ifndef GUESSLAB_NET_IO_H
#define GUESSLAB_NET_IO_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "guesslab/model_io.h"
#include "guesslab/petri_net.h"

namespace guesslab {

/// Resolves conflicts between simultaneously enabled events.
struct Scheduler {
    enum class Policy { Priority, Random };
    Policy policy = Policy::Priority;
    /// Priority policy: earlier entries win; unlisted events follow in id order.
    std::vector<std::string> order;
    std::uint64_t seed = 0;

    std::string choose(const std::set<std::string> &enabled, std::mt19937_64 &rng) const;
};

struct TimedToken {
    std::size_t step;
    std::string state;
    Color color;
};

struct SimulationResult {
    Marking final_marking;
    std::vector<Firing> trace;
    /// Tokens extracted from output states, stamped with the step after
    /// which they appeared.
    std::vector<TimedToken> outputs;
    std::size_t steps = 0;
    bool deadlocked = false;
};

/// Fires one event per step until `max_steps` or until nothing is enabled
/// and no injection is pending. Scheduled inputs are injected at the start
/// of their step; output tokens are extracted after every firing.
SimulationResult simulate(const NetFragment &net, const Marking &initial, const Scheduler &scheduler,
                          std::size_t max_steps, const std::vector<TimedToken> &inputs = {});

struct NetDocument {
    NetFragment net;
    Marking initial;
    Scheduler scheduler;
    std::vector<TimedToken> inputs;
};

/// {"states": [{"id", "role": "internal"|"input"|"output", "colors": "any"|[...]}],
///  "events": [{"id", "inputs", "outputs", "fn": {"name", "params"},
///              "phase": "none"|"tick"|"tock", "requires_empty"}],
///  "initial": {"<state>": color}, "scheduler": {"policy", "order", "seed"},
///  "inputs": [{"step", "state", "color"}]}
NetDocument net_document_from_json(const Json &j);
Json net_document_to_json(const NetDocument &doc);
NetFragment net_from_json(const Json &j);
Json net_to_json(const NetFragment &net);
Marking marking_from_json(const Json &j);
Json marking_to_json(const Marking &m);
Scheduler scheduler_from_json(const Json &j);
Json scheduler_to_json(const Scheduler &s);

/// One JSON object per line: {"step", "event", "consumed", "produced"}.
std::string firing_trace_jsonl(const std::vector<Firing> &trace);

}  // namespace guesslab

#endif
