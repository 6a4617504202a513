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

#ifndef GUESSLAB_PETRI_NET_H
#define GUESSLAB_PETRI_NET_H

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "guesslab/color.h"

namespace guesslab {

enum class StateRole { Internal, Input, Output };
enum class Phase { None, Tick, Tock };

struct State {
    std::string id;
    StateRole role = StateRole::Internal;
    ColorSet colors;
};

struct Event {
    std::string id;
    /// Ordered; the color function sees input colors in this order and
    /// returns output colors in the order of `outputs`.
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    ColorFunction fn;
    Phase phase = Phase::None;
    /// Extra states that must be empty for the event to fire. Only produced
    /// by refinement, where an output state is split into block states and
    /// the sibling blocks stand for the same condition.
    std::vector<std::string> requires_empty;
};

/// A colored condition-event net fragment: internal states S, exogenous
/// input states S_I and output states S_O, and events with ordered arcs.
class NetFragment {
   public:
    void add_state(std::string id, StateRole role, ColorSet colors = ColorSet::any());
    void add_event(Event event);

    const std::map<std::string, State> &states() const noexcept {
        return states_;
    }
    const std::map<std::string, Event> &events() const noexcept {
        return events_;
    }
    const State &state(const std::string &id) const;
    const Event &event(const std::string &id) const;
    bool has_state(const std::string &id) const {
        return states_.count(id) > 0;
    }
    bool has_event(const std::string &id) const {
        return events_.count(id) > 0;
    }
    std::set<std::string> states_with_role(StateRole role) const;

    /// Raises InvalidNet unless the arcs respect the roles, every event has
    /// at least one input and one output, there are no self-loops, and
    /// table functions match arities and color sets.
    void validate() const;

   private:
    std::map<std::string, State> states_;
    std::map<std::string, Event> events_;
};

/// At most one token per state; a state is marked iff it appears as a key.
using Marking = std::map<std::string, Color>;

void validate_marking(const NetFragment &net, const Marking &m);

/// Input colors of the event if every input is marked, or nothing.
std::optional<ColorTuple> input_colors(const NetFragment &net, const Marking &m, const std::string &event);
bool is_enabled(const NetFragment &net, const Marking &m, const std::string &event);
std::set<std::string> enabled_events(const NetFragment &net, const Marking &m);

struct Firing {
    std::string event;
    ColorTuple consumed;
    ColorTuple produced;
};

Marking fire(const NetFragment &net, const Marking &m, const std::string &event, Firing *record = nullptr);

/// The only ways tokens enter or leave a fragment.
Marking inject(const NetFragment &net, const Marking &m, const std::string &state, const Color &color);
std::pair<Marking, Color> extract(const NetFragment &net, const Marking &m, const std::string &state);

struct ColorBlock {
    std::string label;
    std::set<Color> colors;
};
/// Blocks for the states being refined; unlisted states stay whole.
using ColorPartition = std::map<std::string, std::vector<ColorBlock>>;

/// A refined net plus the correspondence back to the net it came from.
/// Block states are named "<state>.<label>"; refined events are named
/// "<event><in labels|out labels>" with "*" for states left whole.
struct Refinement {
    NetFragment net;
    ColorPartition partition;
    std::map<std::string, std::string> state_origin;
    std::map<std::string, std::string> event_origin;
    /// Events whose color function reaches no block combination. They can
    /// never fire, have no refined counterpart, and are restored by folding.
    std::map<std::string, Event> dead_events;

    Marking refine_marking(const Marking &m) const;
    Marking fold_marking(const Marking &m) const;
};

/// Splits each partitioned state into one state per block and each adjacent
/// event into one event per (input blocks, output blocks) combination that
/// its color function actually reaches. Raises BadPartition for partitions
/// that are not a disjoint cover of a finite color set, or when an adjacent
/// event's domain cannot be enumerated.
Refinement refine_colors(const NetFragment &net, const ColorPartition &partition);

/// Merges block states and the events split from one event back together.
/// The merged color function is the union of the refined ones.
NetFragment fold_refinement(const Refinement &refinement);

/// Black tokens everywhere and total color functions on the same graph.
NetFragment coarsen_colors(const NetFragment &net);
Marking coarsen_marking(const Marking &m);

struct SignalArc {
    /// A tock event of the sending machine and a tick event of the receiver.
    std::string from;
    std::string to;
    bool a_to_b = true;
};

/// Disjoint union of the fragments (states and events prefixed "A." and
/// "B.") plus one internal signal state per arc, named "signal.<k>". The
/// tock places a copy of its first output color on the signal state; the
/// tick consumes it. Raises BadPhase unless every arc runs tock to tick.
NetFragment couple(const NetFragment &a, const NetFragment &b, const std::vector<SignalArc> &arcs);

std::string state_role_name(StateRole role);
std::string phase_name(Phase phase);

}  // namespace guesslab

#endif
