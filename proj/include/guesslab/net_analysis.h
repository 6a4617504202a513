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

#ifndef GUESSLAB_NET_ANALYSIS_H
#define GUESSLAB_NET_ANALYSIS_H

#include <map>
#include <set>
#include <string>
#include <vector>

#include "guesslab/petri_net.h"

namespace guesslab {

struct Transition {
    std::set<std::string> pre;
    std::set<std::string> post;
};

/// An uncolored condition-event net.
struct ClassicalNet {
    std::set<std::string> places;
    std::map<std::string, Transition> transitions;
};

/// Drops S_I, S_O and every arc touching them; events keep their internal
/// arcs only.
ClassicalNet reduced_net(const NetFragment &net);

/// Set of marked places.
using ClassicalMarking = std::set<std::string>;
ClassicalMarking marked_places(const ClassicalNet &net, const Marking &m);

struct SafetyViolation {
    std::size_t marking;
    std::string transition;
    /// A post-place that already holds a token while the pre-set is marked.
    std::string place;
};

struct NetAnalysis {
    /// Breadth-first order; index 0 is the initial marking.
    std::vector<ClassicalMarking> reachable;
    /// edges[k] lists (transition, successor index) for reachable[k].
    std::vector<std::vector<std::pair<std::string, std::size_t>>> edges;
    std::map<std::string, bool> live;
    std::vector<SafetyViolation> violations;

    bool all_live() const;
    std::size_t deadlocks() const;
};

/// Exhaustive reachability under condition-event firing. A transition is
/// live when it can still be enabled from every reachable marking. Raises
/// StateSpaceTooLarge once more than `bound` markings are found.
NetAnalysis analyze(const ClassicalNet &net, const ClassicalMarking &initial, std::size_t bound);

}  // namespace guesslab

#endif
