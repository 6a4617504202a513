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

#include "guesslab/net_analysis.h"

#include <deque>

#include "guesslab/error.h"

namespace guesslab {

ClassicalNet reduced_net(const NetFragment &net) {
    ClassicalNet out;
    out.places = net.states_with_role(StateRole::Internal);
    for (const auto &[id, e] : net.events()) {
        Transition t;
        for (const auto &s : e.inputs) {
            if (out.places.count(s)) {
                t.pre.insert(s);
            }
        }
        for (const auto &s : e.outputs) {
            if (out.places.count(s)) {
                t.post.insert(s);
            }
        }
        out.transitions[id] = t;
    }
    return out;
}

ClassicalMarking marked_places(const ClassicalNet &net, const Marking &m) {
    ClassicalMarking out;
    for (const auto &[s, c] : m) {
        if (net.places.count(s)) {
            out.insert(s);
        }
    }
    return out;
}

bool NetAnalysis::all_live() const {
    for (const auto &[t, ok] : live) {
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::size_t NetAnalysis::deadlocks() const {
    std::size_t n = 0;
    for (const auto &out : edges) {
        n += out.empty();
    }
    return n;
}

NetAnalysis analyze(const ClassicalNet &net, const ClassicalMarking &initial, std::size_t bound) {
    for (const auto &p : initial) {
        if (!net.places.count(p)) {
            fail(ErrorKind::InvalidNet, "initial marking names unknown place '" + p + "'");
        }
    }
    NetAnalysis a;
    std::map<ClassicalMarking, std::size_t> index;
    std::deque<std::size_t> queue;
    index[initial] = 0;
    a.reachable.push_back(initial);
    a.edges.emplace_back();
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t k = queue.front();
        queue.pop_front();
        for (const auto &[id, t] : net.transitions) {
            const ClassicalMarking &m = a.reachable[k];
            bool pre_marked = true;
            for (const auto &p : t.pre) {
                pre_marked &= m.count(p) > 0;
            }
            if (!pre_marked) {
                continue;
            }
            bool blocked = false;
            for (const auto &p : t.post) {
                if (m.count(p) && !t.pre.count(p)) {
                    a.violations.push_back({k, id, p});
                    blocked = true;
                }
            }
            if (blocked) {
                continue;
            }
            ClassicalMarking next = m;
            for (const auto &p : t.pre) {
                next.erase(p);
            }
            next.insert(t.post.begin(), t.post.end());
            auto [it, fresh] = index.emplace(next, a.reachable.size());
            if (fresh) {
                if (a.reachable.size() >= bound) {
                    fail(ErrorKind::StateSpaceTooLarge,
                         "more than " + std::to_string(bound) + " reachable markings");
                }
                a.reachable.push_back(next);
                a.edges.emplace_back();
                queue.push_back(it->second);
            }
            a.edges[k].push_back({id, it->second});
        }
    }

    std::vector<std::vector<std::size_t>> preds(a.reachable.size());
    for (std::size_t k = 0; k < a.edges.size(); k++) {
        for (const auto &[t, next] : a.edges[k]) {
            preds[next].push_back(k);
        }
    }
    for (const auto &[id, t] : net.transitions) {
        std::vector<bool> reaches(a.reachable.size(), false);
        std::deque<std::size_t> work;
        for (std::size_t k = 0; k < a.edges.size(); k++) {
            for (const auto &[name, next] : a.edges[k]) {
                if (name == id && !reaches[k]) {
                    reaches[k] = true;
                    work.push_back(k);
                }
            }
        }
        while (!work.empty()) {
            std::size_t k = work.front();
            work.pop_front();
            for (std::size_t p : preds[k]) {
                if (!reaches[p]) {
                    reaches[p] = true;
                    work.push_back(p);
                }
            }
        }
        bool live = true;
        for (bool r : reaches) {
            live &= r;
        }
        a.live[id] = live;
    }
    return a;
}

}  // namespace guesslab
