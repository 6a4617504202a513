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

#include <functional>

#include "gtest/gtest.h"

#include "guesslab/error.h"
#include "guesslab/net_io.h"

using namespace guesslab;

namespace {

Event arc_event(std::string id, std::vector<std::string> in, std::vector<std::string> out) {
    Event e;
    e.id = std::move(id);
    e.inputs = std::move(in);
    e.outputs = std::move(out);
    e.fn = identity_function();
    return e;
}

ClassicalNet cycle(std::size_t n) {
    ClassicalNet net;
    for (std::size_t k = 0; k < n; k++) {
        net.places.insert("p" + std::to_string(k));
        net.transitions["t" + std::to_string(k)] = {{"p" + std::to_string(k)}, {"p" + std::to_string((k + 1) % n)}};
    }
    return net;
}

/// Brute-force oracle over bitmask markings: reachable set by fixpoint
/// iteration and liveness by forward search from every reachable marking.
struct BruteForce {
    std::set<std::uint32_t> reachable;
    std::map<std::string, bool> live;
};

BruteForce brute_force(const ClassicalNet &net, const ClassicalMarking &initial) {
    std::vector<std::string> places(net.places.begin(), net.places.end());
    auto bit = [&](const std::string &p) {
        return 1u << (std::find(places.begin(), places.end(), p) - places.begin());
    };
    auto mask_of = [&](const std::set<std::string> &s) {
        std::uint32_t m = 0;
        for (const auto &p : s) {
            m |= bit(p);
        }
        return m;
    };
    auto successors = [&](std::uint32_t m) {
        std::vector<std::pair<std::string, std::uint32_t>> out;
        for (const auto &[id, t] : net.transitions) {
            std::uint32_t pre = mask_of(t.pre);
            std::uint32_t post = mask_of(t.post);
            if ((m & pre) == pre && (m & post & ~pre) == 0) {
                out.push_back({id, (m & ~pre) | post});
            }
        }
        return out;
    };
    auto closure = [&](std::uint32_t start) {
        std::set<std::uint32_t> seen{start};
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::uint32_t m : std::set<std::uint32_t>(seen)) {
                for (const auto &[id, next] : successors(m)) {
                    grew |= seen.insert(next).second;
                }
            }
        }
        return seen;
    };
    BruteForce b;
    b.reachable = closure(mask_of(initial));
    for (const auto &[id, t] : net.transitions) {
        bool live = true;
        for (std::uint32_t m : b.reachable) {
            bool found = false;
            for (std::uint32_t r : closure(m)) {
                for (const auto &[name, next] : successors(r)) {
                    found |= name == id;
                }
            }
            live &= found;
        }
        b.live[id] = live;
    }
    return b;
}

}  // namespace

TEST(ReducedNet, exogenous_arcs_dropped) {
    NetFragment net;
    net.add_state("a", StateRole::Internal);
    net.add_state("b", StateRole::Internal);
    net.add_state("in", StateRole::Input);
    net.add_state("out", StateRole::Output);
    net.add_event(arc_event("io", {"in"}, {"out"}));
    net.add_event(arc_event("mixed", {"a", "in"}, {"b", "out"}));
    ClassicalNet r = reduced_net(net);
    ASSERT_EQ(r.places, (std::set<std::string>{"a", "b"}));
    ASSERT_TRUE(r.transitions.at("io").pre.empty());
    ASSERT_TRUE(r.transitions.at("io").post.empty());
    ASSERT_EQ(r.transitions.at("mixed").pre, std::set<std::string>{"a"});
    ASSERT_EQ(r.transitions.at("mixed").post, std::set<std::string>{"b"});
}

TEST(ReducedNet, fsm_fragment_becomes_cycle) {
    NetFragment net;
    net.add_state("q", StateRole::Internal);
    net.add_state("r", StateRole::Internal);
    net.add_state("in", StateRole::Input);
    net.add_state("out", StateRole::Output);
    net.add_event(arc_event("tick", {"q", "in"}, {"r"}));
    net.add_event(arc_event("tock", {"r"}, {"q", "out"}));
    ClassicalNet r = reduced_net(net);
    NetAnalysis a = analyze(r, {"q"}, 100);
    ASSERT_EQ(a.reachable.size(), 2u);
    ASSERT_TRUE(a.all_live());
    ASSERT_TRUE(a.violations.empty());
    ASSERT_EQ(a.edges[0], (std::vector<std::pair<std::string, std::size_t>>{{"tick", 1}}));
    ASSERT_EQ(a.edges[1], (std::vector<std::pair<std::string, std::size_t>>{{"tock", 0}}));
}

TEST(Analyze, single_loop_one_token) {
    for (std::size_t n = 1; n <= 6; n++) {
        NetAnalysis a = analyze(cycle(n + 1), {"p0"}, 100);
        ASSERT_EQ(a.reachable.size(), n + 1);
        ASSERT_TRUE(a.all_live());
        ASSERT_EQ(a.deadlocks(), 0u);
    }
}

TEST(Analyze, empty_cycle_is_dead) {
    NetAnalysis a = analyze(cycle(4), {}, 100);
    ASSERT_EQ(a.reachable.size(), 1u);
    ASSERT_EQ(a.deadlocks(), 1u);
    for (const auto &[t, live] : a.live) {
        ASSERT_FALSE(live) << t;
    }
}

TEST(Analyze, contact_situation_reported) {
    ClassicalNet net;
    net.places = {"a", "b"};
    net.transitions["t"] = {{"a"}, {"b"}};
    NetAnalysis a = analyze(net, {"a", "b"}, 10);
    ASSERT_EQ(a.reachable.size(), 1u);
    ASSERT_EQ(a.violations.size(), 1u);
    ASSERT_EQ(a.violations[0].place, "b");
    ASSERT_EQ(a.violations[0].transition, "t");
}

TEST(Analyze, bound_exceeded) {
    ClassicalNet net;
    for (int k = 0; k < 3; k++) {
        std::string a = "a" + std::to_string(k);
        std::string b = "b" + std::to_string(k);
        net.places.insert(a);
        net.places.insert(b);
        net.transitions["f" + std::to_string(k)] = {{a}, {b}};
        net.transitions["g" + std::to_string(k)] = {{b}, {a}};
    }
    ASSERT_EQ(analyze(net, {"a0", "a1", "a2"}, 8).reachable.size(), 8u);
    try {
        analyze(net, {"a0", "a1", "a2"}, 5);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::StateSpaceTooLarge);
    }
}

TEST(Analyze, two_mode_net_modes_live) {
    NetDocument doc = net_document_from_json(read_json_file(GUESSLAB_DATA_DIR "/nets/two_mode.json"));
    ClassicalNet r = reduced_net(doc.net);
    NetAnalysis a = analyze(r, marked_places(r, doc.initial), 100);
    ASSERT_LE(a.reachable.size(), 12u);
    ASSERT_TRUE(a.live.at("enter_program"));
    ASSERT_TRUE(a.live.at("enter_run"));
    ASSERT_TRUE(a.all_live());
    ASSERT_TRUE(a.violations.empty());
}

TEST(Analyze, two_mode_net_simulation) {
    NetDocument doc = net_document_from_json(read_json_file(GUESSLAB_DATA_DIR "/nets/two_mode.json"));
    auto result = simulate(doc.net, doc.initial, doc.scheduler, 100, doc.inputs);
    std::vector<std::string> events;
    for (const auto &f : result.trace) {
        events.push_back(f.event);
    }
    std::vector<std::string> expected{"enter_program", "load",     "enter_run", "run_tick", "run_tock",
                                      "run_tick",      "run_tock", "run_tick",  "run_tock", "interrupt"};
    ASSERT_EQ(events, expected);
    ASSERT_EQ(result.outputs.front().color, Color::text("loaded"));
    ASSERT_EQ(result.outputs.size(), 4u);
    ASSERT_TRUE(result.deadlocked);
    ASSERT_EQ(result.final_marking, (Marking{{"choose", Color::black()}}));
}

TEST(Analyze, matches_brute_force_on_random_nets) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; trial++) {
        ClassicalNet net;
        std::size_t n = 3 + rng() % 5;
        for (std::size_t k = 0; k < n; k++) {
            net.places.insert("p" + std::to_string(k));
        }
        std::size_t transitions = 2 + rng() % 5;
        for (std::size_t k = 0; k < transitions; k++) {
            Transition t;
            for (std::size_t j = 0; j < n; j++) {
                std::uint64_t r = rng() % 6;
                if (r == 0) {
                    t.pre.insert("p" + std::to_string(j));
                } else if (r == 1) {
                    t.post.insert("p" + std::to_string(j));
                }
            }
            net.transitions["t" + std::to_string(k)] = t;
        }
        ClassicalMarking initial;
        for (const auto &p : net.places) {
            if (rng() % 2) {
                initial.insert(p);
            }
        }
        NetAnalysis a = analyze(net, initial, 1000);
        BruteForce b = brute_force(net, initial);
        ASSERT_EQ(a.reachable.size(), b.reachable.size()) << "trial " << trial;
        ASSERT_EQ(a.live, b.live) << "trial " << trial;
    }
}

TEST(Analyze, coupled_loops_stay_safe) {
    auto machine = [] {
        NetFragment net;
        net.add_state("p", StateRole::Internal, ColorSet::black_only());
        net.add_state("q", StateRole::Internal, ColorSet::black_only());
        Event tick = arc_event("tick", {"p"}, {"q"});
        tick.phase = Phase::Tick;
        Event tock = arc_event("tock", {"q"}, {"p"});
        tock.phase = Phase::Tock;
        net.add_event(tick);
        net.add_event(tock);
        return net;
    };
    NetFragment c = couple(machine(), machine(), {{"tock", "tick", true}, {"tock", "tick", false}});
    ClassicalNet r = reduced_net(c);
    NetAnalysis a = analyze(r, {"A.p", "B.p", "signal.1"}, 100);
    ASSERT_TRUE(a.violations.empty());
    ASSERT_TRUE(a.all_live());
    ASSERT_EQ(a.reachable.size(), 4u);
}
