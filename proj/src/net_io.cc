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

#include "guesslab/net_io.h"

#include <algorithm>

#include "guesslab/error.h"

namespace guesslab {

std::string Scheduler::choose(const std::set<std::string> &enabled, std::mt19937_64 &rng) const {
    if (enabled.empty()) {
        fail(ErrorKind::NotEnabled, "no event is enabled");
    }
    if (policy == Policy::Random) {
        auto it = enabled.begin();
        std::advance(it, static_cast<long>(rng() % enabled.size()));
        return *it;
    }
    for (const auto &e : order) {
        if (enabled.count(e)) {
            return e;
        }
    }
    return *enabled.begin();
}

SimulationResult simulate(const NetFragment &net, const Marking &initial, const Scheduler &scheduler,
                          std::size_t max_steps, const std::vector<TimedToken> &inputs) {
    net.validate();
    validate_marking(net, initial);
    std::vector<TimedToken> pending = inputs;
    std::stable_sort(pending.begin(), pending.end(), [](const TimedToken &x, const TimedToken &y) {
        return x.step < y.step;
    });
    std::size_t next_input = 0;
    std::mt19937_64 rng(scheduler.seed);
    auto outputs = net.states_with_role(StateRole::Output);

    SimulationResult result;
    Marking m = initial;
    std::size_t step = 0;
    for (; step < max_steps; step++) {
        while (next_input < pending.size() && pending[next_input].step <= step) {
            m = inject(net, m, pending[next_input].state, pending[next_input].color);
            next_input++;
        }
        auto enabled = enabled_events(net, m);
        if (enabled.empty()) {
            if (next_input == pending.size()) {
                result.deadlocked = true;
                break;
            }
            continue;
        }
        Firing f;
        m = fire(net, m, scheduler.choose(enabled, rng), &f);
        result.trace.push_back(std::move(f));
        for (const auto &s : outputs) {
            if (m.count(s)) {
                auto [rest, c] = extract(net, m, s);
                result.outputs.push_back({step, s, c});
                m = std::move(rest);
            }
        }
    }
    result.final_marking = m;
    result.steps = step;
    return result;
}

namespace {

StateRole role_from_name(const std::string &name) {
    if (name == "internal") {
        return StateRole::Internal;
    }
    if (name == "input") {
        return StateRole::Input;
    }
    if (name == "output") {
        return StateRole::Output;
    }
    fail(ErrorKind::ParseError, "unknown state role '" + name + "'");
}

Phase phase_from_name(const std::string &name) {
    if (name == "none") {
        return Phase::None;
    }
    if (name == "tick") {
        return Phase::Tick;
    }
    if (name == "tock") {
        return Phase::Tock;
    }
    fail(ErrorKind::ParseError, "unknown phase '" + name + "'");
}

template <typename F>
auto parsing(const char *what, F body) -> decltype(body()) {
    try {
        return body();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace

NetFragment net_from_json(const Json &j) {
    return parsing("net", [&] {
        NetFragment net;
        for (const auto &s : j.at("states")) {
            ColorSet colors;
            const Json &spec = s.contains("colors") ? s["colors"] : Json("any");
            if (spec.is_string() && spec.get<std::string>() == "any") {
                colors = ColorSet::any();
            } else {
                std::set<Color> finite;
                for (const auto &c : spec) {
                    finite.insert(color_from_json(c));
                }
                colors = ColorSet::of(std::move(finite));
            }
            net.add_state(s.at("id").get<std::string>(), role_from_name(s.value("role", "internal")), colors);
        }
        for (const auto &e : j.at("events")) {
            Event event;
            event.id = e.at("id").get<std::string>();
            event.inputs = e.at("inputs").get<std::vector<std::string>>();
            event.outputs = e.at("outputs").get<std::vector<std::string>>();
            event.phase = phase_from_name(e.value("phase", "none"));
            event.requires_empty = e.value("requires_empty", std::vector<std::string>{});
            Json fn = e.value("fn", Json{{"name", "identity"}});
            event.fn = make_color_function(fn.at("name").get<std::string>(), fn.value("params", Json()),
                                           event.outputs.size());
            net.add_event(std::move(event));
        }
        net.validate();
        return net;
    });
}

Json net_to_json(const NetFragment &net) {
    Json states = Json::array();
    for (const auto &[id, s] : net.states()) {
        Json colors = "any";
        if (s.colors.finite) {
            colors = Json::array();
            for (const auto &c : *s.colors.finite) {
                colors.push_back(color_to_json(c));
            }
        }
        states.push_back({{"id", id}, {"role", state_role_name(s.role)}, {"colors", colors}});
    }
    Json events = Json::array();
    for (const auto &[id, e] : net.events()) {
        Json fn = {{"name", e.fn.name}};
        if (!e.fn.params.is_null()) {
            fn["params"] = e.fn.params;
        }
        Json row = {{"id", id}, {"inputs", e.inputs}, {"outputs", e.outputs}, {"fn", fn}, {"phase", phase_name(e.phase)}};
        if (!e.requires_empty.empty()) {
            row["requires_empty"] = e.requires_empty;
        }
        events.push_back(row);
    }
    return {{"states", states}, {"events", events}};
}

Marking marking_from_json(const Json &j) {
    return parsing("marking", [&] {
        Marking m;
        for (const auto &[s, c] : j.items()) {
            m[s] = color_from_json(c);
        }
        return m;
    });
}

Json marking_to_json(const Marking &m) {
    Json out = Json::object();
    for (const auto &[s, c] : m) {
        out[s] = color_to_json(c);
    }
    return out;
}

Scheduler scheduler_from_json(const Json &j) {
    return parsing("scheduler", [&] {
        Scheduler s;
        std::string policy = j.value("policy", "priority");
        if (policy == "random") {
            s.policy = Scheduler::Policy::Random;
        } else if (policy != "priority") {
            fail(ErrorKind::ParseError, "unknown scheduler policy '" + policy + "'");
        }
        s.order = j.value("order", std::vector<std::string>{});
        s.seed = j.value("seed", std::uint64_t{0});
        return s;
    });
}

Json scheduler_to_json(const Scheduler &s) {
    return {{"policy", s.policy == Scheduler::Policy::Random ? "random" : "priority"},
            {"order", s.order},
            {"seed", s.seed}};
}

NetDocument net_document_from_json(const Json &j) {
    NetDocument doc;
    doc.net = net_from_json(j);
    if (j.contains("initial")) {
        doc.initial = marking_from_json(j["initial"]);
        validate_marking(doc.net, doc.initial);
    }
    if (j.contains("scheduler")) {
        doc.scheduler = scheduler_from_json(j["scheduler"]);
    }
    if (j.contains("inputs")) {
        parsing("inputs", [&] {
            for (const auto &t : j["inputs"]) {
                doc.inputs.push_back(
                    {t.at("step").get<std::size_t>(), t.at("state").get<std::string>(), color_from_json(t.at("color"))});
            }
            return 0;
        });
    }
    return doc;
}

Json net_document_to_json(const NetDocument &doc) {
    Json out = net_to_json(doc.net);
    out["initial"] = marking_to_json(doc.initial);
    out["scheduler"] = scheduler_to_json(doc.scheduler);
    Json inputs = Json::array();
    for (const auto &t : doc.inputs) {
        inputs.push_back({{"step", t.step}, {"state", t.state}, {"color", color_to_json(t.color)}});
    }
    out["inputs"] = inputs;
    return out;
}

std::string firing_trace_jsonl(const std::vector<Firing> &trace) {
    std::string out;
    for (std::size_t k = 0; k < trace.size(); k++) {
        Json line = {{"step", k},
                     {"event", trace[k].event},
                     {"consumed", color_tuple_to_json(trace[k].consumed)},
                     {"produced", color_tuple_to_json(trace[k].produced)}};
        out += line.dump() + "\n";
    }
    return out;
}

}  // namespace guesslab
