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

#include "guesslab/petri_net.h"

#include <algorithm>

#include "guesslab/error.h"

namespace guesslab {

namespace {

std::string join(const std::vector<std::string> &parts, const char *sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); k++) {
        out += (k ? sep : "") + parts[k];
    }
    return out;
}

void require(bool ok, const std::string &message) {
    if (!ok) {
        fail(ErrorKind::InvalidNet, message);
    }
}

}  // namespace

std::string state_role_name(StateRole role) {
    switch (role) {
        case StateRole::Internal:
            return "internal";
        case StateRole::Input:
            return "input";
        case StateRole::Output:
            return "output";
    }
    return "?";
}

std::string phase_name(Phase phase) {
    switch (phase) {
        case Phase::None:
            return "none";
        case Phase::Tick:
            return "tick";
        case Phase::Tock:
            return "tock";
    }
    return "?";
}

void NetFragment::add_state(std::string id, StateRole role, ColorSet colors) {
    require(!id.empty(), "state ids must be nonempty");
    require(!states_.count(id) && !events_.count(id), "duplicate id '" + id + "'");
    states_[id] = State{id, role, std::move(colors)};
}

void NetFragment::add_event(Event event) {
    require(!event.id.empty(), "event ids must be nonempty");
    require(!states_.count(event.id) && !events_.count(event.id), "duplicate id '" + event.id + "'");
    std::string id = event.id;
    events_[id] = std::move(event);
}

const State &NetFragment::state(const std::string &id) const {
    auto it = states_.find(id);
    require(it != states_.end(), "unknown state '" + id + "'");
    return it->second;
}

const Event &NetFragment::event(const std::string &id) const {
    auto it = events_.find(id);
    require(it != events_.end(), "unknown event '" + id + "'");
    return it->second;
}

std::set<std::string> NetFragment::states_with_role(StateRole role) const {
    std::set<std::string> out;
    for (const auto &[id, s] : states_) {
        if (s.role == role) {
            out.insert(id);
        }
    }
    return out;
}

void NetFragment::validate() const {
    for (const auto &[id, e] : events_) {
        require(!e.inputs.empty(), "event '" + id + "' has no input arc");
        require(!e.outputs.empty(), "event '" + id + "' has no output arc");
        require(static_cast<bool>(e.fn.apply), "event '" + id + "' has no color function");
        std::set<std::string> seen;
        for (const auto &s : e.inputs) {
            require(state(s).role != StateRole::Output, "arc from output state '" + s + "' into event '" + id + "'");
            require(seen.insert(s).second, "event '" + id + "' lists input '" + s + "' twice");
        }
        std::set<std::string> outs;
        for (const auto &s : e.outputs) {
            require(state(s).role != StateRole::Input, "arc from event '" + id + "' into input state '" + s + "'");
            require(!seen.count(s), "self-loop between event '" + id + "' and state '" + s + "'");
            require(outs.insert(s).second, "event '" + id + "' lists output '" + s + "' twice");
        }
        for (const auto &s : e.requires_empty) {
            state(s);
        }
        if (e.fn.table) {
            for (const auto &[in, out] : *e.fn.table) {
                require(in.size() == e.inputs.size() && out.size() == e.outputs.size(),
                        "table row arity does not match the arcs of event '" + id + "'");
                for (std::size_t k = 0; k < in.size(); k++) {
                    require(state(e.inputs[k]).colors.contains(in[k]),
                            "color " + in[k].to_string() + " is not in the color set of '" + e.inputs[k] + "'");
                }
                for (std::size_t k = 0; k < out.size(); k++) {
                    require(state(e.outputs[k]).colors.contains(out[k]),
                            "color " + out[k].to_string() + " is not in the color set of '" + e.outputs[k] + "'");
                }
            }
        }
    }
}

void validate_marking(const NetFragment &net, const Marking &m) {
    for (const auto &[s, c] : m) {
        require(net.state(s).colors.contains(c), "color " + c.to_string() + " is not allowed on '" + s + "'");
    }
}

std::optional<ColorTuple> input_colors(const NetFragment &net, const Marking &m, const std::string &event) {
    const Event &e = net.event(event);
    ColorTuple in;
    for (const auto &s : e.inputs) {
        auto it = m.find(s);
        if (it == m.end()) {
            return std::nullopt;
        }
        in.push_back(it->second);
    }
    return in;
}

namespace {

std::optional<ColorTuple> output_colors(const NetFragment &net, const Marking &m, const Event &e) {
    auto in = input_colors(net, m, e.id);
    if (!in) {
        return std::nullopt;
    }
    for (const auto &s : e.outputs) {
        if (m.count(s)) {
            return std::nullopt;
        }
    }
    for (const auto &s : e.requires_empty) {
        if (m.count(s)) {
            return std::nullopt;
        }
    }
    auto out = e.fn.apply(*in);
    if (!out) {
        return std::nullopt;
    }
    require(out->size() == e.outputs.size(), "color function of '" + e.id + "' returned the wrong arity");
    for (std::size_t k = 0; k < out->size(); k++) {
        if (!net.state(e.outputs[k]).colors.contains((*out)[k])) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace

bool is_enabled(const NetFragment &net, const Marking &m, const std::string &event) {
    return output_colors(net, m, net.event(event)).has_value();
}

std::set<std::string> enabled_events(const NetFragment &net, const Marking &m) {
    std::set<std::string> out;
    for (const auto &[id, e] : net.events()) {
        if (output_colors(net, m, e)) {
            out.insert(id);
        }
    }
    return out;
}

Marking fire(const NetFragment &net, const Marking &m, const std::string &event, Firing *record) {
    const Event &e = net.event(event);
    auto out = output_colors(net, m, e);
    if (!out) {
        fail(ErrorKind::NotEnabled, "event '" + event + "' is not enabled");
    }
    Marking next = m;
    ColorTuple consumed;
    for (const auto &s : e.inputs) {
        consumed.push_back(next.at(s));
        next.erase(s);
    }
    for (std::size_t k = 0; k < e.outputs.size(); k++) {
        next[e.outputs[k]] = (*out)[k];
    }
    if (record) {
        *record = Firing{event, std::move(consumed), *out};
    }
    return next;
}

Marking inject(const NetFragment &net, const Marking &m, const std::string &state, const Color &color) {
    const State &s = net.state(state);
    require(s.role == StateRole::Input, "tokens can only be injected into input states, not '" + state + "'");
    require(s.colors.contains(color), "color " + color.to_string() + " is not allowed on '" + state + "'");
    if (m.count(state)) {
        fail(ErrorKind::CapacityViolation, "input state '" + state + "' already holds a token");
    }
    Marking next = m;
    next[state] = color;
    return next;
}

std::pair<Marking, Color> extract(const NetFragment &net, const Marking &m, const std::string &state) {
    require(net.state(state).role == StateRole::Output,
            "tokens can only be extracted from output states, not '" + state + "'");
    auto it = m.find(state);
    if (it == m.end()) {
        fail(ErrorKind::NoToken, "output state '" + state + "' is empty");
    }
    Marking next = m;
    Color c = it->second;
    next.erase(state);
    return {next, c};
}

namespace {

void bad_partition(const std::string &message) {
    fail(ErrorKind::BadPartition, message);
}

/// Label of the block holding `c`, "*" for an unpartitioned state, or
/// nothing when the color falls outside every block.
std::optional<std::string> block_of(const ColorPartition &partition, const std::string &state, const Color &c) {
    auto it = partition.find(state);
    if (it == partition.end()) {
        return std::string("*");
    }
    for (const auto &block : it->second) {
        if (block.colors.count(c)) {
            return block.label;
        }
    }
    return std::nullopt;
}

std::string block_state(const std::string &state, const std::string &label) {
    return label == "*" ? state : state + "." + label;
}

std::vector<ColorTuple> enumerate_domain(const NetFragment &net, const Event &e) {
    std::vector<ColorTuple> out;
    if (e.fn.table) {
        for (const auto &[in, image] : *e.fn.table) {
            bool ok = in.size() == e.inputs.size();
            for (std::size_t k = 0; ok && k < in.size(); k++) {
                ok = net.state(e.inputs[k]).colors.contains(in[k]);
            }
            if (ok) {
                out.push_back(in);
            }
        }
        return out;
    }
    std::vector<std::vector<Color>> axes;
    for (const auto &s : e.inputs) {
        const auto &colors = net.state(s).colors.finite;
        if (!colors) {
            bad_partition("event '" + e.id + "' reads the open color set of '" + s +
                          "', so its domain cannot be enumerated");
        }
        axes.emplace_back(colors->begin(), colors->end());
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    for (const auto &axis : axes) {
        if (axis.empty()) {
            return out;
        }
    }
    while (true) {
        ColorTuple t;
        for (std::size_t k = 0; k < axes.size(); k++) {
            t.push_back(axes[k][idx[k]]);
        }
        if (e.fn.apply(t)) {
            out.push_back(t);
        }
        std::size_t k = 0;
        while (k < axes.size() && ++idx[k] == axes[k].size()) {
            idx[k] = 0;
            k++;
        }
        if (k == axes.size()) {
            break;
        }
    }
    return out;
}

}  // namespace

Marking Refinement::refine_marking(const Marking &m) const {
    Marking out;
    for (const auto &[s, c] : m) {
        auto label = block_of(partition, s, c);
        if (!label) {
            bad_partition("color " + c.to_string() + " on '" + s + "' is in no block");
        }
        out[block_state(s, *label)] = c;
    }
    return out;
}

Marking Refinement::fold_marking(const Marking &m) const {
    Marking out;
    for (const auto &[s, c] : m) {
        auto it = state_origin.find(s);
        require(it != state_origin.end(), "unknown refined state '" + s + "'");
        if (out.count(it->second)) {
            fail(ErrorKind::CapacityViolation, "two block states of '" + it->second + "' are marked");
        }
        out[it->second] = c;
    }
    return out;
}

Refinement refine_colors(const NetFragment &net, const ColorPartition &partition) {
    for (const auto &[s, blocks] : partition) {
        if (!net.has_state(s)) {
            bad_partition("partition names unknown state '" + s + "'");
        }
        const auto &colors = net.state(s).colors.finite;
        if (!colors) {
            bad_partition("state '" + s + "' has an open color set");
        }
        std::set<Color> covered;
        std::set<std::string> labels;
        for (const auto &block : blocks) {
            if (block.colors.empty() || block.label.empty() || block.label == "*") {
                bad_partition("blocks of '" + s + "' need a label and at least one color");
            }
            if (!labels.insert(block.label).second) {
                bad_partition("block label '" + block.label + "' repeats on '" + s + "'");
            }
            for (const auto &c : block.colors) {
                if (!colors->count(c)) {
                    bad_partition("color " + c.to_string() + " is not in the color set of '" + s + "'");
                }
                if (!covered.insert(c).second) {
                    bad_partition("blocks of '" + s + "' overlap at " + c.to_string());
                }
            }
        }
        if (covered.size() != colors->size()) {
            bad_partition("blocks of '" + s + "' do not cover its color set");
        }
    }

    Refinement r;
    r.partition = partition;
    std::map<std::string, std::vector<std::string>> pieces;
    for (const auto &[id, s] : net.states()) {
        auto it = partition.find(id);
        if (it == partition.end()) {
            r.net.add_state(id, s.role, s.colors);
            r.state_origin[id] = id;
            pieces[id] = {id};
            continue;
        }
        for (const auto &block : it->second) {
            std::string name = block_state(id, block.label);
            r.net.add_state(name, s.role, ColorSet::of(block.colors));
            r.state_origin[name] = id;
            pieces[id].push_back(name);
        }
    }

    for (const auto &[id, e] : net.events()) {
        bool touched = false;
        for (const auto &s : e.inputs) {
            touched |= partition.count(s) > 0;
        }
        for (const auto &s : e.outputs) {
            touched |= partition.count(s) > 0;
        }
        std::vector<std::string> extra;
        for (const auto &s : e.requires_empty) {
            extra.insert(extra.end(), pieces[s].begin(), pieces[s].end());
        }
        if (!touched) {
            Event copy = e;
            copy.requires_empty = extra;
            r.net.add_event(copy);
            r.event_origin[id] = id;
            continue;
        }
        std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> combos;
        for (const auto &in : enumerate_domain(net, e)) {
            auto out = e.fn.apply(in);
            if (!out || out->size() != e.outputs.size()) {
                continue;
            }
            std::vector<std::string> in_labels;
            std::vector<std::string> out_labels;
            bool ok = true;
            for (std::size_t k = 0; ok && k < in.size(); k++) {
                auto label = block_of(partition, e.inputs[k], in[k]);
                ok = label.has_value();
                if (ok) {
                    in_labels.push_back(*label);
                }
            }
            for (std::size_t k = 0; ok && k < out->size(); k++) {
                ok = net.state(e.outputs[k]).colors.contains((*out)[k]);
                auto label = block_of(partition, e.outputs[k], (*out)[k]);
                ok = ok && label.has_value();
                if (ok) {
                    out_labels.push_back(*label);
                }
            }
            if (ok) {
                combos.insert({in_labels, out_labels});
            }
        }
        if (combos.empty()) {
            r.dead_events[id] = e;
        }
        for (const auto &[in_labels, out_labels] : combos) {
            Event piece = e;
            piece.id = id + "<" + join(in_labels, ",") + "|" + join(out_labels, ",") + ">";
            piece.requires_empty = extra;
            for (std::size_t k = 0; k < e.inputs.size(); k++) {
                piece.inputs[k] = block_state(e.inputs[k], in_labels[k]);
            }
            for (std::size_t k = 0; k < e.outputs.size(); k++) {
                piece.outputs[k] = block_state(e.outputs[k], out_labels[k]);
                for (const auto &sibling : pieces[e.outputs[k]]) {
                    if (sibling != piece.outputs[k]) {
                        piece.requires_empty.push_back(sibling);
                    }
                }
            }
            if (e.fn.table) {
                std::map<ColorTuple, ColorTuple> rows;
                for (const auto &[in, image] : *e.fn.table) {
                    bool ok = in.size() == in_labels.size() && image.size() == out_labels.size();
                    for (std::size_t k = 0; ok && k < in.size(); k++) {
                        ok = block_of(partition, e.inputs[k], in[k]) == in_labels[k];
                    }
                    for (std::size_t k = 0; ok && k < image.size(); k++) {
                        ok = net.state(e.outputs[k]).colors.contains(image[k]) &&
                             block_of(partition, e.outputs[k], image[k]) == out_labels[k];
                    }
                    if (ok) {
                        rows[in] = image;
                    }
                }
                piece.fn = table_function(std::move(rows));
            }
            r.net.add_event(piece);
            r.event_origin[piece.id] = id;
        }
    }
    return r;
}

NetFragment fold_refinement(const Refinement &refinement) {
    const NetFragment &fine = refinement.net;
    NetFragment out;
    std::map<std::string, std::set<Color>> merged_colors;
    std::set<std::string> open_states;
    std::map<std::string, StateRole> roles;
    for (const auto &[id, s] : fine.states()) {
        const std::string &origin = refinement.state_origin.at(id);
        roles[origin] = s.role;
        if (s.colors.finite) {
            merged_colors[origin].insert(s.colors.finite->begin(), s.colors.finite->end());
        } else {
            open_states.insert(origin);
        }
    }
    for (const auto &[origin, role] : roles) {
        out.add_state(origin, role, open_states.count(origin) ? ColorSet::any() : ColorSet::of(merged_colors[origin]));
    }

    std::map<std::string, std::vector<const Event *>> groups;
    for (const auto &[id, e] : fine.events()) {
        groups[refinement.event_origin.at(id)].push_back(&e);
    }
    auto origin_of = [&](const std::string &s) {
        return refinement.state_origin.at(s);
    };
    for (const auto &[origin, members] : groups) {
        const Event &first = *members.front();
        Event merged;
        merged.id = origin;
        merged.phase = first.phase;
        for (const auto &s : first.inputs) {
            merged.inputs.push_back(origin_of(s));
        }
        for (const auto &s : first.outputs) {
            merged.outputs.push_back(origin_of(s));
        }
        std::set<std::string> arcs(merged.outputs.begin(), merged.outputs.end());
        std::set<std::string> extra;
        for (const auto &s : first.requires_empty) {
            if (!arcs.count(origin_of(s))) {
                extra.insert(origin_of(s));
            }
        }
        merged.requires_empty.assign(extra.begin(), extra.end());

        struct Piece {
            ColorFunction fn;
            std::vector<ColorSet> in_sets;
            std::vector<ColorSet> out_sets;
        };
        std::vector<Piece> parts;
        bool all_tables = true;
        for (const Event *e : members) {
            Piece p{e->fn, {}, {}};
            for (const auto &s : e->inputs) {
                p.in_sets.push_back(fine.state(s).colors);
            }
            for (const auto &s : e->outputs) {
                p.out_sets.push_back(fine.state(s).colors);
            }
            all_tables &= e->fn.table.has_value();
            parts.push_back(std::move(p));
        }
        auto apply = [parts](const ColorTuple &in) -> std::optional<ColorTuple> {
            for (const auto &p : parts) {
                if (in.size() != p.in_sets.size()) {
                    continue;
                }
                bool ok = true;
                for (std::size_t k = 0; ok && k < in.size(); k++) {
                    ok = p.in_sets[k].contains(in[k]);
                }
                if (!ok) {
                    continue;
                }
                auto out = p.fn.apply(in);
                if (!out || out->size() != p.out_sets.size()) {
                    continue;
                }
                for (std::size_t k = 0; ok && k < out->size(); k++) {
                    ok = p.out_sets[k].contains((*out)[k]);
                }
                if (ok) {
                    return out;
                }
            }
            return std::nullopt;
        };
        if (all_tables) {
            std::map<ColorTuple, ColorTuple> table;
            for (const auto &p : parts) {
                for (const auto &[in, image] : *p.fn.table) {
                    if (auto out = apply(in)) {
                        table[in] = *out;
                    }
                }
            }
            merged.fn = table_function(std::move(table));
        } else {
            merged.fn = first.fn;
            merged.fn.table.reset();
            merged.fn.apply = apply;
        }
        out.add_event(merged);
    }
    for (const auto &[id, e] : refinement.dead_events) {
        out.add_event(e);
    }
    return out;
}

NetFragment coarsen_colors(const NetFragment &net) {
    NetFragment out;
    for (const auto &[id, s] : net.states()) {
        out.add_state(id, s.role, ColorSet::black_only());
    }
    for (const auto &[id, e] : net.events()) {
        Event copy = e;
        copy.fn = black_function(e.outputs.size());
        out.add_event(copy);
    }
    return out;
}

Marking coarsen_marking(const Marking &m) {
    Marking out;
    for (const auto &[s, c] : m) {
        out[s] = Color::black();
    }
    return out;
}

NetFragment couple(const NetFragment &a, const NetFragment &b, const std::vector<SignalArc> &arcs) {
    NetFragment out;
    std::map<std::string, Event> events;
    for (const auto &[prefix, net] : {std::pair<std::string, const NetFragment *>{"A.", &a}, {"B.", &b}}) {
        for (const auto &[id, s] : net->states()) {
            out.add_state(prefix + id, s.role, s.colors);
        }
        for (const auto &[id, e] : net->events()) {
            Event copy = e;
            copy.id = prefix + id;
            for (auto *list : {&copy.inputs, &copy.outputs, &copy.requires_empty}) {
                for (auto &s : *list) {
                    s = prefix + s;
                }
            }
            events[copy.id] = copy;
        }
    }
    for (std::size_t k = 0; k < arcs.size(); k++) {
        const SignalArc &arc = arcs[k];
        std::string from = (arc.a_to_b ? "A." : "B.") + arc.from;
        std::string to = (arc.a_to_b ? "B." : "A.") + arc.to;
        require(events.count(from), "unknown signal source event '" + from + "'");
        require(events.count(to), "unknown signal target event '" + to + "'");
        if (events[from].phase != Phase::Tock) {
            fail(ErrorKind::BadPhase, "signal source '" + from + "' is not a tock event");
        }
        if (events[to].phase != Phase::Tick) {
            fail(ErrorKind::BadPhase, "signal target '" + to + "' is not a tick event");
        }
        std::string signal = "signal." + std::to_string(k);
        out.add_state(signal, StateRole::Internal);

        Event &src = events[from];
        src.outputs.push_back(signal);
        nlohmann::json emit = {{"inner", {{"name", src.fn.name}, {"params", src.fn.params}}}};
        ColorFunction inner = src.fn;
        src.fn.name = "signal.emit";
        src.fn.params = emit;
        src.fn.table.reset();
        src.fn.apply = [inner](const ColorTuple &in) -> std::optional<ColorTuple> {
            auto image = inner.apply(in);
            if (image && !image->empty()) {
                image->push_back(image->front());
            }
            return image;
        };

        Event &dst = events[to];
        dst.inputs.push_back(signal);
        nlohmann::json accept = {{"inner", {{"name", dst.fn.name}, {"params", dst.fn.params}}}};
        ColorFunction inner_dst = dst.fn;
        dst.fn.name = "signal.accept";
        dst.fn.params = accept;
        dst.fn.table.reset();
        dst.fn.apply = [inner_dst](const ColorTuple &in) -> std::optional<ColorTuple> {
            if (in.empty()) {
                return std::nullopt;
            }
            return inner_dst.apply(ColorTuple(in.begin(), in.end() - 1));
        };
    }
    for (auto &[id, e] : events) {
        out.add_event(std::move(e));
    }
    out.validate();
    return out;
}

}  // namespace guesslab
