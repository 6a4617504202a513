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

#include "guesslab/tmp.h"

#include <mutex>

#include "guesslab/error.h"

namespace guesslab {

namespace {

TmpSource source_from_name(const std::string &name) {
    if (name == "tape") {
        return TmpSource::Tape;
    }
    if (name == "scientist") {
        return TmpSource::Scientist;
    }
    if (name == "instrument") {
        return TmpSource::Instrument;
    }
    fail(ErrorKind::ParseError, "unknown rule source '" + name + "'");
}

std::string source_name(TmpSource s) {
    switch (s) {
        case TmpSource::Tape:
            return "tape";
        case TmpSource::Scientist:
            return "scientist";
        case TmpSource::Instrument:
            return "instrument";
    }
    return "?";
}

/// The symbol carried by a ["data", s] token with a one-character s.
std::optional<char> data_symbol(const Color &c) {
    if (c.kind() != Color::Kind::Tuple || c.items().size() != 2) {
        return std::nullopt;
    }
    const Color &tag = c.items()[0];
    const Color &sym = c.items()[1];
    if (tag.kind() != Color::Kind::Str || tag.as_str() != "data" || sym.kind() != Color::Kind::Str ||
        sym.as_str().size() != 1) {
        return std::nullopt;
    }
    return sym.as_str()[0];
}

std::string substitute(const std::string &spec, char read) {
    return spec == "$" ? std::string(1, read) : spec;
}

}  // namespace

TmpProgram TmpProgram::from_json(const nlohmann::json &j) {
    try {
        TmpProgram p;
        p.start = j.at("start").get<std::string>();
        for (const auto &h : j.at("halt")) {
            p.halt.insert(h.get<std::string>());
        }
        for (const auto &r : j.at("rules")) {
            TmpRule rule;
            rule.state = r.at("state").get<std::string>();
            rule.read = r.at("read").get<std::string>();
            rule.source = source_from_name(r.value("src", "tape"));
            rule.next = r.at("next").get<std::string>();
            rule.write = r.value("write", "");
            std::string move = r.value("move", "N");
            if (move != "L" && move != "R" && move != "N") {
                fail(ErrorKind::ParseError, "head moves are L, R or N, got '" + move + "'");
            }
            rule.move = move[0];
            rule.emit = r.value("emit", "");
            rule.emit_instrument = r.value("emit_instrument", "");
            if (rule.read != "*" && rule.read.size() != 1) {
                fail(ErrorKind::ParseError, "rules read one symbol or '*', got '" + rule.read + "'");
            }
            if (rule.write.size() > 1) {
                fail(ErrorKind::ParseError, "rules write at most one symbol, got '" + rule.write + "'");
            }
            p.rules.push_back(rule);
        }
        return p;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed machine table: ") + e.what());
    }
}

nlohmann::json TmpProgram::to_json() const {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto &r : this->rules) {
        rules.push_back({{"state", r.state},
                         {"read", r.read},
                         {"src", source_name(r.source)},
                         {"next", r.next},
                         {"write", r.write},
                         {"move", std::string(1, r.move)},
                         {"emit", r.emit},
                         {"emit_instrument", r.emit_instrument}});
    }
    return {{"start", start}, {"halt", halt}, {"rules", rules}};
}

char Tmp::read(std::int64_t cell) const {
    auto it = memory_.find(cell);
    return it == memory_.end() ? kBlank : it->second;
}

std::string Tmp::tape() const {
    if (memory_.empty()) {
        return "";
    }
    std::string out;
    for (std::int64_t k = memory_.begin()->first; k <= memory_.rbegin()->first; k++) {
        out.push_back(read(k));
    }
    return out;
}

std::uint64_t Tmp::memory_hash() const {
    // FNV-1a over "cell:symbol;" entries.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string &s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    for (const auto &[cell, sym] : memory_) {
        mix(std::to_string(cell) + ":" + std::string(1, sym) + ";");
    }
    return h;
}

void Tmp::noop(const std::string &why) {
    noop_log_.push_back(why);
}

void Tmp::load(const TmpProgram &program, const std::string &tape) {
    program_ = program;
    state_ = program.start;
    memory_.clear();
    for (std::size_t k = 0; k < tape.size(); k++) {
        if (tape[k] != kBlank) {
            memory_[static_cast<std::int64_t>(k)] = tape[k];
        }
    }
    head_ = 0;
}

void Tmp::tick(const Color &scientist, const Color &instrument) {
    out_scientist_ = Color::empty();
    out_instrument_ = Color::empty();
    std::optional<char> from_scientist;
    if (!scientist.is_empty()) {
        if (scientist.kind() == Color::Kind::Str && scientist.as_str() == "interrupt") {
            if (!program_) {
                noop("interrupt with no program loaded");
            } else {
                program_.reset();
                state_ = kStartState;
            }
            return;
        }
        if (scientist.kind() == Color::Kind::Tuple && !scientist.items().empty() &&
            scientist.items()[0] == Color::text("program")) {
            const auto &items = scientist.items();
            try {
                if (items.size() < 2 || items.size() > 3 || items[1].kind() != Color::Kind::Str ||
                    (items.size() == 3 && items[2].kind() != Color::Kind::Str)) {
                    fail(ErrorKind::ParseError, "program tokens are [\"program\", table, tape]");
                }
                TmpProgram program = TmpProgram::from_json(nlohmann::json::parse(items[1].as_str()));
                Tmp before = *this;
                load(program, items.size() == 3 ? items[2].as_str() : "");
                if (*this == before) {
                    noop("program token reloads the current machine unchanged");
                }
            } catch (const std::exception &e) {
                noop(std::string("rejected program token: ") + e.what());
            }
            return;
        }
        from_scientist = data_symbol(scientist);
        if (!from_scientist) {
            noop("no entry for scientist token " + scientist.to_string());
        }
    }
    std::optional<char> from_instrument;
    if (!instrument.is_empty()) {
        from_instrument = data_symbol(instrument);
        if (!from_instrument) {
            noop("no entry for instrument token " + instrument.to_string());
        }
    }

    const TmpRule *rule = nullptr;
    char symbol = kBlank;
    if (running()) {
        for (const auto &r : program_->rules) {
            if (r.state != state_) {
                continue;
            }
            std::optional<char> offered;
            switch (r.source) {
                case TmpSource::Tape:
                    offered = read(head_);
                    break;
                case TmpSource::Scientist:
                    offered = from_scientist;
                    break;
                case TmpSource::Instrument:
                    offered = from_instrument;
                    break;
            }
            if (offered && (r.read == "*" || r.read[0] == *offered)) {
                rule = &r;
                symbol = *offered;
                break;
            }
        }
    }
    bool used_scientist = rule && rule->source == TmpSource::Scientist;
    bool used_instrument = rule && rule->source == TmpSource::Instrument;
    if (from_scientist && !used_scientist) {
        noop("scientist symbol '" + std::string(1, *from_scientist) + "' not read in state " + state_);
    }
    if (from_instrument && !used_instrument) {
        noop("instrument symbol '" + std::string(1, *from_instrument) + "' not read in state " + state_);
    }
    if (!rule) {
        return;
    }
    std::string written = substitute(rule->write, symbol);
    if (!written.empty()) {
        if (written[0] == kBlank) {
            memory_.erase(head_);
        } else {
            memory_[head_] = written[0];
        }
    }
    head_ += rule->move == 'R' ? 1 : rule->move == 'L' ? -1 : 0;
    std::string emitted = substitute(rule->emit, symbol);
    if (!emitted.empty()) {
        out_scientist_ = Color::text(emitted);
    }
    std::string sent = substitute(rule->emit_instrument, symbol);
    if (!sent.empty()) {
        out_instrument_ = Color::text(sent);
    }
    state_ = rule->next;
}

TmpOutputs Tmp::tock() {
    TmpOutputs out{out_scientist_, out_instrument_};
    out_scientist_ = Color::empty();
    out_instrument_ = Color::empty();
    return out;
}

nlohmann::json Tmp::to_json() const {
    nlohmann::json memory = nlohmann::json::object();
    for (const auto &[cell, sym] : memory_) {
        memory[std::to_string(cell)] = std::string(1, sym);
    }
    return {{"state", state_},
            {"program", program_ ? program_->to_json() : nlohmann::json()},
            {"memory", memory},
            {"head", head_},
            {"out", {color_to_json(out_scientist_), color_to_json(out_instrument_)}}};
}

Tmp Tmp::from_json(const nlohmann::json &j) {
    try {
        Tmp t;
        t.state_ = j.at("state").get<std::string>();
        if (!j.at("program").is_null()) {
            t.program_ = TmpProgram::from_json(j["program"]);
        }
        for (const auto &[cell, sym] : j.at("memory").items()) {
            t.memory_[std::stoll(cell)] = sym.get<std::string>().at(0);
        }
        t.head_ = j.at("head").get<std::int64_t>();
        t.out_scientist_ = color_from_json(j.at("out").at(0));
        t.out_instrument_ = color_from_json(j.at("out").at(1));
        return t;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed machine state: ") + e.what());
    }
}

bool operator==(const Tmp &a, const Tmp &b) {
    return a.to_json() == b.to_json();
}

Color program_token(const TmpProgram &program, const std::string &tape) {
    return Color::tuple({Color::text("program"), Color::text(program.to_json().dump()), Color::text(tape)});
}

Color interrupt_token() {
    return Color::text("interrupt");
}

Color data_token(const std::string &symbol) {
    return Color::tuple({Color::text("data"), Color::text(symbol)});
}

TmpRun run_program(Tmp &tmp, const Color &program, const std::vector<Color> &inputs, std::size_t max_steps) {
    TmpRun run;
    bool stopped = false;
    while (run.steps < max_steps) {
        Color token = run.steps == 0 ? program
                      : run.steps - 1 < inputs.size() ? inputs[run.steps - 1]
                                                      : Color::empty();
        TmpOutputs out = tmp.step(token, Color::empty());
        run.steps++;
        if (!out.scientist.is_empty()) {
            run.scientist_outputs.push_back(out.scientist);
        }
        if (!out.instrument.is_empty()) {
            run.instrument_outputs.push_back(out.instrument);
        }
        if (run.steps > inputs.size() && !tmp.running()) {
            stopped = true;
            break;
        }
    }
    run.halted = tmp.halted();
    run.timed_out = !stopped;
    return run;
}

Color machine_color(const Tmp &tmp) {
    return Color::text(tmp.to_json().dump());
}

Tmp machine_from_color(const Color &c) {
    return Tmp::from_json(nlohmann::json::parse(c.as_str()));
}

void register_tmp_color_functions() {
    static std::once_flag once;
    std::call_once(once, [] {
        register_color_function("tmp.tick", [](const nlohmann::json &, std::size_t) {
            ColorFunction f;
            f.apply = [](const ColorTuple &in) -> std::optional<ColorTuple> {
                if (in.size() != 3 || in[0].kind() != Color::Kind::Str) {
                    return std::nullopt;
                }
                Tmp tmp = machine_from_color(in[0]);
                tmp.tick(in[1], in[2]);
                return ColorTuple{machine_color(tmp)};
            };
            return f;
        });
        register_color_function("tmp.tock", [](const nlohmann::json &, std::size_t) {
            ColorFunction f;
            f.apply = [](const ColorTuple &in) -> std::optional<ColorTuple> {
                if (in.size() != 1 || in[0].kind() != Color::Kind::Str) {
                    return std::nullopt;
                }
                Tmp tmp = machine_from_color(in[0]);
                TmpOutputs out = tmp.tock();
                return ColorTuple{machine_color(tmp), out.scientist, out.instrument};
            };
            return f;
        });
    });
}

NetFragment utmp_fragment() {
    register_tmp_color_functions();
    NetFragment net;
    net.add_state("machine", StateRole::Internal);
    net.add_state("latched", StateRole::Internal);
    net.add_state("scientist_in", StateRole::Input);
    net.add_state("instrument_in", StateRole::Input);
    net.add_state("scientist_out", StateRole::Output);
    net.add_state("instrument_out", StateRole::Output);
    Event tick;
    tick.id = "tick";
    tick.inputs = {"machine", "scientist_in", "instrument_in"};
    tick.outputs = {"latched"};
    tick.fn = make_color_function("tmp.tick", nullptr, 1);
    tick.phase = Phase::Tick;
    Event tock;
    tock.id = "tock";
    tock.inputs = {"latched"};
    tock.outputs = {"machine", "scientist_out", "instrument_out"};
    tock.fn = make_color_function("tmp.tock", nullptr, 3);
    tock.phase = Phase::Tock;
    net.add_event(tick);
    net.add_event(tock);
    net.validate();
    return net;
}

}  // namespace guesslab
