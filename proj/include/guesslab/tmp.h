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

#ifndef GUESSLAB_TMP_H
#define GUESSLAB_TMP_H

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guesslab/color.h"
#include "guesslab/petri_net.h"

namespace guesslab {

enum class TmpSource { Tape, Scientist, Instrument };

/// One quintuple of a special machine's table. `read` is a symbol or "*"
/// for any symbol; `write` is a symbol, "" to leave the cell alone, or "$"
/// for the symbol just read. `emit` and `emit_instrument` work the same way
/// for the output buffers ("" emits nothing).
struct TmpRule {
    std::string state;
    std::string read;
    TmpSource source = TmpSource::Tape;
    std::string next;
    std::string write;
    char move = 'N';
    std::string emit;
    std::string emit_instrument;
};

/// {"start": s, "halt": [...], "rules": [{"state", "read", "src":
///   "tape"|"scientist"|"instrument", "next", "write", "move": "L"|"R"|"N",
///   "emit", "emit_instrument"}]}
struct TmpProgram {
    std::string start;
    std::set<std::string> halt;
    std::vector<TmpRule> rules;

    static TmpProgram from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;
};

/// Blank tape symbol.
inline constexpr char kBlank = '_';

struct TmpOutputs {
    Color scientist;
    Color instrument;
};

/// A Turing machine for process control: an FSM with a clocked register
/// bank, an unbounded tape, and input/output buffers toward the scientist
/// and the instruments. Each clock step is a tick (T1: latch inputs,
/// update state, tape and head, fill the output registers) followed by a
/// tock (T2: emit and clear the output registers).
///
/// Scientist tokens: EMPTY (idle), ["program", <table JSON text>, <tape>]
/// to load a special machine, "interrupt" to abandon the running one, and
/// ["data", <symbol>] for rules reading from the scientist. Instrument
/// tokens are ["data", <symbol>]. Anything T1 has no entry for is recorded
/// in the no-op log and changes nothing.
class Tmp {
   public:
    static constexpr const char *kStartState = "start";

    Tmp() = default;

    void tick(const Color &scientist, const Color &instrument);
    TmpOutputs tock();
    TmpOutputs step(const Color &scientist, const Color &instrument) {
        tick(scientist, instrument);
        return tock();
    }

    const std::string &state() const noexcept {
        return state_;
    }
    bool running() const noexcept {
        return program_.has_value() && !program_->halt.count(state_);
    }
    bool halted() const noexcept {
        return program_.has_value() && program_->halt.count(state_);
    }
    std::int64_t head() const noexcept {
        return head_;
    }
    char read(std::int64_t cell) const;
    /// Contents between the leftmost and rightmost non-blank cells.
    std::string tape() const;
    std::uint64_t memory_hash() const;
    const std::vector<std::string> &noop_log() const noexcept {
        return noop_log_;
    }

    /// Everything except the no-op log.
    nlohmann::json to_json() const;
    static Tmp from_json(const nlohmann::json &j);
    friend bool operator==(const Tmp &a, const Tmp &b);

   private:
    void load(const TmpProgram &program, const std::string &tape);
    void noop(const std::string &why);

    std::string state_ = kStartState;
    std::optional<TmpProgram> program_;
    std::map<std::int64_t, char> memory_;
    std::int64_t head_ = 0;
    Color out_scientist_;
    Color out_instrument_;
    std::vector<std::string> noop_log_;
};

Color program_token(const TmpProgram &program, const std::string &tape = "");
Color interrupt_token();
Color data_token(const std::string &symbol);

struct TmpRun {
    std::vector<Color> scientist_outputs;
    std::vector<Color> instrument_outputs;
    std::size_t steps = 0;
    bool halted = false;
    bool timed_out = false;
};

/// Injects `program` at step 0, then one scientist token per step from
/// `inputs` (EMPTY once they run out), until the loaded machine halts with
/// no inputs left or `max_steps` steps have run. Only non-EMPTY outputs
/// are collected.
TmpRun run_program(Tmp &tmp, const Color &program, const std::vector<Color> &inputs, std::size_t max_steps);

/// The machine as a net fragment: internal states "machine" (the whole TMP
/// as a color) and "latched", input states "scientist_in" and
/// "instrument_in", output states "scientist_out" and "instrument_out",
/// with tick and tock events running T1 and T2. Registers the "tmp.tick"
/// and "tmp.tock" color functions.
NetFragment utmp_fragment();
Color machine_color(const Tmp &tmp);
Tmp machine_from_color(const Color &c);
void register_tmp_color_functions();

}  // namespace guesslab

#endif
