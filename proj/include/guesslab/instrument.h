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

#ifndef GUESSLAB_INSTRUMENT_H
#define GUESSLAB_INSTRUMENT_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "guesslab/qm_model.h"

namespace guesslab {

/// L detectors each reporting one bit in each of K time intervals.
struct DetectorShape {
    std::size_t detectors = 1;
    std::size_t intervals = 1;

    std::size_t bits() const {
        return detectors * intervals;
    }
};

/// L*K characters '0'/'1', time-major: bit k*L + l is detector l during
/// interval k.
using RawRecord = std::string;

/// A simulated instrument holding a model the caller cannot read back.
/// Outcome j (1-based) of a trial is reported as detector j-1 firing in the
/// final interval and every other bit clear.
class Instrument {
   public:
    /// Raises BadConfig if some command has more outcomes than detectors.
    Instrument(Model true_model, DetectorShape shape, std::uint64_t seed);

    /// Raises CommandNotInSet for commands the instrument does not respond
    /// to and BadSampleSize for zero trials.
    std::vector<RawRecord> measure(const Command &b, std::size_t trials);

    const DetectorShape &shape() const noexcept {
        return shape_;
    }
    /// One line per call, "measure <command bits> <trials>".
    const std::vector<std::string> &access_log() const noexcept {
        return log_;
    }

   private:
    Model model_;
    DetectorShape shape_;
    std::mt19937_64 rng_;
    std::vector<std::string> log_;
};

RawRecord encode_one_hot(const DetectorShape &shape, std::size_t outcome);

enum class ParsePolicy {
    /// Each of the L*K bits is an outcome with value 0 or 1.
    PerBit,
    /// The whole record is one outcome, valued as a binary integer with the
    /// first bit most significant.
    PerRecord,
    /// One outcome per detector, valued as its K-bit time series read as a
    /// binary integer.
    PerDetector,
};

ParsePolicy parse_policy_from_name(const std::string &name);
std::string parse_policy_name(ParsePolicy policy);

struct OutcomeParser {
    ParsePolicy policy = ParsePolicy::PerRecord;
    DetectorShape shape;
};

/// Tallies the parsed outcome values of every record under command `b`.
/// Raises BadRecordShape for records of the wrong length or with
/// characters other than '0' and '1'.
OutcomeRecord parse_outcomes(const OutcomeParser &parser, const Command &b, const std::vector<RawRecord> &records);

}  // namespace guesslab

#endif
