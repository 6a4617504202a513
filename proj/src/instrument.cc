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

#include "guesslab/instrument.h"

#include "guesslab/error.h"
#include "guesslab/linalg.h"

namespace guesslab {

Instrument::Instrument(Model true_model, DetectorShape shape, std::uint64_t seed)
    : model_(std::move(true_model)), shape_(shape), rng_(seed) {
    if (shape_.detectors == 0 || shape_.intervals == 0) {
        fail(ErrorKind::BadConfig, "detector shape needs at least one detector and one interval");
    }
    for (const auto &b : model_.commands()) {
        if (model_.outcome_count(b) > shape_.detectors) {
            fail(ErrorKind::BadConfig, "command '" + b.bits() + "' has more outcomes than detectors");
        }
    }
}

RawRecord encode_one_hot(const DetectorShape &shape, std::size_t outcome) {
    if (outcome < 1 || outcome > shape.detectors) {
        fail(ErrorKind::BadOutcomeIndex, "outcome " + std::to_string(outcome) + " has no detector");
    }
    RawRecord r(shape.bits(), '0');
    r[(shape.intervals - 1) * shape.detectors + (outcome - 1)] = '1';
    return r;
}

std::vector<RawRecord> Instrument::measure(const Command &b, std::size_t trials) {
    log_.push_back("measure " + b.bits() + " " + std::to_string(trials));
    if (trials == 0) {
        fail(ErrorKind::BadSampleSize, "at least one trial is needed");
    }
    auto p = outcome_distribution(model_, b);
    std::vector<RawRecord> out;
    out.reserve(trials);
    for (std::size_t t = 0; t < trials; t++) {
        double u = uniform01(rng_);
        std::size_t j = 0;
        double acc = p[0];
        while (u >= acc && j + 1 < p.size()) {
            acc += p[++j];
        }
        out.push_back(encode_one_hot(shape_, j + 1));
    }
    return out;
}

ParsePolicy parse_policy_from_name(const std::string &name) {
    if (name == "per-bit") {
        return ParsePolicy::PerBit;
    }
    if (name == "per-record") {
        return ParsePolicy::PerRecord;
    }
    if (name == "per-detector") {
        return ParsePolicy::PerDetector;
    }
    fail(ErrorKind::BadConfig, "unknown parser policy '" + name + "'");
}

std::string parse_policy_name(ParsePolicy policy) {
    switch (policy) {
        case ParsePolicy::PerBit:
            return "per-bit";
        case ParsePolicy::PerRecord:
            return "per-record";
        case ParsePolicy::PerDetector:
            return "per-detector";
    }
    return "?";
}

namespace {

double binary_value(const std::string &bits) {
    double v = 0;
    for (char ch : bits) {
        v = 2 * v + (ch == '1');
    }
    return v;
}

}  // namespace

OutcomeRecord parse_outcomes(const OutcomeParser &parser, const Command &b, const std::vector<RawRecord> &records) {
    const DetectorShape &shape = parser.shape;
    OutcomeRecord out;
    for (const auto &r : records) {
        if (r.size() != shape.bits() || r.find_first_not_of("01") != std::string::npos) {
            fail(ErrorKind::BadRecordShape, "expected " + std::to_string(shape.bits()) + " bits, got '" + r + "'");
        }
        switch (parser.policy) {
            case ParsePolicy::PerBit:
                for (char ch : r) {
                    out.add(b, ch == '1' ? 1.0 : 0.0, 1);
                }
                break;
            case ParsePolicy::PerRecord:
                out.add(b, binary_value(r), 1);
                break;
            case ParsePolicy::PerDetector:
                for (std::size_t l = 0; l < shape.detectors; l++) {
                    std::string series;
                    for (std::size_t k = 0; k < shape.intervals; k++) {
                        series.push_back(r[k * shape.detectors + l]);
                    }
                    out.add(b, binary_value(series), 1);
                }
                break;
        }
    }
    return out;
}

}  // namespace guesslab
