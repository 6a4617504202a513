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

#include "guesslab/error.h"

namespace guesslab {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CommandNotInSet:
            return "CommandNotInSet";
        case ErrorKind::BadOutcomeIndex:
            return "BadOutcomeIndex";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::InvalidModel:
            return "InvalidModel";
        case ErrorKind::InvalidRecord:
            return "InvalidRecord";
        case ErrorKind::InvalidPadding:
            return "InvalidPadding";
        case ErrorKind::InvalidWitnessVector:
            return "InvalidWitnessVector";
        case ErrorKind::LengthMismatch:
            return "LengthMismatch";
        case ErrorKind::InvalidDistribution:
            return "InvalidDistribution";
        case ErrorKind::BadSampleSize:
            return "BadSampleSize";
        case ErrorKind::BadEpsilon:
            return "BadEpsilon";
        case ErrorKind::SpectraMismatch:
            return "SpectraMismatch";
        case ErrorKind::NotMaterialized:
            return "NotMaterialized";
        case ErrorKind::BadSplit:
            return "BadSplit";
        case ErrorKind::EmptyModelSet:
            return "EmptyModelSet";
        case ErrorKind::InvalidNet:
            return "InvalidNet";
        case ErrorKind::NotEnabled:
            return "NotEnabled";
        case ErrorKind::CapacityViolation:
            return "CapacityViolation";
        case ErrorKind::NoToken:
            return "NoToken";
        case ErrorKind::BadPartition:
            return "BadPartition";
        case ErrorKind::StateSpaceTooLarge:
            return "StateSpaceTooLarge";
        case ErrorKind::BadPhase:
            return "BadPhase";
        case ErrorKind::BadRecordShape:
            return "BadRecordShape";
        case ErrorKind::BadConfig:
            return "BadConfig";
        case ErrorKind::NotUnitary:
            return "NotUnitary";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace guesslab
