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

#ifndef GUESSLAB_ERROR_H
#define GUESSLAB_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace guesslab {

enum class ErrorKind {
    CommandNotInSet,
    BadOutcomeIndex,
    DimensionMismatch,
    InvalidModel,
    InvalidRecord,
    InvalidPadding,
    InvalidWitnessVector,
    LengthMismatch,
    InvalidDistribution,
    BadSampleSize,
    BadEpsilon,
    SpectraMismatch,
    NotMaterialized,
    BadSplit,
    EmptyModelSet,
    InvalidNet,
    NotEnabled,
    CapacityViolation,
    NoToken,
    BadPartition,
    StateSpaceTooLarge,
    BadPhase,
    BadRecordShape,
    BadConfig,
    NotUnitary,
    ParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can branch on it without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace guesslab

#endif
