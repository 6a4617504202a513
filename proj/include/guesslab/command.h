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

#ifndef GUESSLAB_COMMAND_H
#define GUESSLAB_COMMAND_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

namespace guesslab {

/// A finite binary string transmitted to the instruments. The empty string is
/// a valid command and is the identity of concatenation.
class Command {
   public:
    Command() = default;

    /// Parses a string of '0'/'1' characters.
    static Command from_bits(std::string_view bits);
    /// Big-endian encoding of `value` using exactly `width` bits.
    static Command from_uint(std::uint64_t value, std::size_t width);
    /// Inverse of `to_hex`.
    static Command from_hex(std::string_view text);

    std::size_t size() const noexcept {
        return bits_.size();
    }
    bool empty() const noexcept {
        return bits_.empty();
    }
    bool bit(std::size_t k) const;
    const std::string &bits() const noexcept {
        return bits_;
    }
    std::uint64_t to_uint() const;

    /// Hex digits of the bit string, most significant nibble first. Bit
    /// strings whose length is not a multiple of four are left-aligned in the
    /// last nibble and suffixed with "/<length>".
    std::string to_hex() const;

    Command slice(std::size_t offset, std::size_t length) const;

    friend Command operator+(const Command &a, const Command &b);
    friend bool operator==(const Command &a, const Command &b) = default;
    /// Shortlex: shorter strings first, then lexicographic.
    friend std::strong_ordering operator<=>(const Command &a, const Command &b);

   private:
    std::string bits_;
};

using CommandSet = std::set<Command>;

}  // namespace guesslab

#endif
