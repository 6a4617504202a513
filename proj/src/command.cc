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

#include "guesslab/command.h"

#include "guesslab/error.h"

namespace guesslab {

Command Command::from_bits(std::string_view bits) {
    Command c;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            fail(ErrorKind::ParseError, "command bits must be '0' or '1', got '" + std::string(bits) + "'");
        }
    }
    c.bits_ = std::string(bits);
    return c;
}

Command Command::from_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
        fail(ErrorKind::ParseError, "value does not fit in " + std::to_string(width) + " bits");
    }
    Command c;
    c.bits_.resize(width, '0');
    for (std::size_t k = 0; k < width && k < 64; k++) {
        if ((value >> k) & 1) {
            c.bits_[width - 1 - k] = '1';
        }
    }
    return c;
}

Command Command::from_hex(std::string_view text) {
    std::size_t length = std::string_view::npos;
    auto slash = text.find('/');
    std::string_view digits = text.substr(0, slash);
    if (slash != std::string_view::npos) {
        try {
            length = std::stoul(std::string(text.substr(slash + 1)));
        } catch (const std::exception &) {
            fail(ErrorKind::ParseError, "bad command length suffix in '" + std::string(text) + "'");
        }
    }
    std::string bits;
    for (char ch : digits) {
        int v;
        if (ch >= '0' && ch <= '9') {
            v = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            v = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            v = ch - 'A' + 10;
        } else {
            fail(ErrorKind::ParseError, "bad hex digit in command '" + std::string(text) + "'");
        }
        for (int k = 3; k >= 0; k--) {
            bits.push_back(((v >> k) & 1) ? '1' : '0');
        }
    }
    if (length != std::string_view::npos) {
        if (length > bits.size() || bits.size() - length >= 4) {
            fail(ErrorKind::ParseError, "command length suffix inconsistent with digits in '" + std::string(text) + "'");
        }
        if (bits.find('1', length) != std::string::npos) {
            fail(ErrorKind::ParseError, "nonzero padding bits in command '" + std::string(text) + "'");
        }
        bits.resize(length);
    }
    Command c;
    c.bits_ = std::move(bits);
    return c;
}

bool Command::bit(std::size_t k) const {
    return bits_.at(k) == '1';
}

std::uint64_t Command::to_uint() const {
    if (bits_.size() > 64) {
        fail(ErrorKind::ParseError, "command longer than 64 bits has no integer form");
    }
    std::uint64_t v = 0;
    for (char ch : bits_) {
        v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return v;
}

std::string Command::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t k = 0; k < bits_.size(); k += 4) {
        int v = 0;
        for (std::size_t i = 0; i < 4; i++) {
            v <<= 1;
            if (k + i < bits_.size() && bits_[k + i] == '1') {
                v |= 1;
            }
        }
        out.push_back(kDigits[v]);
    }
    if (bits_.size() % 4 != 0) {
        out += "/" + std::to_string(bits_.size());
    }
    return out;
}

Command Command::slice(std::size_t offset, std::size_t length) const {
    if (offset + length > bits_.size()) {
        fail(ErrorKind::BadSplit, "slice past end of command " + bits_);
    }
    Command c;
    c.bits_ = bits_.substr(offset, length);
    return c;
}

Command operator+(const Command &a, const Command &b) {
    Command c;
    c.bits_ = a.bits_ + b.bits_;
    return c;
}

std::strong_ordering operator<=>(const Command &a, const Command &b) {
    if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) {
        return c;
    }
    return a.bits_.compare(b.bits_) <=> 0;
}

}  // namespace guesslab
