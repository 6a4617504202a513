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

#ifndef GUESSLAB_COLOR_H
#define GUESSLAB_COLOR_H

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace guesslab {

/// A token color: the reserved empty color, the black color of uncolored
/// nets, an integer, a string, a byte string, or a tuple of colors.
class Color {
   public:
    enum class Kind { Empty, Black, Int, Str, Bytes, Tuple };

    Color() = default;
    static Color empty();
    static Color black();
    static Color integer(std::int64_t value);
    static Color text(std::string value);
    static Color bytes(std::string value);
    static Color tuple(std::vector<Color> items);

    Kind kind() const noexcept {
        return kind_;
    }
    bool is_empty() const noexcept {
        return kind_ == Kind::Empty;
    }
    /// Accessors raise InvalidNet when the kind does not match.
    std::int64_t as_int() const;
    const std::string &as_str() const;
    const std::string &as_bytes() const;
    const std::vector<Color> &items() const;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Color &a, const Color &b);
    friend bool operator==(const Color &a, const Color &b) {
        return (a <=> b) == 0;
    }

   private:
    Kind kind_ = Kind::Empty;
    std::int64_t int_ = 0;
    std::string str_;
    std::vector<Color> items_;
};

using ColorTuple = std::vector<Color>;

/// null = empty, true = black, integers, strings, {"bytes": "<hex>"}, and
/// arrays for tuples.
nlohmann::json color_to_json(const Color &c);
Color color_from_json(const nlohmann::json &j);
nlohmann::json color_tuple_to_json(const ColorTuple &t);
ColorTuple color_tuple_from_json(const nlohmann::json &j);

/// Finite color set, or the open set of all colors when `finite` is unset.
struct ColorSet {
    std::optional<std::set<Color>> finite;

    static ColorSet any() {
        return {};
    }
    static ColorSet of(std::set<Color> colors) {
        return {std::move(colors)};
    }
    static ColorSet black_only() {
        return of({Color::black()});
    }
    bool contains(const Color &c) const {
        return !finite.has_value() || finite->count(c) > 0;
    }
};

/// A partial function from input color tuples to output color tuples. An
/// absent result means the tuple lies outside the domain.
struct ColorFunction {
    std::string name;
    nlohmann::json params;
    std::function<std::optional<ColorTuple>(const ColorTuple &)> apply;
    /// Set for finite tables; lets refinement enumerate the domain.
    std::optional<std::map<ColorTuple, ColorTuple>> table;
};

ColorFunction identity_function();
/// Total; every output is black.
ColorFunction black_function(std::size_t output_arity);
ColorFunction table_function(std::map<ColorTuple, ColorTuple> table);

/// Built-in and registered color functions, addressed by name from net
/// files. Factories receive the function's "params" and the event's output
/// arity.
using ColorFunctionFactory = std::function<ColorFunction(const nlohmann::json &params, std::size_t output_arity)>;
void register_color_function(const std::string &name, ColorFunctionFactory factory);
ColorFunction make_color_function(const std::string &name, const nlohmann::json &params, std::size_t output_arity);
std::vector<std::string> registered_color_functions();

}  // namespace guesslab

#endif
