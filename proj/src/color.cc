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

#include "guesslab/color.h"

#include <mutex>

#include "guesslab/error.h"

namespace guesslab {

namespace {

int kind_rank(Color::Kind k) {
    return static_cast<int>(k);
}

std::string to_hex(const std::string &raw) {
    static const char *digits = "0123456789abcdef";
    std::string out;
    for (unsigned char ch : raw) {
        out.push_back(digits[ch >> 4]);
        out.push_back(digits[ch & 15]);
    }
    return out;
}

std::string from_hex(const std::string &hex) {
    if (hex.size() % 2 != 0) {
        fail(ErrorKind::ParseError, "odd-length byte string '" + hex + "'");
    }
    std::string out;
    for (std::size_t k = 0; k < hex.size(); k += 2) {
        out.push_back(static_cast<char>(std::stoi(hex.substr(k, 2), nullptr, 16)));
    }
    return out;
}

}  // namespace

Color Color::empty() {
    return Color();
}

Color Color::black() {
    Color c;
    c.kind_ = Kind::Black;
    return c;
}

Color Color::integer(std::int64_t value) {
    Color c;
    c.kind_ = Kind::Int;
    c.int_ = value;
    return c;
}

Color Color::text(std::string value) {
    Color c;
    c.kind_ = Kind::Str;
    c.str_ = std::move(value);
    return c;
}

Color Color::bytes(std::string value) {
    Color c;
    c.kind_ = Kind::Bytes;
    c.str_ = std::move(value);
    return c;
}

Color Color::tuple(std::vector<Color> items) {
    Color c;
    c.kind_ = Kind::Tuple;
    c.items_ = std::move(items);
    return c;
}

std::int64_t Color::as_int() const {
    if (kind_ != Kind::Int) {
        fail(ErrorKind::InvalidNet, "color " + to_string() + " is not an integer");
    }
    return int_;
}

const std::string &Color::as_str() const {
    if (kind_ != Kind::Str) {
        fail(ErrorKind::InvalidNet, "color " + to_string() + " is not a string");
    }
    return str_;
}

const std::string &Color::as_bytes() const {
    if (kind_ != Kind::Bytes) {
        fail(ErrorKind::InvalidNet, "color " + to_string() + " is not a byte string");
    }
    return str_;
}

const std::vector<Color> &Color::items() const {
    if (kind_ != Kind::Tuple) {
        fail(ErrorKind::InvalidNet, "color " + to_string() + " is not a tuple");
    }
    return items_;
}

std::string Color::to_string() const {
    return color_to_json(*this).dump();
}

std::strong_ordering operator<=>(const Color &a, const Color &b) {
    if (a.kind_ != b.kind_) {
        return kind_rank(a.kind_) <=> kind_rank(b.kind_);
    }
    switch (a.kind_) {
        case Color::Kind::Empty:
        case Color::Kind::Black:
            return std::strong_ordering::equal;
        case Color::Kind::Int:
            return a.int_ <=> b.int_;
        case Color::Kind::Str:
        case Color::Kind::Bytes:
            return a.str_.compare(b.str_) <=> 0;
        case Color::Kind::Tuple:
            break;
    }
    std::size_t n = std::min(a.items_.size(), b.items_.size());
    for (std::size_t k = 0; k < n; k++) {
        auto c = a.items_[k] <=> b.items_[k];
        if (c != 0) {
            return c;
        }
    }
    return a.items_.size() <=> b.items_.size();
}

nlohmann::json color_to_json(const Color &c) {
    switch (c.kind()) {
        case Color::Kind::Empty:
            return nullptr;
        case Color::Kind::Black:
            return true;
        case Color::Kind::Int:
            return c.as_int();
        case Color::Kind::Str:
            return c.as_str();
        case Color::Kind::Bytes:
            return {{"bytes", to_hex(c.as_bytes())}};
        case Color::Kind::Tuple:
            break;
    }
    return color_tuple_to_json(c.items());
}

Color color_from_json(const nlohmann::json &j) {
    if (j.is_null()) {
        return Color::empty();
    }
    if (j.is_boolean()) {
        if (!j.get<bool>()) {
            fail(ErrorKind::ParseError, "false is not a color");
        }
        return Color::black();
    }
    if (j.is_number_integer()) {
        return Color::integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return Color::text(j.get<std::string>());
    }
    if (j.is_object() && j.size() == 1 && j.contains("bytes")) {
        return Color::bytes(from_hex(j["bytes"].get<std::string>()));
    }
    if (j.is_array()) {
        return Color::tuple(color_tuple_from_json(j));
    }
    fail(ErrorKind::ParseError, "not a color: " + j.dump());
}

nlohmann::json color_tuple_to_json(const ColorTuple &t) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &c : t) {
        out.push_back(color_to_json(c));
    }
    return out;
}

ColorTuple color_tuple_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        fail(ErrorKind::ParseError, "expected a color tuple, got " + j.dump());
    }
    ColorTuple out;
    for (const auto &item : j) {
        out.push_back(color_from_json(item));
    }
    return out;
}

ColorFunction identity_function() {
    ColorFunction f;
    f.name = "identity";
    f.apply = [](const ColorTuple &in) -> std::optional<ColorTuple> {
        return in;
    };
    return f;
}

ColorFunction black_function(std::size_t output_arity) {
    ColorFunction f;
    f.name = "black";
    f.apply = [output_arity](const ColorTuple &) -> std::optional<ColorTuple> {
        return ColorTuple(output_arity, Color::black());
    };
    return f;
}

ColorFunction table_function(std::map<ColorTuple, ColorTuple> table) {
    ColorFunction f;
    f.name = "table";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[in, out] : table) {
        rows.push_back({color_tuple_to_json(in), color_tuple_to_json(out)});
    }
    f.params = {{"rows", rows}};
    f.table = table;
    f.apply = [table = std::move(table)](const ColorTuple &in) -> std::optional<ColorTuple> {
        auto it = table.find(in);
        if (it == table.end()) {
            return std::nullopt;
        }
        return it->second;
    };
    return f;
}

namespace {

std::mutex registry_mutex;

std::map<std::string, ColorFunctionFactory> &registry() {
    static std::map<std::string, ColorFunctionFactory> factories{
        {"identity", [](const nlohmann::json &, std::size_t) { return identity_function(); }},
        {"black", [](const nlohmann::json &, std::size_t arity) { return black_function(arity); }},
        {"table",
         [](const nlohmann::json &params, std::size_t) {
             std::map<ColorTuple, ColorTuple> table;
             for (const auto &row : params.at("rows")) {
                 if (!row.is_array() || row.size() != 2) {
                     fail(ErrorKind::ParseError, "table rows are [inputs, outputs] pairs");
                 }
                 table[color_tuple_from_json(row[0])] = color_tuple_from_json(row[1]);
             }
             return table_function(std::move(table));
         }},
        {"signal.emit",
         [](const nlohmann::json &params, std::size_t arity) {
             const auto &inner_spec = params.at("inner");
             ColorFunction inner = make_color_function(
                 inner_spec.at("name").get<std::string>(), inner_spec.value("params", nlohmann::json()), arity - 1);
             ColorFunction f;
             f.apply = [inner](const ColorTuple &in) -> std::optional<ColorTuple> {
                 auto out = inner.apply(in);
                 if (out && !out->empty()) {
                     out->push_back(out->front());
                 }
                 return out;
             };
             return f;
         }},
        {"signal.accept",
         [](const nlohmann::json &params, std::size_t arity) {
             const auto &inner_spec = params.at("inner");
             ColorFunction inner = make_color_function(
                 inner_spec.at("name").get<std::string>(), inner_spec.value("params", nlohmann::json()), arity);
             ColorFunction f;
             f.apply = [inner](const ColorTuple &in) -> std::optional<ColorTuple> {
                 if (in.empty()) {
                     return std::nullopt;
                 }
                 return inner.apply(ColorTuple(in.begin(), in.end() - 1));
             };
             return f;
         }},
    };
    return factories;
}

}  // namespace

void register_color_function(const std::string &name, ColorFunctionFactory factory) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    registry()[name] = std::move(factory);
}

ColorFunction make_color_function(const std::string &name, const nlohmann::json &params, std::size_t output_arity) {
    ColorFunctionFactory factory;
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry().find(name);
        if (it == registry().end()) {
            fail(ErrorKind::InvalidNet, "unknown color function '" + name + "'");
        }
        factory = it->second;
    }
    ColorFunction f = factory(params, output_arity);
    f.name = name;
    if (f.params.is_null()) {
        f.params = params;
    }
    return f;
}

std::vector<std::string> registered_color_functions() {
    std::lock_guard<std::mutex> lock(registry_mutex);
    std::vector<std::string> out;
    for (const auto &[name, factory] : registry()) {
        out.push_back(name);
    }
    return out;
}

}  // namespace guesslab
