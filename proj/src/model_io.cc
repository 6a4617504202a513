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

#include "guesslab/model_io.h"

#include <fstream>
#include <sstream>

namespace guesslab {

namespace {

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        fail(ErrorKind::ParseError, "complex numbers are [re, im] pairs, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json complex_vector_to_json(const CVector &v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); k++) {
        out.push_back({v(k).real(), v(k).imag()});
    }
    return out;
}

CVector complex_vector_from_json(const Json &j) {
    if (!j.is_array()) {
        fail(ErrorKind::ParseError, "expected a list of complex numbers");
    }
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); k++) {
        v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
    }
    return v;
}

Json complex_matrix_to_json(const CMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        out.push_back(std::move(row));
    }
    return out;
}

CMatrix complex_matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        fail(ErrorKind::ParseError, "expected a non-empty list of matrix rows");
    }
    auto rows = static_cast<Eigen::Index>(j.size());
    auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            fail(ErrorKind::ParseError, "ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

Json model_to_json(const Model &model) {
    Json commands = Json::object();
    for (const auto &b : model.commands()) {
        Json m = Json::array();
        for (const auto &c : model.m().at(b)) {
            m.push_back({{"eigenvalue", c.eigenvalue}, {"projector", complex_matrix_to_json(c.projector)}});
        }
        commands[b.to_hex()] = {
            {"v", complex_vector_to_json(model.v().at(b))},
            {"u", complex_matrix_to_json(model.u().at(b))},
            {"m", std::move(m)},
        };
    }
    return {{"dim", model.dim()}, {"commands", std::move(commands)}};
}

Model model_from_json(const Json &j) {
    try {
        auto dim = j.at("dim").get<std::size_t>();
        StateFn v;
        UnitaryFn u;
        MeasurementFn m;
        for (const auto &[key, entry] : j.at("commands").items()) {
            Command b = Command::from_hex(key);
            v.set(b, complex_vector_from_json(entry.at("v")));
            u.set(b, complex_matrix_from_json(entry.at("u")));
            SpectralForm form;
            for (const auto &c : entry.at("m")) {
                form.push_back({c.at("eigenvalue").get<double>(), complex_matrix_from_json(c.at("projector"))});
            }
            m.set(b, std::move(form));
        }
        return Model(dim, std::move(v), std::move(u), std::move(m));
    } catch (const Json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed model JSON: ") + e.what());
    }
}

Json record_to_json(const OutcomeRecord &record) {
    Json out = Json::object();
    for (const auto &[b, list] : record) {
        Json entries = Json::array();
        for (const auto &t : list) {
            entries.push_back({{"lambda", t.value}, {"n", t.count}});
        }
        out[b.to_hex()] = std::move(entries);
    }
    return out;
}

OutcomeRecord record_from_json(const Json &j) {
    if (!j.is_object()) {
        fail(ErrorKind::ParseError, "outcome record must be a JSON object keyed by command");
    }
    OutcomeRecord record;
    try {
        for (const auto &[key, entries] : j.items()) {
            Command b = Command::from_hex(key);
            for (const auto &e : entries) {
                record.append_distinct(b, e.at("lambda").get<double>(), e.at("n").get<std::uint64_t>());
            }
        }
    } catch (const Json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed outcome record: ") + e.what());
    }
    return record;
}

Json parse_json_text(const std::string &text, const std::string &origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        // nlohmann reports a byte offset; translate it to line/column.
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); k++) {
            if (text[k] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        fail(ErrorKind::ParseError, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::ParseError, "cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

}  // namespace guesslab
