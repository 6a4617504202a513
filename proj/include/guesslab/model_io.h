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

#ifndef GUESSLAB_MODEL_IO_H
#define GUESSLAB_MODEL_IO_H

#include <string>

#include "json.hpp"

#include "guesslab/qm_model.h"

namespace guesslab {

using Json = nlohmann::json;

/// Complex numbers are [re, im] pairs; matrices are row-major lists of rows.
Json complex_vector_to_json(const CVector &v);
CVector complex_vector_from_json(const Json &j);
Json complex_matrix_to_json(const CMatrix &m);
CMatrix complex_matrix_from_json(const Json &j);

/// {"dim": n, "commands": {"<command hex>": {"v": [...], "u": [...],
///   "m": [{"eigenvalue": x, "projector": [...]}, ...]}}}
Json model_to_json(const Model &model);
Model model_from_json(const Json &j);

/// {"<command hex>": [{"lambda": x, "n": count}, ...]}
Json record_to_json(const OutcomeRecord &record);
OutcomeRecord record_from_json(const Json &j);

/// Parses JSON text, raising ParseError with the position on failure.
Json parse_json_text(const std::string &text, const std::string &origin);
Json read_json_file(const std::string &path);

}  // namespace guesslab

#endif
