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

#ifndef GUESSLAB_MODEL_LATTICE_H
#define GUESSLAB_MODEL_LATTICE_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "guesslab/model_io.h"
#include "guesslab/qm_model.h"
#include "guesslab/stat_distance.h"

namespace guesslab {

struct NarrowingPredicate {
    std::string name;
    std::function<bool(const Model &)> test;
};

/// A generator over a finite parameter grid. Members are only available
/// after `ModelSet::materialize`.
struct ParametricFamily {
    std::string generator_name;
    std::function<Model(const std::vector<double> &)> generator;
    std::vector<std::vector<double>> grid;
};

/// A finite set of models, either listed explicitly or described by a
/// gridded family plus narrowing predicates. Membership is `models_equal`
/// within 1e-12; explicit sets keep first occurrences in insertion order.
class ModelSet {
   public:
    ModelSet() = default;
    explicit ModelSet(std::vector<Model> members);
    static ModelSet from_family(ParametricFamily family, std::vector<NarrowingPredicate> predicates = {});

    bool materialized() const noexcept {
        return !family_.has_value();
    }
    /// Enumerates the grid in order and keeps members passing every predicate.
    ModelSet materialize() const;
    /// Adds a predicate; explicit sets are filtered immediately.
    ModelSet narrow(NarrowingPredicate predicate) const;

    const std::vector<Model> &members() const;
    std::size_t size() const {
        return members().size();
    }
    bool contains(const Model &m) const;
    const std::vector<NarrowingPredicate> &predicates() const noexcept {
        return predicates_;
    }

   private:
    std::vector<Model> members_;
    std::optional<ParametricFamily> family_;
    std::vector<NarrowingPredicate> predicates_;
};

ModelSet meet(const ModelSet &a, const ModelSet &b);
ModelSet join(const ModelSet &a, const ModelSet &b);
/// Equality as sets (order ignored).
bool same_members(const ModelSet &a, const ModelSet &b);

struct CommandSplit {
    Command v;
    Command u;
    Command m;
};
using SplitFn = std::function<CommandSplit(const Command &)>;

/// b = b_v || b_U || b_M with fixed field widths.
SplitFn fixed_width_split(std::size_t v_bits, std::size_t u_bits, std::size_t m_bits);

/// v depends only on b_v, U only on b_U, M only on b_M (within 1e-9).
bool check_property3(const Model &model, const SplitFn &split);

/// U(b1 || b2) = U(b2) U(b1) within 1e-9 for every split of a member of
/// `bu_set` into two members of `bu_set`.
bool check_property4(const UnitaryFn &u, const CommandSet &bu_set);

NarrowingPredicate property3_predicate(SplitFn split);
NarrowingPredicate property4_predicate(CommandSet bu_set);

struct BestFit {
    std::size_t index;
    double score;
};

/// Weighted statistical distance of every member to the record's relative
/// frequencies, in member order.
std::vector<double> fit_scores(const ModelSet &set, const OutcomeRecord &record, const CommandWeights &weights);

/// Member with the smallest score; the first in enumeration order wins ties.
BestFit select_best_fit(const ModelSet &set, const OutcomeRecord &record, const CommandWeights &weights);

/// Manifest: {"models": [<model JSON or file path>, ...]} or
/// {"family": {"generator": name, "grid": [[...], ...], ...}}. Known
/// generators: "rotation_y" (params [theta]) and "phase_fit" (params are
/// phi(j, b) for j = 1.., applied to every command of "record").
ModelSet model_set_from_json(const Json &manifest, const std::string &base_dir = ".");

}  // namespace guesslab

#endif
