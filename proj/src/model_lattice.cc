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

#include "guesslab/model_lattice.h"

#include <cmath>
#include <filesystem>
#include <limits>

namespace guesslab {

namespace {

constexpr double kPropertyTol = 1e-9;

void push_unique(std::vector<Model> &out, const Model &m) {
    for (const auto &x : out) {
        if (models_equal(x, m)) {
            return;
        }
    }
    out.push_back(m);
}

bool same_spectral_form(const SpectralForm &a, const SpectralForm &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t j = 0; j < a.size(); j++) {
        if (std::abs(a[j].eigenvalue - b[j].eigenvalue) > kPropertyTol ||
            max_abs_diff(a[j].projector, b[j].projector) > kPropertyTol) {
            return false;
        }
    }
    return true;
}

}  // namespace

ModelSet::ModelSet(std::vector<Model> members) {
    for (const auto &m : members) {
        push_unique(members_, m);
    }
}

ModelSet ModelSet::from_family(ParametricFamily family, std::vector<NarrowingPredicate> predicates) {
    ModelSet s;
    s.family_ = std::move(family);
    s.predicates_ = std::move(predicates);
    return s;
}

ModelSet ModelSet::materialize() const {
    if (materialized()) {
        return *this;
    }
    ModelSet out;
    for (const auto &params : family_->grid) {
        Model m = family_->generator(params);
        bool keep = true;
        for (const auto &p : predicates_) {
            if (!p.test(m)) {
                keep = false;
                break;
            }
        }
        if (keep) {
            push_unique(out.members_, m);
        }
    }
    out.predicates_ = predicates_;
    return out;
}

ModelSet ModelSet::narrow(NarrowingPredicate predicate) const {
    ModelSet out = *this;
    if (materialized()) {
        out.members_.clear();
        for (const auto &m : members_) {
            if (predicate.test(m)) {
                out.members_.push_back(m);
            }
        }
    }
    out.predicates_.push_back(std::move(predicate));
    return out;
}

const std::vector<Model> &ModelSet::members() const {
    if (!materialized()) {
        fail(ErrorKind::NotMaterialized, "parametric family '" + family_->generator_name +
                                             "' must be materialized on its grid first");
    }
    return members_;
}

bool ModelSet::contains(const Model &m) const {
    for (const auto &x : members()) {
        if (models_equal(x, m)) {
            return true;
        }
    }
    return false;
}

ModelSet meet(const ModelSet &a, const ModelSet &b) {
    std::vector<Model> out;
    for (const auto &m : a.members()) {
        if (b.contains(m)) {
            out.push_back(m);
        }
    }
    return ModelSet(std::move(out));
}

ModelSet join(const ModelSet &a, const ModelSet &b) {
    std::vector<Model> out = a.members();
    for (const auto &m : b.members()) {
        out.push_back(m);
    }
    return ModelSet(std::move(out));
}

bool same_members(const ModelSet &a, const ModelSet &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (const auto &m : a.members()) {
        if (!b.contains(m)) {
            return false;
        }
    }
    return true;
}

SplitFn fixed_width_split(std::size_t v_bits, std::size_t u_bits, std::size_t m_bits) {
    return [=](const Command &b) {
        if (b.size() != v_bits + u_bits + m_bits) {
            fail(ErrorKind::BadSplit, "command '" + b.bits() + "' does not have " +
                                          std::to_string(v_bits + u_bits + m_bits) + " bits");
        }
        return CommandSplit{b.slice(0, v_bits), b.slice(v_bits, u_bits), b.slice(v_bits + u_bits, m_bits)};
    };
}

bool check_property3(const Model &model, const SplitFn &split) {
    std::vector<std::pair<Command, CommandSplit>> parts;
    for (const auto &b : model.commands()) {
        CommandSplit s = split(b);
        if (s.v + s.u + s.m != b) {
            fail(ErrorKind::BadSplit, "split of '" + b.bits() + "' does not concatenate back to the command");
        }
        parts.emplace_back(b, std::move(s));
    }
    for (std::size_t i = 0; i < parts.size(); i++) {
        for (std::size_t k = i + 1; k < parts.size(); k++) {
            const auto &[b1, s1] = parts[i];
            const auto &[b2, s2] = parts[k];
            if (s1.v == s2.v && max_abs_diff(model.v().at(b1), model.v().at(b2)) > kPropertyTol) {
                return false;
            }
            if (s1.u == s2.u && max_abs_diff(model.u().at(b1), model.u().at(b2)) > kPropertyTol) {
                return false;
            }
            if (s1.m == s2.m && !same_spectral_form(model.m().at(b1), model.m().at(b2))) {
                return false;
            }
        }
    }
    return true;
}

bool check_property4(const UnitaryFn &u, const CommandSet &bu_set) {
    for (const auto &b : bu_set) {
        if (!u.contains(b)) {
            fail(ErrorKind::CommandNotInSet, "command '" + b.bits() + "' is outside the unitary's domain");
        }
    }
    for (const auto &b : bu_set) {
        for (std::size_t k = 0; k <= b.size(); k++) {
            Command b1 = b.slice(0, k);
            Command b2 = b.slice(k, b.size() - k);
            if (!bu_set.count(b1) || !bu_set.count(b2)) {
                continue;
            }
            // Note the reversal: the first command acts first.
            if (max_abs_diff(u.at(b), u.at(b2) * u.at(b1)) > kPropertyTol) {
                return false;
            }
        }
    }
    return true;
}

NarrowingPredicate property3_predicate(SplitFn split) {
    return {"property3", [split = std::move(split)](const Model &m) { return check_property3(m, split); }};
}

NarrowingPredicate property4_predicate(CommandSet bu_set) {
    return {"property4", [bu = std::move(bu_set)](const Model &m) {
                CommandSet present;
                for (const auto &b : bu) {
                    if (m.commands().count(b)) {
                        present.insert(b);
                    }
                }
                return check_property4(m.u(), present);
            }};
}

std::vector<double> fit_scores(const ModelSet &set, const OutcomeRecord &record, const CommandWeights &weights) {
    std::vector<double> out;
    for (const auto &m : set.members()) {
        out.push_back(weighted_model_distance(m, record, weights));
    }
    return out;
}

BestFit select_best_fit(const ModelSet &set, const OutcomeRecord &record, const CommandWeights &weights) {
    const auto &members = set.members();
    if (members.empty()) {
        fail(ErrorKind::EmptyModelSet, "cannot select from an empty model set");
    }
    auto scores = fit_scores(set, record, weights);
    BestFit best{0, scores[0]};
    for (std::size_t k = 1; k < scores.size(); k++) {
        if (scores[k] < best.score) {
            best = {k, scores[k]};
        }
    }
    return best;
}

namespace {

Model rotation_y_model(const Json &desc, const std::vector<double> &params) {
    if (params.size() != 1) {
        fail(ErrorKind::BadConfig, "rotation_y takes one parameter");
    }
    Command b = Command::from_hex(desc.value("command", std::string()));
    std::vector<double> eig = desc.value("eigenvalues", std::vector<double>{0.0, 1.0});
    if (eig.size() != 2) {
        fail(ErrorKind::BadConfig, "rotation_y needs two eigenvalues");
    }
    CVector v(2);
    v << 1, 0;
    StateFn vf;
    UnitaryFn uf;
    MeasurementFn mf;
    vf.set(b, v);
    uf.set(b, rotation_y(params[0]));
    mf.set(b, computational_measurement(eig));
    return Model(2, std::move(vf), std::move(uf), std::move(mf));
}

}  // namespace

ModelSet model_set_from_json(const Json &manifest, const std::string &base_dir) {
    try {
        if (manifest.contains("models")) {
            std::vector<Model> models;
            for (const auto &entry : manifest.at("models")) {
                if (entry.is_string()) {
                    auto path = std::filesystem::path(base_dir) / entry.get<std::string>();
                    Json j = read_json_file(path.string());
                    models.push_back(model_from_json(j.contains("model") ? j.at("model") : j));
                } else {
                    models.push_back(model_from_json(entry));
                }
            }
            return ModelSet(std::move(models));
        }
        const Json &desc = manifest.at("family");
        std::string name = desc.at("generator").get<std::string>();
        ParametricFamily family;
        family.generator_name = name;
        family.grid = desc.at("grid").get<std::vector<std::vector<double>>>();
        if (name == "rotation_y") {
            family.generator = [desc](const std::vector<double> &p) { return rotation_y_model(desc, p); };
        } else if (name == "phase_fit") {
            const Json &rec = desc.at("record");
            OutcomeRecord record = rec.is_string()
                                       ? record_from_json(read_json_file(
                                             (std::filesystem::path(base_dir) / rec.get<std::string>()).string()))
                                       : record_from_json(rec);
            std::size_t padding = desc.value("padding_dim", record.max_distinct());
            family.generator = [record, padding](const std::vector<double> &p) {
                PhaseAssignment phases;
                for (const auto &b : record.commands()) {
                    for (std::size_t j = 1; j <= p.size(); j++) {
                        phases.phi[{j, b}] = p[j - 1];
                    }
                }
                return construct_fitting_model(record, phases, padding);
            };
        } else {
            fail(ErrorKind::BadConfig, "unknown model family generator '" + name + "'");
        }
        return ModelSet::from_family(std::move(family));
    } catch (const Json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed model-set manifest: ") + e.what());
    }
}

}  // namespace guesslab
