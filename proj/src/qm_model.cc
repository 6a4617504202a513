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

#include "guesslab/qm_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace guesslab {

namespace {

std::string cmd_name(const Command &b) {
    return "'" + b.bits() + "'";
}

}  // namespace

void validate_spectral_form(const SpectralForm &form, std::size_t dim) {
    if (form.empty()) {
        fail(ErrorKind::InvalidModel, "measurement has no spectral components");
    }
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < form.size(); j++) {
        const auto &pj = form[j].projector;
        if (static_cast<std::size_t>(pj.rows()) != dim || static_cast<std::size_t>(pj.cols()) != dim) {
            fail(ErrorKind::DimensionMismatch, "projector " + std::to_string(j + 1) + " has wrong shape");
        }
        if (!std::isfinite(form[j].eigenvalue)) {
            fail(ErrorKind::InvalidModel, "non-finite eigenvalue");
        }
        if (!is_projector(pj)) {
            fail(ErrorKind::InvalidModel, "component " + std::to_string(j + 1) + " is not a projector");
        }
        for (std::size_t k = 0; k < j; k++) {
            if (form[k].eigenvalue == form[j].eigenvalue) {
                fail(ErrorKind::InvalidModel, "eigenvalues must be pairwise distinct");
            }
            if ((pj * form[k].projector).cwiseAbs().maxCoeff() > kUnitaryTol) {
                fail(ErrorKind::InvalidModel, "projectors " + std::to_string(k + 1) + " and " + std::to_string(j + 1) +
                                                  " are not orthogonal");
            }
        }
        sum += pj;
    }
    if (max_abs_diff(sum, CMatrix::Identity(dim, dim)) > kUnitaryTol) {
        fail(ErrorKind::InvalidModel, "projectors do not sum to the identity");
    }
}

SpectralForm computational_measurement(const std::vector<double> &eigenvalues) {
    std::size_t dim = eigenvalues.size();
    SpectralForm form;
    for (std::size_t j = 0; j < dim; j++) {
        CMatrix p = CMatrix::Zero(dim, dim);
        p(j, j) = 1;
        form.push_back({eigenvalues[j], std::move(p)});
    }
    return form;
}

CMatrix hermitian_operator(const SpectralForm &form) {
    if (form.empty()) {
        return {};
    }
    CMatrix m = CMatrix::Zero(form[0].projector.rows(), form[0].projector.cols());
    for (const auto &c : form) {
        m += c.eigenvalue * c.projector;
    }
    return m;
}

Model::Model(std::size_t dim, StateFn v, UnitaryFn u, MeasurementFn m)
    : dim_(dim), v_(std::move(v)), u_(std::move(u)), m_(std::move(m)), commands_(v_.commands()) {
    if (dim_ == 0) {
        fail(ErrorKind::InvalidModel, "Hilbert space dimension must be at least 1");
    }
    if (u_.commands() != commands_ || m_.commands() != commands_) {
        fail(ErrorKind::InvalidModel, "state, unitary and measurement functions must share one command set");
    }
    for (const auto &b : commands_) {
        const CVector &vb = v_.at(b);
        if (static_cast<std::size_t>(vb.size()) != dim_) {
            fail(ErrorKind::DimensionMismatch, "state vector for " + cmd_name(b) + " has wrong length");
        }
        if (std::abs(vb.norm() - 1.0) > kUnitaryTol) {
            fail(ErrorKind::InvalidModel, "state vector for " + cmd_name(b) + " is not normalized");
        }
        const CMatrix &ub = u_.at(b);
        if (static_cast<std::size_t>(ub.rows()) != dim_ || static_cast<std::size_t>(ub.cols()) != dim_) {
            fail(ErrorKind::DimensionMismatch, "unitary for " + cmd_name(b) + " has wrong shape");
        }
        if (!is_unitary(ub)) {
            fail(ErrorKind::InvalidModel, "U(" + b.bits() + ") is not unitary");
        }
        validate_spectral_form(m_.at(b), dim_);
    }
}

bool models_equal(const Model &a, const Model &b, double tol) {
    if (a.dim() != b.dim() || a.commands() != b.commands()) {
        return false;
    }
    for (const auto &c : a.commands()) {
        if (max_abs_diff(a.v().at(c), b.v().at(c)) > tol || max_abs_diff(a.u().at(c), b.u().at(c)) > tol) {
            return false;
        }
        const auto &ma = a.m().at(c);
        const auto &mb = b.m().at(c);
        if (ma.size() != mb.size()) {
            return false;
        }
        for (std::size_t j = 0; j < ma.size(); j++) {
            if (std::abs(ma[j].eigenvalue - mb[j].eigenvalue) > tol ||
                max_abs_diff(ma[j].projector, mb[j].projector) > tol) {
                return false;
            }
        }
    }
    return true;
}

void OutcomeRecord::add(const Command &b, double value, std::uint64_t count) {
    if (count == 0) {
        return;
    }
    auto &list = tallies_[b];
    for (auto &t : list) {
        if (t.value == value) {
            t.count += count;
            return;
        }
    }
    list.push_back({value, count});
}

void OutcomeRecord::append_distinct(const Command &b, double value, std::uint64_t count) {
    if (count == 0) {
        fail(ErrorKind::InvalidRecord, "outcome counts must be at least 1");
    }
    if (!std::isfinite(value)) {
        fail(ErrorKind::InvalidRecord, "outcome values must be finite");
    }
    auto &list = tallies_[b];
    for (const auto &t : list) {
        if (t.value == value) {
            fail(ErrorKind::InvalidRecord, "duplicate outcome value " + std::to_string(value) + " for command " +
                                               cmd_name(b));
        }
    }
    list.push_back({value, count});
}

CommandSet OutcomeRecord::commands() const {
    CommandSet out;
    for (const auto &[b, _] : tallies_) {
        out.insert(b);
    }
    return out;
}

const std::vector<OutcomeTally> &OutcomeRecord::tallies(const Command &b) const {
    auto it = tallies_.find(b);
    if (it == tallies_.end()) {
        fail(ErrorKind::CommandNotInSet, "no outcomes recorded for command " + cmd_name(b));
    }
    return it->second;
}

std::uint64_t OutcomeRecord::total(const Command &b) const {
    std::uint64_t n = 0;
    for (const auto &t : tallies(b)) {
        n += t.count;
    }
    return n;
}

std::size_t OutcomeRecord::max_distinct() const {
    std::size_t m = 0;
    for (const auto &[_, list] : tallies_) {
        m = std::max(m, list.size());
    }
    return m;
}

double OutcomeRecord::frequency(const Command &b, std::size_t j) const {
    const auto &list = tallies(b);
    if (j < 1 || j > list.size()) {
        fail(ErrorKind::BadOutcomeIndex, "outcome index " + std::to_string(j) + " out of range");
    }
    return static_cast<double>(list[j - 1].count) / static_cast<double>(total(b));
}

double PhaseAssignment::phase(std::size_t j, const Command &b) const {
    auto it = phi.find({j, b});
    return it == phi.end() ? 0.0 : it->second;
}

double PhaseAssignment::padding(std::size_t j, const Command &b, const std::vector<OutcomeTally> &recorded) const {
    auto it = mu.find({j, b});
    if (it != mu.end()) {
        return it->second;
    }
    double top = recorded.empty() ? 0.0 : recorded[0].value;
    for (const auto &t : recorded) {
        top = std::max(top, t.value);
    }
    return top + static_cast<double>(j - recorded.size());
}

PhaseAssignment PhaseAssignment::random(const OutcomeRecord &record, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PhaseAssignment out;
    for (const auto &[b, list] : record) {
        for (std::size_t j = 1; j <= list.size(); j++) {
            out.phi[{j, b}] = 2 * std::numbers::pi * uniform01(rng);
        }
    }
    return out;
}

double outcome_probability(const Model &model, const Command &b, std::size_t j) {
    const auto &form = model.m().at(b);
    if (j < 1 || j > form.size()) {
        fail(ErrorKind::BadOutcomeIndex, "outcome index " + std::to_string(j) + " out of range 1.." +
                                             std::to_string(form.size()));
    }
    CVector x = model.u().at(b) * model.v().at(b);
    double p = x.dot(form[j - 1].projector * x).real();
    if (p < 0.0 && p >= -kProbabilityTol) {
        p = 0.0;
    } else if (p > 1.0 && p <= 1.0 + kProbabilityTol) {
        p = 1.0;
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorKind::InvalidModel, "probability " + std::to_string(p) + " outside [0, 1]");
    }
    return p;
}

std::vector<double> outcome_distribution(const Model &model, const Command &b) {
    std::vector<double> out;
    std::size_t n = model.outcome_count(b);
    for (std::size_t j = 1; j <= n; j++) {
        out.push_back(outcome_probability(model, b, j));
    }
    return out;
}

Model reduce_model(const Model &model) {
    StateFn v;
    UnitaryFn u;
    CMatrix id = CMatrix::Identity(model.dim(), model.dim());
    for (const auto &b : model.commands()) {
        v.set(b, model.u().at(b) * model.v().at(b));
        u.set(b, id);
    }
    return Model(model.dim(), std::move(v), std::move(u), model.m());
}

Model apply_equivalence(const Model &model, const UnitaryFn &q) {
    StateFn v;
    UnitaryFn u;
    MeasurementFn m;
    for (const auto &b : model.commands()) {
        const CMatrix &qb = q.at(b);
        if (static_cast<std::size_t>(qb.rows()) != model.dim() || static_cast<std::size_t>(qb.cols()) != model.dim()) {
            fail(ErrorKind::DimensionMismatch, "Q(" + b.bits() + ") does not match the model dimension");
        }
        if (!is_unitary(qb)) {
            fail(ErrorKind::NotUnitary, "Q(" + b.bits() + ") is not unitary");
        }
        CMatrix qd = qb.adjoint();
        v.set(b, qb * model.v().at(b));
        u.set(b, qb * model.u().at(b) * qd);
        SpectralForm form;
        for (const auto &c : model.m().at(b)) {
            form.push_back({c.eigenvalue, qb * c.projector * qd});
        }
        m.set(b, std::move(form));
    }
    return Model(model.dim(), std::move(v), std::move(u), std::move(m));
}

namespace {

void check_record(const OutcomeRecord &record) {
    if (record.empty()) {
        fail(ErrorKind::InvalidRecord, "outcome record is empty");
    }
    for (const auto &[b, list] : record) {
        if (list.empty()) {
            fail(ErrorKind::InvalidRecord, "command " + cmd_name(b) + " has no outcomes");
        }
        for (std::size_t j = 0; j < list.size(); j++) {
            if (list[j].count == 0) {
                fail(ErrorKind::InvalidRecord, "outcome counts must be at least 1");
            }
            for (std::size_t k = 0; k < j; k++) {
                if (list[k].value == list[j].value) {
                    fail(ErrorKind::InvalidRecord, "duplicate outcome value for command " + cmd_name(b));
                }
            }
        }
    }
}

/// Padding eigenvalues must keep every eigenvalue of M(b) distinct.
void check_padding_value(double mu, const Command &b, const std::vector<double> &taken) {
    if (!std::isfinite(mu)) {
        fail(ErrorKind::InvalidPadding, "padding eigenvalue for " + cmd_name(b) + " is not finite");
    }
    for (double t : taken) {
        if (t == mu) {
            fail(ErrorKind::InvalidPadding, "padding eigenvalue " + std::to_string(mu) +
                                                " collides with another eigenvalue of command " + cmd_name(b));
        }
    }
}

}  // namespace

Model construct_fitting_model(const OutcomeRecord &record, const PhaseAssignment &phases, std::size_t padding_dim) {
    check_record(record);
    if (padding_dim < record.max_distinct()) {
        fail(ErrorKind::DimensionMismatch, "padding dimension " + std::to_string(padding_dim) +
                                               " is smaller than the largest number of distinct outcomes");
    }
    StateFn v;
    UnitaryFn u;
    MeasurementFn m;
    CMatrix id = CMatrix::Identity(padding_dim, padding_dim);
    for (const auto &[b, list] : record) {
        double total = static_cast<double>(record.total(b));
        CVector vb = CVector::Zero(padding_dim);
        std::vector<double> eigenvalues;
        for (std::size_t j = 1; j <= list.size(); j++) {
            double amp = std::sqrt(static_cast<double>(list[j - 1].count) / total);
            vb(j - 1) = std::polar(amp, phases.phase(j, b));
            eigenvalues.push_back(list[j - 1].value);
        }
        for (std::size_t j = list.size() + 1; j <= padding_dim; j++) {
            double mu = phases.padding(j, b, list);
            check_padding_value(mu, b, eigenvalues);
            eigenvalues.push_back(mu);
        }
        v.set(b, vb / vb.norm());
        u.set(b, id);
        m.set(b, computational_measurement(eigenvalues));
    }
    return Model(padding_dim, std::move(v), std::move(u), std::move(m));
}

std::vector<std::size_t> eigenspace_offsets(const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> out;
    std::size_t at = 0;
    for (auto d : dims) {
        out.push_back(at);
        at += d;
    }
    return out;
}

CVector embed_in_eigenspace(const std::vector<std::size_t> &dims, std::size_t j, const CVector &local,
                            std::size_t space_dim) {
    if (j < 1 || j > dims.size()) {
        fail(ErrorKind::BadOutcomeIndex, "eigenspace index out of range");
    }
    if (static_cast<std::size_t>(local.size()) != dims[j - 1]) {
        fail(ErrorKind::DimensionMismatch, "local vector length does not match eigenspace dimension");
    }
    auto offsets = eigenspace_offsets(dims);
    if (offsets[j - 1] + dims[j - 1] > space_dim) {
        fail(ErrorKind::DimensionMismatch, "eigenspace overflows the configured space");
    }
    CVector out = CVector::Zero(space_dim);
    out.segment(offsets[j - 1], dims[j - 1]) = local;
    return out;
}

Model construct_fitting_model_general(const OutcomeRecord &record, const EigenspaceFit &fit) {
    check_record(record);
    const std::size_t dim = fit.space_dim;
    StateFn v;
    UnitaryFn u;
    MeasurementFn m;
    CMatrix id = CMatrix::Identity(dim, dim);
    for (const auto &[b, list] : record) {
        auto dims_it = fit.eigenspace_dims.find(b);
        auto w_it = fit.witness_vectors.find(b);
        if (dims_it == fit.eigenspace_dims.end() || w_it == fit.witness_vectors.end()) {
            fail(ErrorKind::InvalidRecord, "eigenspace layout missing for command " + cmd_name(b));
        }
        const auto &dims = dims_it->second;
        const auto &ws = w_it->second;
        if (dims.size() != list.size() || ws.size() != list.size()) {
            fail(ErrorKind::DimensionMismatch, "eigenspace layout for " + cmd_name(b) +
                                                   " must give one block and one vector per recorded outcome");
        }
        std::size_t used = 0;
        for (auto d : dims) {
            if (d < 2) {
                fail(ErrorKind::DimensionMismatch, "eigenspaces must have dimension at least 2");
            }
            used += d;
        }
        if (used > dim) {
            fail(ErrorKind::DimensionMismatch, "eigenspaces for " + cmd_name(b) + " need " + std::to_string(used) +
                                                   " dimensions but the space has " + std::to_string(dim));
        }
        auto offsets = eigenspace_offsets(dims);
        double total = static_cast<double>(record.total(b));
        CVector vb = CVector::Zero(dim);
        SpectralForm form;
        std::vector<double> eigenvalues;
        for (std::size_t j = 1; j <= list.size(); j++) {
            CMatrix pj = CMatrix::Zero(dim, dim);
            for (std::size_t k = 0; k < dims[j - 1]; k++) {
                pj(offsets[j - 1] + k, offsets[j - 1] + k) = 1;
            }
            const CVector &w = ws[j - 1];
            if (static_cast<std::size_t>(w.size()) != dim) {
                fail(ErrorKind::DimensionMismatch, "witness vector has wrong length");
            }
            if (std::abs(w.norm() - 1.0) > kUnitaryTol) {
                fail(ErrorKind::InvalidWitnessVector, "witness vector for outcome " + std::to_string(j) +
                                                          " of " + cmd_name(b) + " is not a unit vector");
            }
            CVector inside = pj * w;
            if ((w - inside).norm() > kUnitaryTol) {
                fail(ErrorKind::InvalidWitnessVector, "witness vector for outcome " + std::to_string(j) +
                                                          " of " + cmd_name(b) + " leaves its eigenspace");
            }
            // Exact unit vector inside the block so the fit holds to rounding.
            inside /= inside.norm();
            vb += std::sqrt(static_cast<double>(list[j - 1].count) / total) * inside;
            eigenvalues.push_back(list[j - 1].value);
            form.push_back({list[j - 1].value, std::move(pj)});
        }
        if (used < dim) {
            double mu = fit.padding.padding(list.size() + 1, b, list);
            check_padding_value(mu, b, eigenvalues);
            CMatrix pad = CMatrix::Zero(dim, dim);
            for (std::size_t k = used; k < dim; k++) {
                pad(k, k) = 1;
            }
            form.push_back({mu, std::move(pad)});
        }
        v.set(b, vb / vb.norm());
        u.set(b, id);
        m.set(b, std::move(form));
    }
    return Model(dim, std::move(v), std::move(u), std::move(m));
}

std::pair<Model, Model> construct_orthogonal_pair(const OutcomeRecord &record) {
    check_record(record);
    EigenspaceFit alpha;
    alpha.space_dim = 2 * record.max_distinct();
    EigenspaceFit beta = alpha;
    for (const auto &[b, list] : record) {
        std::vector<std::size_t> dims(list.size(), 2);
        CVector first(2);
        first << 1, 0;
        CVector second(2);
        second << 0, 1;
        std::vector<CVector> wa;
        std::vector<CVector> wb;
        for (std::size_t j = 1; j <= list.size(); j++) {
            wa.push_back(embed_in_eigenspace(dims, j, first, alpha.space_dim));
            wb.push_back(embed_in_eigenspace(dims, j, second, alpha.space_dim));
        }
        alpha.eigenspace_dims[b] = dims;
        beta.eigenspace_dims[b] = dims;
        alpha.witness_vectors[b] = std::move(wa);
        beta.witness_vectors[b] = std::move(wb);
    }
    return {construct_fitting_model_general(record, alpha), construct_fitting_model_general(record, beta)};
}

namespace {

double projector_probability(const CVector &x, const CMatrix &p) {
    return x.dot(p * x).real();
}

}  // namespace

Witness distinguish_by_witness(const Model &a, const Model &b) {
    if (a.dim() != b.dim()) {
        fail(ErrorKind::DimensionMismatch, "models have different Hilbert space dimensions");
    }
    if (a.commands() != b.commands()) {
        fail(ErrorKind::CommandNotInSet, "models do not share a command set");
    }
    const std::size_t dim = a.dim();
    std::vector<CMatrix> family;
    for (std::size_t k = 0; k < dim; k++) {
        CMatrix p = CMatrix::Zero(dim, dim);
        p(k, k) = 1;
        family.push_back(std::move(p));
    }
    const Complex phases[] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    for (std::size_t k = 0; k < dim; k++) {
        for (std::size_t l = k + 1; l < dim; l++) {
            for (Complex ph : phases) {
                CVector w = CVector::Zero(dim);
                w(k) = 1 / std::sqrt(2.0);
                w(l) = ph / std::sqrt(2.0);
                family.push_back(w * w.adjoint());
            }
        }
    }

    Witness best;
    best.command = *a.commands().begin();
    const CMatrix *best_p = &family[0];
    bool first = true;
    for (const auto &c : a.commands()) {
        CVector xa = a.u().at(c) * a.v().at(c);
        CVector xb = b.u().at(c) * b.v().at(c);
        for (const auto &p : family) {
            double pa = projector_probability(xa, p);
            double pb = projector_probability(xb, p);
            double gap = std::abs(pa - pb);
            if (first || gap > best.gap) {
                first = false;
                best.gap = gap;
                best.command = c;
                best.probability_a = pa;
                best.probability_b = pb;
                best_p = &p;
            }
        }
    }
    SpectralForm form{{1.0, *best_p}, {0.0, CMatrix::Identity(dim, dim) - *best_p}};
    for (const auto &c : a.commands()) {
        best.measurement.set(c, form);
    }
    return best;
}

CMatrix density_matrix(const Model &model, const Command &b) {
    CVector x = model.u().at(b) * model.v().at(b);
    return x * x.adjoint();
}

}  // namespace guesslab
