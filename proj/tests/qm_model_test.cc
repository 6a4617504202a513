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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "guesslab/model_io.h"
#include "test_util.h"

using namespace guesslab;
using guesslab::testing::naive_sandwich;
using guesslab::testing::random_model;
using guesslab::testing::random_record;

namespace {

const Command kB = Command::from_bits("1");

Model single_command_model(const CVector &v, const CMatrix &u, const SpectralForm &m) {
    StateFn vf;
    UnitaryFn uf;
    MeasurementFn mf;
    vf.set(kB, v);
    uf.set(kB, u);
    mf.set(kB, m);
    return Model(static_cast<std::size_t>(v.size()), vf, uf, mf);
}

CVector e0() {
    CVector v(2);
    v << 1, 0;
    return v;
}

OutcomeRecord two_outcome_record(std::uint64_t n1, std::uint64_t n2) {
    OutcomeRecord r;
    r.append_distinct(kB, 0.0, n1);
    r.append_distinct(kB, 1.0, n2);
    return r;
}

PhaseAssignment phase_gap(double delta) {
    PhaseAssignment p;
    p.phi[{1, kB}] = 0.0;
    p.phi[{2, kB}] = delta;
    return p;
}

}  // namespace

TEST(OutcomeProbability, eigenstate) {
    Model m = single_command_model(e0(), CMatrix::Identity(2, 2), computational_measurement({0, 1}));
    ASSERT_EQ(outcome_probability(m, kB, 1), 1.0);
    ASSERT_EQ(outcome_probability(m, kB, 2), 0.0);
}

TEST(OutcomeProbability, equal_superposition) {
    CMatrix h(2, 2);
    double s = 1 / std::sqrt(2.0);
    h << s, s, s, -s;
    Model m = single_command_model(e0(), h, computational_measurement({0, 1}));
    ASSERT_NEAR(outcome_probability(m, kB, 1), 0.5, 1e-15);
    ASSERT_NEAR(outcome_probability(m, kB, 2), 0.5, 1e-15);
}

TEST(OutcomeProbability, matches_naive_triple_product) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; trial++) {
        Model m = random_model(rng, 4, 3, 3);
        for (const auto &b : m.commands()) {
            double total = 0;
            for (std::size_t j = 1; j <= m.outcome_count(b); j++) {
                double oracle = naive_sandwich(m.v().at(b), m.u().at(b), m.m().at(b)[j - 1].projector);
                double p = outcome_probability(m, b, j);
                ASSERT_NEAR(p, oracle, 1e-10);
                total += p;
            }
            ASSERT_NEAR(total, 1.0, 1e-9);
        }
    }
}

TEST(OutcomeProbability, errors) {
    Model m = single_command_model(e0(), CMatrix::Identity(2, 2), computational_measurement({0, 1}));
    try {
        outcome_probability(m, Command::from_bits("0"), 1);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::CommandNotInSet);
    }
    try {
        outcome_probability(m, kB, 3);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadOutcomeIndex);
    }
    try {
        outcome_probability(m, kB, 0);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadOutcomeIndex);
    }
}

TEST(Model, rejects_invalid_components) {
    CMatrix not_unitary = CMatrix::Identity(2, 2) * 2.0;
    ASSERT_THROW(single_command_model(e0(), not_unitary, computational_measurement({0, 1})), Error);
    CVector unnormalized(2);
    unnormalized << 1, 1;
    ASSERT_THROW(single_command_model(unnormalized, CMatrix::Identity(2, 2), computational_measurement({0, 1})),
                 Error);
    // Repeated eigenvalue would merge eigenspaces.
    ASSERT_THROW(single_command_model(e0(), CMatrix::Identity(2, 2), computational_measurement({1, 1})), Error);
    // Incomplete measurement.
    SpectralForm partial = computational_measurement({0, 1});
    partial.pop_back();
    ASSERT_THROW(single_command_model(e0(), CMatrix::Identity(2, 2), partial), Error);
}

TEST(ReduceModel, identity_unitary_is_unchanged) {
    std::mt19937_64 rng(3);
    Model r = reduce_model(random_model(rng, 3, 2, 2));
    ASSERT_TRUE(models_equal(reduce_model(r), r, 0.0));
}

TEST(ReduceModel, preserves_probabilities) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        Model m = random_model(rng, 3, 3, 3);
        Model r = reduce_model(m);
        for (const auto &b : m.commands()) {
            ASSERT_LE(max_abs_diff(r.u().at(b), CMatrix::Identity(3, 3)), 0.0);
            for (std::size_t j = 1; j <= m.outcome_count(b); j++) {
                ASSERT_NEAR(outcome_probability(r, b, j), outcome_probability(m, b, j), 1e-10);
            }
        }
    }
}

TEST(ReduceModel, permutation) {
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    Model r = reduce_model(single_command_model(e0(), swap, computational_measurement({0, 1})));
    CVector expected(2);
    expected << 0, 1;
    ASSERT_LE(max_abs_diff(r.v().at(kB), expected), 0.0);
}

TEST(ApplyEquivalence, identity_is_noop) {
    std::mt19937_64 rng(8);
    Model m = random_model(rng, 3, 2, 2);
    UnitaryFn q;
    for (const auto &b : m.commands()) {
        q.set(b, CMatrix::Identity(3, 3));
    }
    ASSERT_TRUE(models_equal(apply_equivalence(m, q), m, 1e-15));
}

TEST(ApplyEquivalence, random_q_preserves_probabilities) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; trial++) {
        std::size_t dim = 2 + trial % 5;
        Model m = random_model(rng, dim, 2, 2);
        UnitaryFn q;
        for (const auto &b : m.commands()) {
            q.set(b, random_unitary(rng, dim));
        }
        Model e = apply_equivalence(m, q);
        for (const auto &b : m.commands()) {
            for (std::size_t j = 1; j <= m.outcome_count(b); j++) {
                ASSERT_NEAR(outcome_probability(e, b, j), outcome_probability(m, b, j), 1e-10);
            }
        }
    }
}

TEST(ApplyEquivalence, global_phase) {
    std::mt19937_64 rng(2);
    Model m = random_model(rng, 3, 2, 3);
    UnitaryFn q;
    for (const auto &b : m.commands()) {
        q.set(b, std::polar(1.0, 0.7) * CMatrix::Identity(3, 3));
    }
    Model e = apply_equivalence(m, q);
    for (const auto &b : m.commands()) {
        for (std::size_t j = 1; j <= m.outcome_count(b); j++) {
            ASSERT_NEAR(outcome_probability(e, b, j), outcome_probability(m, b, j), 1e-10);
            ASSERT_LE(max_abs_diff(e.m().at(b)[j - 1].projector, m.m().at(b)[j - 1].projector), 1e-10);
        }
    }
}

TEST(ApplyEquivalence, dimension_mismatch) {
    std::mt19937_64 rng(2);
    Model m = random_model(rng, 3, 1, 2);
    UnitaryFn q;
    q.set(*m.commands().begin(), CMatrix::Identity(2, 2));
    try {
        apply_equivalence(m, q);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(FittingModel, three_to_one_record) {
    Model m = construct_fitting_model(two_outcome_record(3, 1), {}, 2);
    ASSERT_NEAR(outcome_probability(m, kB, 1), 0.75, 1e-12);
    ASSERT_NEAR(outcome_probability(m, kB, 2), 0.25, 1e-12);
}

TEST(FittingModel, single_outcome_record) {
    OutcomeRecord r;
    r.append_distinct(kB, 4.0, 7);
    PhaseAssignment p;
    p.phi[{1, kB}] = 1.1;
    Model m = construct_fitting_model(r, p, 3);
    ASSERT_NEAR(std::abs(m.v().at(kB)(0) - std::polar(1.0, 1.1)), 0.0, 1e-15);
    ASSERT_EQ(outcome_probability(m, kB, 1), 1.0);
    // Padding eigenvalues are distinct from the recorded one.
    ASSERT_EQ(m.outcome_count(kB), 3u);
}

TEST(FittingModel, phase_variants_differ_only_on_witness) {
    Model a = construct_fitting_model(two_outcome_record(1, 1), phase_gap(0.0), 2);
    Model b = construct_fitting_model(two_outcome_record(1, 1), phase_gap(0.9), 2);
    for (std::size_t j = 1; j <= 2; j++) {
        ASSERT_NEAR(outcome_probability(a, kB, j), outcome_probability(b, kB, j), 1e-12);
    }
    // Witness projector onto (|1> + |2>)/sqrt(2): cos^2(dphi/2) for each model.
    CVector w(2);
    w << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CMatrix p = w * w.adjoint();
    double pa = naive_sandwich(a.v().at(kB), a.u().at(kB), p);
    double pb = naive_sandwich(b.v().at(kB), b.u().at(kB), p);
    ASSERT_NEAR(pa, 1.0, 1e-12);
    ASSERT_NEAR(pb, std::pow(std::cos(0.45), 2), 1e-12);
    ASSERT_GT(distinguish_by_witness(a, b).gap, 1e-6);
}

TEST(FittingModel, invalid_inputs) {
    OutcomeRecord r;
    r.append_distinct(kB, 0.0, 1);
    try {
        r.append_distinct(kB, 0.0, 2);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::InvalidRecord);
    }
    PhaseAssignment p;
    p.mu[{2, kB}] = 0.0;
    try {
        construct_fitting_model(r, p, 2);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::InvalidPadding);
    }
    try {
        construct_fitting_model(OutcomeRecord{}, {}, 2);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::InvalidRecord);
    }
}

TEST(FittingModel, perfect_fit_on_random_records) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; trial++) {
        OutcomeRecord r = random_record(rng, 4, 5);
        Model m = construct_fitting_model(r, PhaseAssignment::random(r, trial), r.max_distinct() + 1);
        for (const auto &[b, list] : r) {
            for (std::size_t j = 1; j <= list.size(); j++) {
                ASSERT_LT(std::abs(outcome_probability(m, b, j) - r.frequency(b, j)), 1e-12);
            }
        }
    }
}

TEST(FittingModelGeneral, single_outcome_two_witness_choices) {
    OutcomeRecord r;
    r.append_distinct(kB, 1.0, 5);
    EigenspaceFit fit;
    fit.space_dim = 2;
    fit.eigenspace_dims[kB] = {2};
    CVector w1(2);
    w1 << 1, 0;
    CVector w2(2);
    w2 << 1 / std::sqrt(2.0), Complex(0, 1 / std::sqrt(2.0));
    fit.witness_vectors[kB] = {w1};
    Model a = construct_fitting_model_general(r, fit);
    fit.witness_vectors[kB] = {w2};
    Model b = construct_fitting_model_general(r, fit);
    ASSERT_NEAR(outcome_probability(a, kB, 1), 1.0, 1e-12);
    ASSERT_NEAR(outcome_probability(b, kB, 1), 1.0, 1e-12);
    ASSERT_NEAR(distinguish_by_witness(a, b).gap, 0.5, 1e-12);
}

TEST(FittingModelGeneral, balanced_record_forces_half) {
    OutcomeRecord r = two_outcome_record(1, 1);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; trial++) {
        EigenspaceFit fit;
        fit.space_dim = 5;
        std::vector<std::size_t> dims{2, 2};
        fit.eigenspace_dims[kB] = dims;
        fit.witness_vectors[kB] = {embed_in_eigenspace(dims, 1, random_unit_vector(rng, 2), 5),
                                   embed_in_eigenspace(dims, 2, random_unit_vector(rng, 2), 5)};
        Model m = construct_fitting_model_general(r, fit);
        ASSERT_NEAR(outcome_probability(m, kB, 1), 0.5, 1e-12);
        ASSERT_NEAR(outcome_probability(m, kB, 2), 0.5, 1e-12);
        ASSERT_EQ(m.outcome_count(kB), 3u);
    }
}

TEST(FittingModelGeneral, random_records_fit) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; trial++) {
        OutcomeRecord r = random_record(rng, 4, 5);
        EigenspaceFit fit;
        fit.space_dim = 3 * r.max_distinct() + 1;
        for (const auto &[b, list] : r) {
            std::vector<std::size_t> dims;
            for (std::size_t j = 0; j < list.size(); j++) {
                dims.push_back(2 + (j % 2));
            }
            std::vector<CVector> ws;
            for (std::size_t j = 1; j <= list.size(); j++) {
                ws.push_back(embed_in_eigenspace(dims, j, random_unit_vector(rng, dims[j - 1]), fit.space_dim));
            }
            fit.eigenspace_dims[b] = dims;
            fit.witness_vectors[b] = ws;
        }
        Model m = construct_fitting_model_general(r, fit);
        for (const auto &[b, list] : r) {
            for (std::size_t j = 1; j <= list.size(); j++) {
                ASSERT_LT(std::abs(outcome_probability(m, b, j) - r.frequency(b, j)), 1e-12);
            }
        }
    }
}

TEST(FittingModelGeneral, errors) {
    OutcomeRecord r;
    r.append_distinct(kB, 1.0, 5);
    EigenspaceFit fit;
    fit.space_dim = 3;
    fit.eigenspace_dims[kB] = {2};
    CVector outside(3);
    outside << 0, 0, 1;
    fit.witness_vectors[kB] = {outside};
    try {
        construct_fitting_model_general(r, fit);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::InvalidWitnessVector);
    }
    fit.eigenspace_dims[kB] = {4};
    CVector inside(3);
    inside << 1, 0, 0;
    fit.witness_vectors[kB] = {inside};
    try {
        construct_fitting_model_general(r, fit);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(OrthogonalPair, overlap_vanishes) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; trial++) {
        OutcomeRecord r = random_record(rng, 4, 5);
        auto [a, b] = construct_orthogonal_pair(r);
        for (const auto &[c, list] : r) {
            ASSERT_LT(std::abs(a.v().at(c).dot(b.v().at(c))), 1e-12);
            for (std::size_t j = 1; j <= list.size(); j++) {
                ASSERT_LT(std::abs(outcome_probability(a, c, j) - r.frequency(c, j)), 1e-12);
                ASSERT_LT(std::abs(outcome_probability(b, c, j) - r.frequency(c, j)), 1e-12);
            }
        }
    }
}

TEST(OrthogonalPair, single_outcome) {
    OutcomeRecord r;
    r.append_distinct(kB, 0.0, 3);
    auto [a, b] = construct_orthogonal_pair(r);
    ASSERT_NEAR(outcome_probability(a, kB, 1), 1.0, 1e-12);
    ASSERT_NEAR(outcome_probability(b, kB, 1), 1.0, 1e-12);
    ASSERT_LT(std::abs(a.v().at(kB).dot(b.v().at(kB))), 1e-12);
}

namespace {

/// Largest gap over the four witness phases for |v_a> = (1, 1)/sqrt(2) and
/// |v_b> = (1, e^{i delta})/sqrt(2): Pr(psi) = cos^2((delta - psi)/2).
double closed_form_witness_gap(double delta) {
    double best = 0;
    for (int k = 0; k < 4; k++) {
        double psi = k * std::numbers::pi / 2;
        double pa = std::pow(std::cos(psi / 2), 2);
        double pb = std::pow(std::cos((delta - psi) / 2), 2);
        best = std::max(best, std::abs(pa - pb));
    }
    // Basis projectors see 1/2 for both models.
    return best;
}

}  // namespace

TEST(Witness, identical_models) {
    std::mt19937_64 rng(1);
    Model m = random_model(rng, 3, 2, 2);
    ASSERT_NEAR(distinguish_by_witness(m, m).gap, 0.0, 1e-15);
}

TEST(Witness, phase_gaps_match_closed_form) {
    for (double delta : {std::numbers::pi, std::numbers::pi / 2, 0.3, 2.0}) {
        Model a = construct_fitting_model(two_outcome_record(1, 1), phase_gap(0.0), 2);
        Model b = construct_fitting_model(two_outcome_record(1, 1), phase_gap(delta), 2);
        ASSERT_NEAR(distinguish_by_witness(a, b).gap, closed_form_witness_gap(delta), 1e-12) << delta;
    }
    ASSERT_NEAR(closed_form_witness_gap(std::numbers::pi), 1.0, 1e-15);
    ASSERT_NEAR(closed_form_witness_gap(std::numbers::pi / 2), 0.5, 1e-15);
}

TEST(Witness, returned_measurement_reproduces_gap) {
    Model a = construct_fitting_model(two_outcome_record(2, 1), phase_gap(0.0), 3);
    Model b = construct_fitting_model(two_outcome_record(2, 1), phase_gap(1.0), 3);
    Witness w = distinguish_by_witness(a, b);
    const CMatrix &p = w.measurement.at(w.command)[0].projector;
    double pa = naive_sandwich(a.v().at(w.command), a.u().at(w.command), p);
    double pb = naive_sandwich(b.v().at(w.command), b.u().at(w.command), p);
    ASSERT_NEAR(std::abs(pa - pb), w.gap, 1e-12);
    validate_spectral_form(w.measurement.at(w.command), 3);
}

TEST(DensityMatrix, phases_hide_in_off_diagonals) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; trial++) {
        OutcomeRecord r = random_record(rng, 3, 4);
        PhaseAssignment pa = PhaseAssignment::random(r, 2 * trial);
        PhaseAssignment pb = PhaseAssignment::random(r, 2 * trial + 1);
        Model a = construct_fitting_model(r, pa, r.max_distinct());
        Model b = construct_fitting_model(r, pb, r.max_distinct());
        bool some_offdiag_differs = false;
        bool has_offdiag = false;
        for (const auto &[c, list] : r) {
            CMatrix ra = density_matrix(a, c);
            CMatrix rb = density_matrix(b, c);
            for (Eigen::Index k = 0; k < ra.rows(); k++) {
                ASSERT_NEAR(std::abs(ra(k, k) - rb(k, k)), 0.0, 1e-12);
                for (Eigen::Index l = k + 1; l < static_cast<Eigen::Index>(list.size()); l++) {
                    has_offdiag = true;
                    ASSERT_NEAR(std::abs(ra(k, l)), std::abs(rb(k, l)), 1e-12);
                    if (std::abs(std::arg(ra(k, l)) - std::arg(rb(k, l))) > 1e-6) {
                        some_offdiag_differs = true;
                    }
                }
            }
        }
        if (has_offdiag) {
            ASSERT_TRUE(some_offdiag_differs);
        }
    }
}

TEST(ModelIo, json_round_trip) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 5; trial++) {
        Model m = random_model(rng, 3, 3, 2);
        Model back = model_from_json(Json::parse(model_to_json(m).dump()));
        ASSERT_TRUE(models_equal(m, back, 1e-15));
        OutcomeRecord r = random_record(rng, 4, 5);
        OutcomeRecord rb = record_from_json(Json::parse(record_to_json(r).dump()));
        ASSERT_EQ(record_to_json(rb), record_to_json(r));
    }
}
