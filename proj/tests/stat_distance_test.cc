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

#include "guesslab/stat_distance.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace guesslab;
using guesslab::testing::random_distribution;
using guesslab::testing::random_measurement;

namespace {

/// Direct arccos form, used as the oracle for the stable implementation.
double arccos_form(const std::vector<double> &p, const std::vector<double> &q) {
    double bc = 0;
    for (std::size_t j = 0; j < p.size(); j++) {
        bc += std::sqrt(p[j] * q[j]);
    }
    return std::acos(std::min(1.0, bc));
}

Model state_model(const Command &b, const CVector &v, const CMatrix &u, const SpectralForm &m) {
    StateFn vf;
    UnitaryFn uf;
    MeasurementFn mf;
    vf.set(b, v);
    uf.set(b, u);
    mf.set(b, m);
    return Model(static_cast<std::size_t>(v.size()), vf, uf, mf);
}

}  // namespace

TEST(StatisticalDistance, examples) {
    std::vector<double> p{0.3, 0.7};
    ASSERT_EQ(statistical_distance(p, p), 0.0);
    ASSERT_NEAR(statistical_distance(std::vector<double>{1, 0}, std::vector<double>{0, 1}), std::numbers::pi / 2,
                1e-15);
    ASSERT_NEAR(statistical_distance(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}),
                std::acos(std::sqrt(0.5)), 1e-15);
    ASSERT_NEAR(std::acos(std::sqrt(0.5)), 0.7853981, 1e-7);
}

TEST(StatisticalDistance, agrees_with_arccos_form) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = 2 + trial % 7;
        auto p = random_distribution(rng, n);
        auto q = random_distribution(rng, n);
        ASSERT_NEAR(statistical_distance(p, q), arccos_form(p, q), 1e-7);
    }
}

TEST(StatisticalDistance, metric_properties) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 2 + trial % 7;
        auto p = random_distribution(rng, n);
        auto q = random_distribution(rng, n);
        auto r = random_distribution(rng, n);
        double pq = statistical_distance(p, q);
        ASSERT_GE(pq, 0.0);
        ASSERT_LE(pq, std::numbers::pi / 2 + 1e-15);
        ASSERT_EQ(pq, statistical_distance(q, p));
        ASSERT_LT(statistical_distance(p, p), 1e-12);
        ASSERT_LE(pq, statistical_distance(p, r) + statistical_distance(r, q) + 1e-12);
    }
}

TEST(StatisticalDistance, errors) {
    try {
        statistical_distance(std::vector<double>{1}, std::vector<double>{0.5, 0.5});
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::LengthMismatch);
    }
    ASSERT_THROW(statistical_distance(std::vector<double>{0.5, 0.6}, std::vector<double>{0.5, 0.5}), Error);
}

TEST(Indistinguishable, threshold_examples) {
    std::vector<double> a{1, 0};
    std::vector<double> half{0.5, 0.5};
    ASSERT_TRUE(indistinguishable_in_trials(half, half, 1000000));
    ASSERT_TRUE(indistinguishable_in_trials(a, half, 1));
    ASSERT_FALSE(indistinguishable_in_trials(a, half, 2));
    ASSERT_FALSE(indistinguishable_in_trials(a, std::vector<double>{0, 1}, 1));
    try {
        indistinguishable_in_trials(a, half, 0);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadSampleSize);
    }
}

TEST(VectorDistanceBound, examples) {
    CVector a(2);
    a << 1, 0;
    CVector b(2);
    b << 0, 1;
    CVector c(2);
    c << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    ASSERT_EQ(vector_distance_bound(a, a), 0.0);
    ASSERT_NEAR(vector_distance_bound(a, b), std::numbers::pi / 2, 1e-15);
    ASSERT_NEAR(vector_distance_bound(a, c), std::numbers::pi / 4, 1e-15);
    ASSERT_NEAR(vector_distance_bound(a, std::polar(1.0, 2.0) * a), 0.0, 1e-15);
    try {
        vector_distance_bound(a, CVector::Ones(3) / std::sqrt(3.0));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(VectorDistanceBound, bounds_distance_for_random_measurements) {
    std::mt19937_64 rng(3);
    Command b = Command::from_bits("0");
    for (int trial = 0; trial < 500; trial++) {
        std::size_t dim = 2 + trial % 5;
        CVector va = random_unit_vector(rng, dim);
        CVector vb = random_unit_vector(rng, dim);
        SpectralForm m = random_measurement(rng, dim, 1 + trial % dim);
        CMatrix id = CMatrix::Identity(dim, dim);
        auto [p, q] = aligned_distributions(state_model(b, va, id, m), state_model(b, vb, id, m), b);
        ASSERT_LE(statistical_distance(p, q), vector_distance_bound(va, vb) + 1e-9);
    }
}

TEST(VectorDistanceBound, loose_for_orthogonal_fits) {
    OutcomeRecord r;
    r.append_distinct(Command::from_bits("1"), 0.0, 3);
    r.append_distinct(Command::from_bits("1"), 1.0, 1);
    auto [a, b] = construct_orthogonal_pair(r);
    Command c = Command::from_bits("1");
    auto [p, q] = aligned_distributions(a, b, c);
    ASSERT_NEAR(statistical_distance(p, q), 0.0, 1e-12);
    ASSERT_NEAR(vector_distance_bound(a.v().at(c), b.v().at(c)), std::numbers::pi / 2, 1e-12);
}

TEST(WeightedModelDistance, identical_models_and_linearity) {
    Command b0 = Command::from_bits("0");
    Command b1 = Command::from_bits("1");
    CVector e0(2);
    e0 << 1, 0;
    auto build = [&](double t0, double t1) {
        StateFn v;
        UnitaryFn u;
        MeasurementFn m;
        for (auto [b, t] : {std::pair{b0, t0}, std::pair{b1, t1}}) {
            v.set(b, e0);
            u.set(b, rotation_y(t));
            m.set(b, computational_measurement({0, 1}));
        }
        return Model(2, v, u, m);
    };
    Model a = build(0.2, 1.0);
    Model c = build(0.9, 2.5);
    CommandWeights w = CommandWeights::uniform(a.commands());
    ASSERT_EQ(weighted_model_distance(a, a, w), 0.0);
    auto [p0, q0] = aligned_distributions(a, c, b0);
    auto [p1, q1] = aligned_distributions(a, c, b1);
    double d0 = statistical_distance(p0, q0);
    double d1 = statistical_distance(p1, q1);
    ASSERT_NEAR(weighted_model_distance(a, c, w), (d0 + d1) / 2, 1e-15);
    // For R_y rotations from |0> the angle is half the rotation difference.
    ASSERT_NEAR(d0, 0.35, 1e-12);
    ASSERT_NEAR(d1, 0.75, 1e-12);
}

TEST(WeightedModelDistance, fitting_model_against_its_record) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; trial++) {
        OutcomeRecord r = guesslab::testing::random_record(rng, 4, 5);
        Model m = construct_fitting_model(r, PhaseAssignment::random(r, trial), r.max_distinct() + 2);
        ASSERT_NEAR(weighted_model_distance(m, r, CommandWeights::uniform(r.commands())), 0.0, 1e-9);
    }
}

TEST(WeightedModelDistance, errors) {
    OutcomeRecord r;
    Command b = Command::from_bits("1");
    r.append_distinct(b, 0.0, 3);
    r.append_distinct(b, 1.0, 1);
    Model m = construct_fitting_model(r, {}, 2);
    OutcomeRecord other;
    other.append_distinct(b, 7.0, 1);
    try {
        weighted_model_distance(m, other, CommandWeights::uniform(other.commands()));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::SpectraMismatch);
    }
    CommandWeights w;
    w.w[Command::from_bits("0")] = 1.0;
    try {
        weighted_model_distance(m, m, w);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::CommandNotInSet);
    }
    Model shifted = construct_fitting_model(r, {}, 3);
    try {
        weighted_model_distance(m, shifted, CommandWeights::uniform(m.commands()));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::SpectraMismatch);
    }
}

TEST(SpectralNormDiff, closed_forms) {
    std::mt19937_64 rng(5);
    Command b;
    for (double theta : {0.1, 0.5, 1.3, 3.0}) {
        CMatrix u = random_unitary(rng, 3);
        UnitaryFn a;
        UnitaryFn c;
        a.set(b, u);
        c.set(b, std::polar(1.0, theta) * u);
        ASSERT_EQ(spectral_norm_diff(a, a, b), 0.0);
        ASSERT_NEAR(spectral_norm_diff(a, c, b), 2 * std::abs(std::sin(theta / 2)), 1e-12);
        UnitaryFn id;
        UnitaryFn diag;
        id.set(b, CMatrix::Identity(2, 2));
        CMatrix d = CMatrix::Identity(2, 2);
        d(1, 1) = std::polar(1.0, theta);
        diag.set(b, d);
        ASSERT_NEAR(spectral_norm_diff(id, diag, b), 2 * std::abs(std::sin(theta / 2)), 1e-12);
    }
    UnitaryFn small;
    small.set(b, CMatrix::Identity(2, 2));
    UnitaryFn big;
    big.set(b, CMatrix::Identity(3, 3));
    try {
        spectral_norm_diff(small, big, b);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(SpectralNormDiff, bounds_state_distance_for_random_pairs) {
    // For models differing only in U, d(Pr_a, Pr_b) <= eps over any measurement.
    std::mt19937_64 rng(6);
    Command b;
    for (int trial = 0; trial < 300; trial++) {
        std::size_t dim = 2 + trial % 3;
        CMatrix ua = random_unitary(rng, dim);
        CMatrix ub = ua * random_unitary(rng, dim);
        UnitaryFn fa;
        UnitaryFn fb;
        fa.set(b, ua);
        fb.set(b, ub);
        double eps = spectral_norm_diff(fa, fb, b);
        CVector v = random_unit_vector(rng, dim);
        ASSERT_LE(vector_distance_bound(ua * v, ub * v), eps + 1e-9);
        SpectralForm m = random_measurement(rng, dim, dim);
        auto [p, q] = aligned_distributions(state_model(b, v, ua, m), state_model(b, v, ub, m), b);
        ASSERT_LE(statistical_distance(p, q), eps + 1e-6);
    }
}

TEST(MinSampleSize, examples_and_monotonicity) {
    ASSERT_EQ(min_sample_size(0.1), 100u);
    ASSERT_EQ(min_sample_size(1.0), 1u);
    ASSERT_EQ(min_sample_size(0.05), 400u);
    ASSERT_EQ(min_sample_size(0.2), 25u);
    ASSERT_EQ(min_sample_size(0.025), 1600u);
    ASSERT_EQ(min_sample_size(2.0), 1u);
    ASSERT_EQ(min_sample_size(0.3), 12u);
    std::uint64_t prev = min_sample_size(0.001);
    for (double eps = 0.001; eps <= 2.0; eps *= 1.01) {
        std::uint64_t n = min_sample_size(eps);
        ASSERT_LE(n, prev);
        prev = n;
    }
    for (double bad : {0.0, -1.0, 2.5, std::nan("")}) {
        try {
            min_sample_size(bad);
            FAIL();
        } catch (const Error &e) {
            ASSERT_EQ(e.kind(), ErrorKind::BadEpsilon);
        }
    }
}

TEST(Discriminate, examples) {
    std::vector<double> p{0.9, 0.1};
    std::vector<double> q{0.5, 0.5};
    std::vector<std::uint64_t> n{90, 10};
    auto d = discriminate(n, p, q);
    ASSERT_NEAR(d.log_likelihood_ratio, 90 * std::log(1.8) + 10 * std::log(0.2), 1e-12);
    ASSERT_NEAR(d.log_likelihood_ratio, 36.8, 0.05);
    ASSERT_EQ(d.verdict, Verdict::FavorP);
    ASSERT_EQ(discriminate(n, q, q).verdict, Verdict::Undecided);
    ASSERT_EQ(discriminate(n, q, q).log_likelihood_ratio, 0.0);
    ASSERT_EQ(discriminate(n, q, p).verdict, Verdict::FavorQ);
    std::vector<std::uint64_t> big{900000, 100000};
    ASSERT_EQ(discriminate(big, p, std::vector<double>{0.89, 0.11}).verdict, Verdict::FavorP);
    std::vector<std::uint64_t> none{0, 0};
    try {
        discriminate(none, p, q);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadSampleSize);
    }
}

TEST(Discriminate, smoothing_keeps_ratio_finite) {
    std::vector<std::uint64_t> n{1, 0};
    auto d = discriminate(n, std::vector<double>{1, 0}, std::vector<double>{0, 1});
    ASSERT_NEAR(d.log_likelihood_ratio, std::log(1e12), 1e-9);
    ASSERT_EQ(d.verdict, Verdict::FavorP);
}
