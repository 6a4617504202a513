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

#include "guesslab/experiments.h"

#include <cmath>

#include "gtest/gtest.h"

#include "guesslab/error.h"
#include "guesslab/linalg.h"

using namespace guesslab;

namespace {

std::vector<CMatrix> random_gates(std::size_t count, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < count; k++) {
        out.push_back(random_unitary(rng, dim));
    }
    return out;
}

/// Smallest N reaching the target power for the phase-gate pair, from the
/// closed forms: under alpha every outcome is "+", so the test is right
/// once N ln(1/(1-q)) exceeds the threshold; under beta it is right as soon
/// as one "-" appears, which happens with probability 1 - (1-q)^N.
double analytic_trials(double eps, double power) {
    double q = eps * eps / 4;
    double alpha_side = std::ceil(kDefaultLrtThreshold / -std::log1p(-q));
    double beta_side = std::ceil(std::log(1 - power) / std::log1p(-q));
    return std::max(alpha_side, beta_side);
}

}  // namespace

TEST(GateError, zero_perturbation) {
    auto r = gate_sequence_error(random_gates(10, 2, 1), 0.0, 5, 2);
    ASSERT_EQ(r.measured, 0.0);
    ASSERT_EQ(r.bound, 0.0);
}

TEST(GateError, single_gate_is_exact) {
    auto r = gate_sequence_error(random_gates(1, 3, 3), 0.01, 50, 4);
    for (double d : r.draws) {
        ASSERT_NEAR(d, 0.01, 1e-12);
    }
    ASSERT_LE(r.measured, 0.01 + 1e-12);
}

TEST(GateError, twenty_gates) {
    auto r = gate_sequence_error(random_gates(20, 2, 5), 0.005, 100, 6);
    ASSERT_DOUBLE_EQ(r.bound, 0.1);
    ASSERT_LE(r.measured, 0.105);
}

TEST(GateError, first_order_bound_sweep) {
    for (std::size_t k : {1u, 5u, 20u, 50u}) {
        for (double eps : {0.001, 0.005, 0.01}) {
            auto r = gate_sequence_error(random_gates(k, 2, k), eps, 100, k * 7);
            ASSERT_LE(r.measured, 1.05 * static_cast<double>(k) * eps) << k << " " << eps;
        }
    }
}

TEST(GateError, aligned_perturbations_reach_the_bound) {
    // E_j = eps * U_j makes the product (1 + eps)^K times the ideal one, the
    // worst case the first-order bound describes.
    std::size_t k = 10;
    double eps = 0.001;
    auto gates = random_gates(k, 2, 9);
    CMatrix ideal = CMatrix::Identity(2, 2);
    CMatrix noisy = CMatrix::Identity(2, 2);
    for (const auto &g : gates) {
        ideal = g * ideal;
        noisy = (g + eps * g) * noisy;
    }
    double err = spectral_norm(noisy - ideal);
    ASSERT_NEAR(err, std::pow(1 + eps, 10) - 1, 1e-12);
    ASSERT_GE(err, static_cast<double>(k) * eps);
    ASSERT_LE(err, 1.05 * static_cast<double>(k) * eps);
}

TEST(GateError, errors) {
    std::vector<CMatrix> bad{CMatrix::Identity(2, 2), 2.0 * CMatrix::Identity(2, 2)};
    try {
        gate_sequence_error(bad, 0.01, 1, 1);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::NotUnitary);
    }
    std::vector<CMatrix> mixed{CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)};
    try {
        gate_sequence_error(mixed, 0.01, 1, 1);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
    try {
        gate_sequence_error(random_gates(2, 2, 1), -0.1, 1, 1);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadEpsilon);
    }
}

TEST(PhaseGatePair, closed_forms) {
    for (double eps : {0.025, 0.1, 0.5, 1.0, 2.0}) {
        ModelPair pair = phase_gate_pair(eps);
        ASSERT_NEAR(spectral_norm_diff(pair.alpha.u(), pair.beta.u(), pair.command), eps, 1e-12);
        auto p = outcome_distribution(pair.alpha, pair.command);
        auto q = outcome_distribution(pair.beta, pair.command);
        ASSERT_NEAR(p[0], 1.0, 1e-12);
        ASSERT_NEAR(p[1], 0.0, 1e-12);
        ASSERT_NEAR(q[1], eps * eps / 4, 1e-12);
        ASSERT_NEAR(statistical_distance(p, q), std::asin(eps / 2), 1e-9);
    }
}

TEST(SampleSize, example_point) {
    SampleSizeConfig cfg;
    cfg.epsilons = {0.1};
    cfg.seed = 7;
    auto result = sample_size_experiment(cfg);
    ASSERT_EQ(result.rows.size(), 1u);
    const auto &row = result.rows[0];
    ASSERT_EQ(row.n_bound, 100u);
    ASSERT_GE(row.n_empirical, 100u);
    ASSERT_GE(row.power, 0.95);
    ASSERT_FALSE(row.saturated);
    double expected = analytic_trials(0.1, 0.95);
    ASSERT_NEAR(static_cast<double>(row.n_empirical), expected, 0.15 * expected);
}

TEST(SampleSize, inverse_square_law) {
    SampleSizeConfig cfg;
    cfg.epsilons = {0.2, 0.1, 0.05, 0.025};
    cfg.seed = 11;
    auto result = sample_size_experiment(cfg);
    for (const auto &row : result.rows) {
        ASSERT_FALSE(row.saturated);
        ASSERT_GE(row.n_empirical, row.n_bound) << row.epsilon;
        double expected = analytic_trials(row.epsilon, 0.95);
        ASSERT_NEAR(static_cast<double>(row.n_empirical), expected, 0.15 * expected) << row.epsilon;
    }
    ASSERT_NEAR(result.slope, -2.0, 0.3);
}

TEST(SampleSize, antipodal_single_shot) {
    SampleSizeConfig cfg;
    cfg.epsilons = {2.0};
    auto result = sample_size_experiment(cfg);
    ASSERT_EQ(result.rows[0].n_bound, 1u);
    ASSERT_EQ(result.rows[0].n_empirical, 1u);
    ASSERT_DOUBLE_EQ(result.rows[0].power, 1.0);
}

TEST(SampleSize, saturation_is_reported) {
    SampleSizeConfig cfg;
    cfg.epsilons = {0.1};
    cfg.max_trials = 64;
    auto result = sample_size_experiment(cfg);
    ASSERT_TRUE(result.rows[0].saturated);
    ASSERT_LT(result.rows[0].power, 0.95);
    ASSERT_TRUE(std::isnan(result.slope));
}

TEST(SampleSize, deterministic_and_validated) {
    SampleSizeConfig cfg;
    cfg.epsilons = {0.2, 0.1};
    cfg.seed = 3;
    ASSERT_EQ(sample_size_csv(sample_size_experiment(cfg), 3), sample_size_csv(sample_size_experiment(cfg), 3));
    cfg.power = 0.4;
    try {
        sample_size_experiment(cfg);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::BadConfig);
    }
}

TEST(SampleSize, power_estimates) {
    Distribution p{1.0, 0.0};
    Distribution q{0.0, 1.0};
    ASSERT_DOUBLE_EQ(discrimination_power(p, q, 1, 100, 1), 1.0);
    ASSERT_DOUBLE_EQ(discrimination_power(p, p, 50, 100, 1), 0.0);
}

TEST(LogLogSlope, exact_power_law) {
    std::vector<double> xs{0.2, 0.1, 0.05};
    std::vector<double> ys;
    for (double x : xs) {
        ys.push_back(12.0 * std::pow(x, -2.0));
    }
    ASSERT_NEAR(loglog_slope(xs, ys), -2.0, 1e-12);
}
