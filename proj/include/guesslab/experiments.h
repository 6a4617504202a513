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

#ifndef GUESSLAB_EXPERIMENTS_H
#define GUESSLAB_EXPERIMENTS_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "guesslab/qm_model.h"
#include "guesslab/stat_distance.h"

namespace guesslab {

struct GateSequenceError {
    /// First-order bound K * eps.
    double bound = 0;
    /// Largest ||prod(U_j + E_j) - prod(U_j)|| over the draws.
    double measured = 0;
    std::vector<double> draws;
};

/// Perturbs every gate by an independent random E_j with ||E_j|| = eps and
/// measures the spectral-norm error of the product U_K ... U_1. Raises
/// NotUnitary, DimensionMismatch, or BadEpsilon for eps < 0.
GateSequenceError gate_sequence_error(const std::vector<CMatrix> &gates, double eps, std::size_t draws,
                                      std::uint64_t seed);

/// Two models over one command that differ only in U.
struct ModelPair {
    Model alpha;
    Model beta;
    Command command;
};

/// U_alpha = I and U_beta = diag(1, e^{i theta}) with ||U_alpha - U_beta|| =
/// eps, acting on |+> and measured in the +/- basis, so that
/// Pr_alpha = (1, 0) and Pr_beta = (1 - eps^2/4, eps^2/4).
ModelPair phase_gate_pair(double eps);

struct SampleSizeConfig {
    std::vector<double> epsilons;
    double power = 0.95;
    std::size_t repetitions = 500;
    std::uint64_t seed = 0;
    double threshold = kDefaultLrtThreshold;
    std::uint64_t max_trials = 100000000;
    std::function<ModelPair(double)> pair_factory = phase_gate_pair;
};

struct SampleSizeRow {
    double epsilon = 0;
    std::uint64_t n_bound = 0;
    std::uint64_t n_empirical = 0;
    /// Estimated power at n_empirical.
    double power = 0;
    bool saturated = false;
};

struct SampleSizeResult {
    std::vector<SampleSizeRow> rows;
    /// Least-squares slope of log N_empirical against log eps over the
    /// unsaturated rows (NaN with fewer than two).
    double slope = 0;
};

/// Fraction of repetitions in which the likelihood-ratio test names the
/// true model, taking the worse of the two possible truths. Repetition r
/// draws its counts from its own stream seeded by (seed, r).
double discrimination_power(const Distribution &p, const Distribution &q, std::uint64_t trials,
                            std::size_t repetitions, std::uint64_t seed, double threshold = kDefaultLrtThreshold);

/// For each eps, the smallest trial count reaching the target power, found
/// by doubling and then bisection. Rows whose power stays short of the
/// target at max_trials are flagged saturated instead of raising.
SampleSizeResult sample_size_experiment(const SampleSizeConfig &cfg);

double loglog_slope(const std::vector<double> &xs, const std::vector<double> &ys);

/// epsilon,N_bound,N_empirical,power,saturated,seed
std::string sample_size_csv(const SampleSizeResult &result, std::uint64_t seed);

}  // namespace guesslab

#endif
