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
#include <iomanip>
#include <random>
#include <sstream>

#include "guesslab/error.h"
#include "guesslab/linalg.h"

namespace guesslab {

GateSequenceError gate_sequence_error(const std::vector<CMatrix> &gates, double eps, std::size_t draws,
                                      std::uint64_t seed) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
        fail(ErrorKind::BadEpsilon, "perturbation size must be a finite non-negative number");
    }
    if (gates.empty()) {
        fail(ErrorKind::DimensionMismatch, "the gate sequence is empty");
    }
    Eigen::Index dim = gates[0].rows();
    for (std::size_t k = 0; k < gates.size(); k++) {
        if (gates[k].rows() != dim || gates[k].cols() != dim) {
            fail(ErrorKind::DimensionMismatch, "gate " + std::to_string(k) + " has a different shape");
        }
        if (!is_unitary(gates[k])) {
            fail(ErrorKind::NotUnitary, "gate " + std::to_string(k) + " is not unitary");
        }
    }
    CMatrix ideal = CMatrix::Identity(dim, dim);
    for (const auto &g : gates) {
        ideal = g * ideal;
    }
    GateSequenceError out;
    out.bound = static_cast<double>(gates.size()) * eps;
    std::mt19937_64 rng(seed);
    for (std::size_t d = 0; d < draws; d++) {
        CMatrix noisy = CMatrix::Identity(dim, dim);
        for (const auto &g : gates) {
            CMatrix e = eps == 0.0 ? CMatrix::Zero(dim, dim)
                                   : random_matrix_with_norm(rng, static_cast<std::size_t>(dim), eps);
            noisy = (g + e) * noisy;
        }
        double err = spectral_norm(noisy - ideal);
        out.draws.push_back(err);
        out.measured = std::max(out.measured, err);
    }
    return out;
}

ModelPair phase_gate_pair(double eps) {
    if (!(eps > 0.0) || eps > 2.0) {
        fail(ErrorKind::BadEpsilon, "epsilon must lie in (0, 2], got " + std::to_string(eps));
    }
    double theta = 2 * std::asin(eps / 2);
    Command b = Command::from_bits("0");
    CVector plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CVector minus(2);
    minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    SpectralForm pm{{1.0, plus * plus.adjoint()}, {-1.0, minus * minus.adjoint()}};
    CMatrix phase = CMatrix::Identity(2, 2);
    phase(1, 1) = std::polar(1.0, theta);
    auto build = [&](const CMatrix &u) {
        StateFn v;
        UnitaryFn uf;
        MeasurementFn m;
        v.set(b, plus);
        uf.set(b, u);
        m.set(b, pm);
        return Model(2, v, uf, m);
    };
    return {build(CMatrix::Identity(2, 2)), build(phase), b};
}

namespace {

std::vector<std::uint64_t> sample_counts(std::mt19937_64 &rng, const Distribution &p, std::uint64_t trials) {
    std::vector<std::uint64_t> counts(p.size(), 0);
    std::uint64_t left = trials;
    double mass = 1.0;
    for (std::size_t j = 0; j + 1 < p.size() && left > 0; j++) {
        double share = mass > 0 ? std::clamp(p[j] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(left, share);
        counts[j] = draw(rng);
        left -= counts[j];
        mass -= p[j];
    }
    counts.back() += left;
    return counts;
}

}  // namespace

double discrimination_power(const Distribution &p, const Distribution &q, std::uint64_t trials,
                            std::size_t repetitions, std::uint64_t seed, double threshold) {
    if (repetitions == 0) {
        fail(ErrorKind::BadSampleSize, "at least one repetition is needed");
    }
    std::size_t right_p = 0;
    std::size_t right_q = 0;
    for (std::size_t r = 0; r < repetitions; r++) {
        std::mt19937_64 rng(derive_seed(seed, r));
        auto under_p = sample_counts(rng, p, trials);
        auto under_q = sample_counts(rng, q, trials);
        right_p += discriminate(under_p, p, q, threshold).verdict == Verdict::FavorP;
        right_q += discriminate(under_q, p, q, threshold).verdict == Verdict::FavorQ;
    }
    return static_cast<double>(std::min(right_p, right_q)) / static_cast<double>(repetitions);
}

SampleSizeResult sample_size_experiment(const SampleSizeConfig &cfg) {
    if (!(cfg.power > 0.5) || !(cfg.power < 1.0)) {
        fail(ErrorKind::BadConfig, "target power must lie in (0.5, 1)");
    }
    SampleSizeResult result;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < cfg.epsilons.size(); k++) {
        double eps = cfg.epsilons[k];
        ModelPair pair = cfg.pair_factory(eps);
        Distribution p = outcome_distribution(pair.alpha, pair.command);
        Distribution q = outcome_distribution(pair.beta, pair.command);
        std::uint64_t seed = derive_seed(cfg.seed, k);
        auto power_at = [&](std::uint64_t n) {
            return discrimination_power(p, q, n, cfg.repetitions, seed, cfg.threshold);
        };

        SampleSizeRow row;
        row.epsilon = eps;
        row.n_bound = min_sample_size(eps);
        std::uint64_t lo = 0;
        std::uint64_t hi = 1;
        double hi_power = power_at(hi);
        while (hi_power < cfg.power && hi < cfg.max_trials) {
            lo = hi;
            hi = std::min(hi * 2, cfg.max_trials);
            hi_power = power_at(hi);
        }
        if (hi_power < cfg.power) {
            row.saturated = true;
            row.n_empirical = hi;
            row.power = hi_power;
            result.rows.push_back(row);
            continue;
        }
        while (hi - lo > 1) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            double mid_power = power_at(mid);
            if (mid_power >= cfg.power) {
                hi = mid;
                hi_power = mid_power;
            } else {
                lo = mid;
            }
        }
        row.n_empirical = hi;
        row.power = hi_power;
        result.rows.push_back(row);
        xs.push_back(eps);
        ys.push_back(static_cast<double>(hi));
    }
    result.slope = loglog_slope(xs, ys);
    return result;
}

double loglog_slope(const std::vector<double> &xs, const std::vector<double> &ys) {
    if (xs.size() != ys.size()) {
        fail(ErrorKind::LengthMismatch, "slope needs as many x values as y values");
    }
    if (xs.size() < 2) {
        return std::nan("");
    }
    double n = static_cast<double>(xs.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t k = 0; k < xs.size(); k++) {
        double x = std::log(xs[k]);
        double y = std::log(ys[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string sample_size_csv(const SampleSizeResult &result, std::uint64_t seed) {
    std::ostringstream out;
    out << "epsilon,N_bound,N_empirical,power,saturated,seed\n";
    out << std::setprecision(10);
    for (const auto &row : result.rows) {
        out << row.epsilon << "," << row.n_bound << "," << row.n_empirical << "," << row.power << ","
            << (row.saturated ? 1 : 0) << "," << seed << "\n";
    }
    return out.str();
}

}  // namespace guesslab
