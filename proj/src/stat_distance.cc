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

#include <algorithm>
#include <numeric>
#include <string>

namespace guesslab {

void validate_distribution(std::span<const double> p) {
    if (p.empty()) {
        fail(ErrorKind::InvalidDistribution, "distribution is empty");
    }
    double sum = 0;
    for (double x : p) {
        if (!(x >= -1e-12 && x <= 1 + 1e-12)) {
            fail(ErrorKind::InvalidDistribution, "probability " + std::to_string(x) + " outside [0, 1]");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        fail(ErrorKind::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
    }
}

CommandWeights CommandWeights::uniform(const CommandSet &commands) {
    CommandWeights out;
    for (const auto &b : commands) {
        out.w[b] = 1.0 / static_cast<double>(commands.size());
    }
    return out;
}

void CommandWeights::validate() const {
    double sum = 0;
    for (const auto &[b, x] : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            fail(ErrorKind::InvalidDistribution, "command weights must be nonnegative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        fail(ErrorKind::InvalidDistribution, "command weights sum to " + std::to_string(sum));
    }
}

double statistical_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        fail(ErrorKind::LengthMismatch, "distributions have lengths " + std::to_string(p.size()) + " and " +
                                            std::to_string(q.size()));
    }
    validate_distribution(p);
    validate_distribution(q);
    double sp = std::accumulate(p.begin(), p.end(), 0.0);
    double sq = std::accumulate(q.begin(), q.end(), 0.0);
    double h2 = 0;
    for (std::size_t j = 0; j < p.size(); j++) {
        double a = std::sqrt(std::max(p[j], 0.0) / sp);
        double b = std::sqrt(std::max(q[j], 0.0) / sq);
        h2 += (a - b) * (a - b);
    }
    return 2 * std::asin(std::min(1.0, std::sqrt(h2) / 2));
}

bool indistinguishable_in_trials(std::span<const double> p, std::span<const double> q, std::uint64_t n) {
    if (n == 0) {
        fail(ErrorKind::BadSampleSize, "trial count must be positive");
    }
    return std::sqrt(static_cast<double>(n)) * statistical_distance(p, q) <= 1.0;
}

double vector_distance_bound(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        fail(ErrorKind::DimensionMismatch, "vectors have different dimensions");
    }
    if (std::abs(a.norm() - 1) > kUnitaryTol || std::abs(b.norm() - 1) > kUnitaryTol) {
        fail(ErrorKind::InvalidModel, "vector_distance_bound needs unit vectors");
    }
    // |a - e^{i phi} b|^2 = 2 - 2|<a|b>| once b is rotated onto a's phase.
    Complex overlap = b.dot(a);
    Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
    double chord = (a / a.norm() - phase * (b / b.norm())).norm();
    return 2 * std::asin(std::min(1.0, chord / 2));
}

namespace {

constexpr double kSpectrumTol = 1e-9;

std::vector<double> spectrum(const Model &m, const Command &b) {
    std::vector<double> out;
    for (const auto &c : m.m().at(b)) {
        out.push_back(c.eigenvalue);
    }
    return out;
}

}  // namespace

std::pair<Distribution, Distribution> aligned_distributions(const Model &alpha, const Model &beta, const Command &b) {
    auto sa = spectrum(alpha, b);
    auto sb = spectrum(beta, b);
    if (sa.size() != sb.size()) {
        fail(ErrorKind::SpectraMismatch, "spectra for '" + b.bits() + "' have different sizes");
    }
    auto pa = outcome_distribution(alpha, b);
    auto pb_raw = outcome_distribution(beta, b);
    Distribution pb(sa.size(), 0.0);
    std::vector<bool> used(sb.size(), false);
    for (std::size_t j = 0; j < sa.size(); j++) {
        bool found = false;
        for (std::size_t k = 0; k < sb.size(); k++) {
            if (!used[k] && std::abs(sa[j] - sb[k]) <= kSpectrumTol) {
                used[k] = true;
                pb[j] = pb_raw[k];
                found = true;
                break;
            }
        }
        if (!found) {
            fail(ErrorKind::SpectraMismatch, "eigenvalue " + std::to_string(sa[j]) + " of command '" + b.bits() +
                                                 "' has no partner in the other model");
        }
    }
    return {pa, pb};
}

std::pair<Distribution, Distribution> aligned_with_record(const Model &alpha, const OutcomeRecord &record,
                                                          const Command &b) {
    auto sa = spectrum(alpha, b);
    auto pa = outcome_distribution(alpha, b);
    Distribution freq(sa.size(), 0.0);
    const auto &tallies = record.tallies(b);
    double total = static_cast<double>(record.total(b));
    for (const auto &t : tallies) {
        bool found = false;
        for (std::size_t k = 0; k < sa.size(); k++) {
            if (std::abs(sa[k] - t.value) <= kSpectrumTol) {
                freq[k] += static_cast<double>(t.count) / total;
                found = true;
                break;
            }
        }
        if (!found) {
            fail(ErrorKind::SpectraMismatch, "recorded outcome " + std::to_string(t.value) + " for command '" +
                                                 b.bits() + "' is not an eigenvalue of the model");
        }
    }
    return {pa, freq};
}

double weighted_model_distance(const Model &alpha, const Model &beta, const CommandWeights &weights) {
    weights.validate();
    double total = 0;
    for (const auto &[b, w] : weights.w) {
        if (w == 0.0) {
            continue;
        }
        if (!alpha.commands().count(b) || !beta.commands().count(b)) {
            fail(ErrorKind::CommandNotInSet, "weighted command '" + b.bits() + "' is missing from a model");
        }
        auto [p, q] = aligned_distributions(alpha, beta, b);
        total += w * statistical_distance(p, q);
    }
    return total;
}

double weighted_model_distance(const Model &alpha, const OutcomeRecord &record, const CommandWeights &weights) {
    weights.validate();
    double total = 0;
    for (const auto &[b, w] : weights.w) {
        if (w == 0.0) {
            continue;
        }
        if (!alpha.commands().count(b) || !record.contains(b)) {
            fail(ErrorKind::CommandNotInSet, "weighted command '" + b.bits() + "' is missing from the model or record");
        }
        auto [p, q] = aligned_with_record(alpha, record, b);
        total += w * statistical_distance(p, q);
    }
    return total;
}

double spectral_norm_diff(const UnitaryFn &alpha, const UnitaryFn &beta, const Command &b) {
    const CMatrix &a = alpha.at(b);
    const CMatrix &c = beta.at(b);
    if (a.rows() != c.rows() || a.cols() != c.cols()) {
        fail(ErrorKind::DimensionMismatch, "unitaries have different shapes");
    }
    return spectral_norm(a - c);
}

std::uint64_t min_sample_size(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0) {
        fail(ErrorKind::BadEpsilon, "epsilon must lie in (0, 2], got " + std::to_string(epsilon));
    }
    double n = 1.0 / (epsilon * epsilon);
    return static_cast<std::uint64_t>(std::ceil(n * (1 - 1e-12)));
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::FavorP:
            return "FavorP";
        case Verdict::FavorQ:
            return "FavorQ";
        case Verdict::Undecided:
            return "Undecided";
    }
    return "Undecided";
}

Discrimination discriminate(std::span<const std::uint64_t> tallies, std::span<const double> p,
                            std::span<const double> q, double threshold) {
    if (tallies.size() != p.size() || p.size() != q.size()) {
        fail(ErrorKind::LengthMismatch, "tallies and distributions must have equal lengths");
    }
    std::uint64_t n = std::accumulate(tallies.begin(), tallies.end(), std::uint64_t{0});
    if (n == 0) {
        fail(ErrorKind::BadSampleSize, "discrimination needs at least one sample");
    }
    double llr = 0;
    for (std::size_t j = 0; j < tallies.size(); j++) {
        if (tallies[j] == 0) {
            continue;
        }
        double pj = p[j] > 0 ? p[j] : kLrtSmoothing;
        double qj = q[j] > 0 ? q[j] : kLrtSmoothing;
        llr += static_cast<double>(tallies[j]) * std::log(pj / qj);
    }
    Verdict v = Verdict::Undecided;
    if (llr > threshold) {
        v = Verdict::FavorP;
    } else if (llr < -threshold) {
        v = Verdict::FavorQ;
    }
    return {v, llr};
}

}  // namespace guesslab
