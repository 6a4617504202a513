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

#ifndef GUESSLAB_STAT_DISTANCE_H
#define GUESSLAB_STAT_DISTANCE_H

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "guesslab/qm_model.h"

namespace guesslab {

using Distribution = std::vector<double>;

/// Entries in [0, 1] within 1e-12 and summing to 1 within 1e-9.
void validate_distribution(std::span<const double> p);

/// Nonnegative weights over commands summing to 1 within 1e-9.
struct CommandWeights {
    std::map<Command, double> w;

    static CommandWeights uniform(const CommandSet &commands);
    void validate() const;
};

/// Bhattacharyya angle arccos(sum_j sqrt(p_j q_j)), in [0, pi/2].
///
/// Evaluated as 2 asin(|sqrt(p) - sqrt(q)| / 2), which equals the arccos form
/// for normalized inputs but does not lose half the digits near zero.
double statistical_distance(std::span<const double> p, std::span<const double> q);

/// True iff sqrt(n) * d(p, q) <= 1.
bool indistinguishable_in_trials(std::span<const double> p, std::span<const double> q, std::uint64_t n);

/// arccos |<a|b>| for unit vectors.
double vector_distance_bound(const CVector &a, const CVector &b);

/// Outcome distributions of two models for command `b`, aligned by
/// eigenvalue (order of `alpha`). Spectra must agree within 1e-9.
std::pair<Distribution, Distribution> aligned_distributions(const Model &alpha, const Model &beta, const Command &b);

/// Model distribution for `b` alongside the record's relative frequencies,
/// matched by outcome value within 1e-9. Model outcomes that were never
/// recorded get frequency 0; recorded values missing from the spectrum raise
/// SpectraMismatch.
std::pair<Distribution, Distribution> aligned_with_record(const Model &alpha, const OutcomeRecord &record,
                                                          const Command &b);

/// sum_b w(b) d(Pr_alpha(.|b), Pr_beta(.|b)).
double weighted_model_distance(const Model &alpha, const Model &beta, const CommandWeights &weights);
double weighted_model_distance(const Model &alpha, const OutcomeRecord &record, const CommandWeights &weights);

/// Largest singular value of U_alpha(b) - U_beta(b).
double spectral_norm_diff(const UnitaryFn &alpha, const UnitaryFn &beta, const Command &b);

/// ceil(eps^-2) for 0 < eps <= 2.
std::uint64_t min_sample_size(double epsilon);

enum class Verdict { FavorP, FavorQ, Undecided };
std::string_view verdict_name(Verdict v);

inline const double kDefaultLrtThreshold = std::log(19.0);
inline constexpr double kLrtSmoothing = 1e-12;

struct Discrimination {
    Verdict verdict;
    double log_likelihood_ratio;
};

/// Log-likelihood-ratio test of tallies n_j between p and q, with zero
/// probabilities replaced by 1e-12.
Discrimination discriminate(std::span<const std::uint64_t> tallies, std::span<const double> p,
                            std::span<const double> q, double threshold = kDefaultLrtThreshold);

}  // namespace guesslab

#endif
