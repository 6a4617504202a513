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

#ifndef GUESSLAB_LINALG_H
#define GUESSLAB_LINALG_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace guesslab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTol = 1e-9;

bool is_unitary(const CMatrix &u, double tol = kUnitaryTol);
bool is_hermitian(const CMatrix &m, double tol = kUnitaryTol);
/// Hermitian and idempotent.
bool is_projector(const CMatrix &p, double tol = kUnitaryTol);

/// Largest singular value.
double spectral_norm(const CMatrix &m);

/// Largest absolute entrywise difference; used for tolerance comparisons.
double max_abs_diff(const CMatrix &a, const CMatrix &b);
double max_abs_diff(const CVector &a, const CVector &b);

/// Single-qubit rotation exp(-i theta Y / 2).
CMatrix rotation_y(double theta);
/// Single-qubit rotation by `theta` about the unit axis (sin(tilt), 0, cos(tilt))
/// rotated so that tilt = 0 is the Y axis and positive tilt leans toward Z.
CMatrix rotation_tilted_y(double theta, double tilt);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Unlike
/// std::uniform_real_distribution this is bit-reproducible across standard
/// library implementations.
double uniform01(std::mt19937_64 &rng);
/// SplitMix64 mixing of (seed, stream) into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix random_unitary(std::mt19937_64 &rng, std::size_t dim);
CVector random_unit_vector(std::mt19937_64 &rng, std::size_t dim);
/// Complex Ginibre matrix scaled to spectral norm `norm`.
CMatrix random_matrix_with_norm(std::mt19937_64 &rng, std::size_t dim, double norm);

}  // namespace guesslab

#endif
