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

#include "guesslab/linalg.h"

#include <algorithm>
#include <cmath>

namespace guesslab {

bool is_unitary(const CMatrix &u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        return false;
    }
    CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    return max_abs_diff(u.adjoint() * u, id) <= tol;
}

bool is_hermitian(const CMatrix &m, double tol) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_projector(const CMatrix &p, double tol) {
    return is_hermitian(p, tol) && max_abs_diff(p * p, p) <= tol;
}

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        return INFINITY;
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

CMatrix rotation_y(double theta) {
    return rotation_tilted_y(theta, 0.0);
}

CMatrix rotation_tilted_y(double theta, double tilt) {
    // exp(-i theta/2 n.sigma) with n = (0, cos(tilt), sin(tilt)).
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    double ny = std::cos(tilt);
    double nz = std::sin(tilt);
    const Complex i(0, 1);
    CMatrix r(2, 2);
    r(0, 0) = c - i * s * nz;
    r(0, 1) = -s * ny;
    r(1, 0) = s * ny;
    r(1, 1) = c + i * s * nz;
    return r;
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

CMatrix ginibre(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t r = 0; r < rows; r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

CMatrix random_unitary(std::mt19937_64 &rng, std::size_t dim) {
    CMatrix g = ginibre(rng, dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t k = 0; k < dim; k++) {
        Complex d = r(k, k);
        double a = std::abs(d);
        if (a > 0) {
            q.col(k) *= d / a;
        }
    }
    return q;
}

CVector random_unit_vector(std::mt19937_64 &rng, std::size_t dim) {
    CVector v = ginibre(rng, dim, 1).col(0);
    return v / v.norm();
}

CMatrix random_matrix_with_norm(std::mt19937_64 &rng, std::size_t dim, double norm) {
    CMatrix g = ginibre(rng, dim, dim);
    return g * (norm / spectral_norm(g));
}

}  // namespace guesslab
