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

#ifndef GUESSLAB_QM_MODEL_H
#define GUESSLAB_QM_MODEL_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "guesslab/command.h"
#include "guesslab/error.h"
#include "guesslab/linalg.h"

namespace guesslab {

inline constexpr double kProbabilityTol = 1e-9;

/// A function on a finite command set. Lookups outside the set raise
/// CommandNotInSet.
template <typename T>
class CommandMap {
   public:
    CommandMap() = default;
    explicit CommandMap(std::map<Command, T> entries) : entries_(std::move(entries)) {
    }

    const T &at(const Command &b) const {
        auto it = entries_.find(b);
        if (it == entries_.end()) {
            fail(ErrorKind::CommandNotInSet, "command '" + b.bits() + "' is not in the command set");
        }
        return it->second;
    }
    void set(const Command &b, T value) {
        entries_.insert_or_assign(b, std::move(value));
    }
    bool contains(const Command &b) const {
        return entries_.count(b) != 0;
    }
    std::size_t size() const {
        return entries_.size();
    }
    CommandSet commands() const {
        CommandSet out;
        for (const auto &[b, _] : entries_) {
            out.insert(b);
        }
        return out;
    }
    auto begin() const {
        return entries_.begin();
    }
    auto end() const {
        return entries_.end();
    }

   private:
    std::map<Command, T> entries_;
};

struct SpectralComponent {
    double eigenvalue;
    CMatrix projector;
};

/// Spectral form of a hermitian measurement: distinct eigenvalues with
/// mutually orthogonal projectors summing to the identity. Outcome j (1-based)
/// is component j - 1.
using SpectralForm = std::vector<SpectralComponent>;

using StateFn = CommandMap<CVector>;
using UnitaryFn = CommandMap<CMatrix>;
using MeasurementFn = CommandMap<SpectralForm>;

/// Checks projector algebra, distinct eigenvalues, and completeness.
/// Raises InvalidModel (or DimensionMismatch for wrong sizes).
void validate_spectral_form(const SpectralForm &form, std::size_t dim);

/// Basis projectors |j><j| with the given eigenvalues, in order.
SpectralForm computational_measurement(const std::vector<double> &eigenvalues);

/// Hermitian operator sum_j m_j M_j.
CMatrix hermitian_operator(const SpectralForm &form);

/// (|v>, U, M)_B on a finite-dimensional truncation of the Hilbert space.
/// Construction validates every component; instances are immutable.
class Model {
   public:
    Model(std::size_t dim, StateFn v, UnitaryFn u, MeasurementFn m);

    std::size_t dim() const noexcept {
        return dim_;
    }
    const StateFn &v() const noexcept {
        return v_;
    }
    const UnitaryFn &u() const noexcept {
        return u_;
    }
    const MeasurementFn &m() const noexcept {
        return m_;
    }
    const CommandSet &commands() const noexcept {
        return commands_;
    }
    std::size_t outcome_count(const Command &b) const {
        return m_.at(b).size();
    }

   private:
    std::size_t dim_;
    StateFn v_;
    UnitaryFn u_;
    MeasurementFn m_;
    CommandSet commands_;
};

/// Same command set, same dimension, and every vector/matrix/eigenvalue
/// within `tol`. This is the identity used for model-set operations.
bool models_equal(const Model &a, const Model &b, double tol = 1e-12);

struct OutcomeTally {
    double value;
    std::uint64_t count;
};

/// Per-command tallies of distinct outcome values, in order of first
/// appearance.
class OutcomeRecord {
   public:
    OutcomeRecord() = default;

    /// Adds `count` observations of outcome `value` under command `b`,
    /// merging with an existing tally of the same value.
    void add(const Command &b, double value, std::uint64_t count = 1);
    /// Appends a new distinct tally; raises InvalidRecord if `value` is
    /// already present for `b` or `count` is zero.
    void append_distinct(const Command &b, double value, std::uint64_t count);

    bool empty() const noexcept {
        return tallies_.empty();
    }
    bool contains(const Command &b) const {
        return tallies_.count(b) != 0;
    }
    CommandSet commands() const;
    const std::vector<OutcomeTally> &tallies(const Command &b) const;
    /// N(b).
    std::uint64_t total(const Command &b) const;
    /// J(b).
    std::size_t distinct(const Command &b) const {
        return tallies(b).size();
    }
    std::size_t max_distinct() const;
    /// n(j, b) / N(b), j 1-based.
    double frequency(const Command &b, std::size_t j) const;

    auto begin() const {
        return tallies_.begin();
    }
    auto end() const {
        return tallies_.end();
    }

   private:
    std::map<Command, std::vector<OutcomeTally>> tallies_;
};

/// Arbitrary real phases phi(j, b) and padding eigenvalues mu_j(b) (j > J(b)).
/// Unassigned phases are zero. Unassigned padding eigenvalues default to
/// max(lambda) + (j - J(b)), which never collides with a recorded value.
struct PhaseAssignment {
    std::map<std::pair<std::size_t, Command>, double> phi;
    std::map<std::pair<std::size_t, Command>, double> mu;

    double phase(std::size_t j, const Command &b) const;
    double padding(std::size_t j, const Command &b, const std::vector<OutcomeTally> &recorded) const;

    /// Phases drawn uniformly from [0, 2 pi) for every recorded (j, b).
    static PhaseAssignment random(const OutcomeRecord &record, std::uint64_t seed);
};

/// Pr(j|b) = <v(b)| U(b)^dagger M_j(b) U(b) |v(b)>, j 1-based.
double outcome_probability(const Model &model, const Command &b, std::size_t j);
/// All outcome probabilities for one command, in outcome order.
std::vector<double> outcome_distribution(const Model &model, const Command &b);

/// (|v>, U, M) -> (U|v>, 1, M).
Model reduce_model(const Model &model);

/// (|v>, U, M) -> (Q|v>, Q U Q^dagger, Q M Q^dagger), per command.
Model apply_equivalence(const Model &model, const UnitaryFn &q);

/// Basis-vector construction: v(b) = sum_j sqrt(n/N) e^{i phi} |j>, U = 1,
/// M(b) diagonal with the recorded values followed by padding eigenvalues up
/// to `padding_dim`.
Model construct_fitting_model(const OutcomeRecord &record, const PhaseAssignment &phases, std::size_t padding_dim);

/// Inputs for the eigenspace construction. Eigenspace j of command b occupies
/// a contiguous block of basis vectors of size eigenspace_dims[b][j - 1];
/// blocks for recorded outcomes come first, and any remaining dimension forms
/// a single padding eigenspace with eigenvalue `padding.padding(J(b) + 1, ...)`.
struct EigenspaceFit {
    std::size_t space_dim = 0;
    std::map<Command, std::vector<std::size_t>> eigenspace_dims;
    /// One unit vector per recorded outcome, expressed in the full space.
    std::map<Command, std::vector<CVector>> witness_vectors;
    PhaseAssignment padding;
};

/// Offset of the first basis vector of each block.
std::vector<std::size_t> eigenspace_offsets(const std::vector<std::size_t> &dims);
/// Places `local` (length dims[j - 1]) into block j of a `space_dim` vector.
CVector embed_in_eigenspace(const std::vector<std::size_t> &dims, std::size_t j, const CVector &local,
                            std::size_t space_dim);

Model construct_fitting_model_general(const OutcomeRecord &record, const EigenspaceFit &fit);

/// Two perfectly fitting eigenspace models whose state vectors are orthogonal
/// for every command. Every eigenspace is two-dimensional.
std::pair<Model, Model> construct_orthogonal_pair(const OutcomeRecord &record);

/// Largest |Pr_A - Pr_B| found over the fixed witness family: basis
/// projectors |k><k| and projectors onto (|k> + e^{i psi}|l>)/sqrt(2) for
/// k < l and psi in {0, pi/2, pi, 3 pi/2}, each used as the two-outcome
/// measurement {P, 1 - P}.
struct Witness {
    MeasurementFn measurement;
    Command command;
    double gap = 0.0;
    double probability_a = 0.0;
    double probability_b = 0.0;
};

Witness distinguish_by_witness(const Model &a, const Model &b);

/// Density matrix |v(b)><v(b)| of the (reduced) model state.
CMatrix density_matrix(const Model &model, const Command &b);

}  // namespace guesslab

#endif
