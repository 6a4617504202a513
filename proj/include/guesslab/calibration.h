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

#ifndef GUESSLAB_CALIBRATION_H
#define GUESSLAB_CALIBRATION_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "guesslab/instrument.h"
#include "guesslab/model_io.h"
#include "guesslab/petri_net.h"

namespace guesslab {

/// Commands are `bits`-bit indices of a uniform grid over [lo, hi).
struct RotationFamily {
    std::size_t bits = 12;
    double lo = 0.0;
    double hi = 6.283185307179586;

    double resolution() const;
    /// Nearest grid point, wrapped into the range.
    Command command(double theta) const;
    double theta(const Command &b) const;
    double snap(double theta) const {
        return this->theta(command(theta));
    }
};

struct CalibrationConfig {
    CMatrix target_gate;
    CVector preparation;
    RotationFamily family;
    /// The scientist's guess for the gate a command produces.
    std::function<CMatrix(double)> gate_model;
    std::string gate_model_name = "rotation_y";
    std::vector<double> epsilons;
    /// Trials per test at precision eps: ceil(budget_factor / eps^2).
    double budget_factor = 16.0;
    double initial_step = 0.2;
    std::size_t max_iterations = 40;
    /// Calibration searches allowed per stage before the stage is failed.
    std::size_t max_rounds = 3;
    std::string guess_policy = "coordinate-descent";
    DetectorShape shape{2, 1};
    std::uint64_t seed = 0;

    /// Target R_y(pi/2) on |0>, R_y gate model, and the given schedule.
    static CalibrationConfig rotation_defaults(std::vector<double> epsilons, std::uint64_t seed);
    static CalibrationConfig from_json(const Json &j);
    Json to_json() const;

    std::uint64_t budget(double epsilon) const;
    /// Raises BadConfig for an empty or non-decreasing schedule, precisions
    /// outside (0, 2], budgets below min_sample_size, or unknown policies.
    void validate() const;
};

/// The simulated laboratory for a rotation family: command b really applies
/// exp(-i (theta(b) + offset)/2 (cos(tilt) Y + sin(tilt) Z)) to |0> and
/// measures in the computational basis.
Instrument rotation_instrument(const CalibrationConfig &cfg, double offset, double tilt, std::uint64_t seed);

struct StageReport {
    double epsilon = 0;
    std::uint64_t budget = 0;
    std::uint64_t trials = 0;
    double distance = 0;
    double theta = 0;
    bool passed = false;
    std::size_t moves = 0;
    std::size_t rounds = 0;
};

struct CalibrationReport {
    double initial_theta = 0;
    std::vector<StageReport> stages;
    /// Firing trace of the mode net, JSON lines.
    std::string mode_trace;
};

/// Mode net: ready -> testing -> (running | calibrating -> testing) ->
/// (ready | done), with the harness's verdicts arriving on input state
/// "verdict" as "pass", "fail", "exhausted", "next" or "stop".
NetFragment calibration_mode_net();

/// For each precision in the schedule: test the current command with
/// budget(eps) trials (pass when the distance to the target's predicted
/// frequencies is at most eps/2); on failure run a coordinate-descent
/// search with step halving down to eps/4, then test again. The instrument
/// is only used through `measure`.
CalibrationReport run_calibration(const CalibrationConfig &cfg, Instrument &instrument);

/// epsilon,budget,trials,distance,theta,passed,moves,rounds
std::string calibration_csv(const CalibrationReport &report);
Json calibration_json(const CalibrationReport &report);

}  // namespace guesslab

#endif
