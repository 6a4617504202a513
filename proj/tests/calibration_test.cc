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

#include "guesslab/calibration.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "guesslab/error.h"
#include "guesslab/net_analysis.h"
#include "guesslab/net_io.h"
#include "guesslab/stat_distance.h"

using namespace guesslab;

namespace {

/// Bhattacharyya angle between the target's (1/2, 1/2) and the true
/// outcome distribution at angle theta + offset with the given tilt.
double closed_form_distance(double theta, double offset, double tilt) {
    double p1 = std::pow(std::sin((theta + offset) / 2) * std::cos(tilt), 2);
    return std::acos(std::sqrt(0.5 * (1 - p1)) + std::sqrt(0.5 * p1));
}

double angle_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2 * std::numbers::pi);
    return std::min(d, 2 * std::numbers::pi - d);
}

}  // namespace

TEST(RotationFamily, grid_round_trip) {
    RotationFamily f;
    ASSERT_NEAR(f.resolution(), 2 * std::numbers::pi / 4096, 1e-15);
    for (double theta : {0.0, 0.3, 1.5707963, 3.0, 6.2}) {
        ASSERT_LE(std::abs(f.snap(theta) - theta), f.resolution() / 2 + 1e-12);
    }
    ASSERT_EQ(f.command(-f.resolution()), Command::from_uint(4095, 12));
    ASSERT_EQ(f.command(2 * std::numbers::pi), Command::from_uint(0, 12));
}

TEST(Calibration, already_calibrated_needs_no_moves) {
    auto cfg = CalibrationConfig::rotation_defaults({0.1, 0.05, 0.02}, 11);
    Instrument instr = rotation_instrument(cfg, 0.0, 0.0, 12);
    CalibrationReport report = run_calibration(cfg, instr);
    ASSERT_NEAR(report.initial_theta, std::numbers::pi / 2, cfg.family.resolution());
    ASSERT_EQ(report.stages.size(), 3u);
    for (const auto &s : report.stages) {
        ASSERT_TRUE(s.passed);
        ASSERT_EQ(s.moves, 0u);
        ASSERT_EQ(s.rounds, 0u);
        ASSERT_EQ(s.trials, s.budget);
        ASSERT_GE(s.trials, min_sample_size(s.epsilon));
    }
}

TEST(Calibration, recovers_known_offset) {
    double delta = 0.3;
    double correct = std::numbers::pi / 2 - delta;
    auto cfg = CalibrationConfig::rotation_defaults({0.1, 0.05, 0.02}, 21);
    Instrument instr = rotation_instrument(cfg, delta, 0.0, 22);
    CalibrationReport report = run_calibration(cfg, instr);
    ASSERT_EQ(report.stages.size(), 3u);
    ASSERT_GT(report.stages[0].moves, 0u);
    for (const auto &s : report.stages) {
        ASSERT_TRUE(s.passed) << s.epsilon;
        ASSERT_LE(angle_gap(s.theta, correct), 2 * s.epsilon) << s.epsilon;
        ASSERT_GE(static_cast<double>(s.trials), 1 / (s.epsilon * s.epsilon));
        ASSERT_NEAR(s.distance, closed_form_distance(s.theta, delta, 0.0), s.epsilon / 2);
    }
    for (const auto &line : instr.access_log()) {
        ASSERT_EQ(line.rfind("measure ", 0), 0u);
    }
}

TEST(Calibration, deterministic_under_seed) {
    auto cfg = CalibrationConfig::rotation_defaults({0.1, 0.05}, 5);
    Instrument a = rotation_instrument(cfg, 0.3, 0.0, 6);
    Instrument b = rotation_instrument(cfg, 0.3, 0.0, 6);
    CalibrationReport ra = run_calibration(cfg, a);
    CalibrationReport rb = run_calibration(cfg, b);
    ASSERT_EQ(calibration_csv(ra), calibration_csv(rb));
    ASSERT_EQ(ra.mode_trace, rb.mode_trace);
    ASSERT_EQ(a.access_log(), b.access_log());
}

TEST(Calibration, model_mismatch_reports_floor) {
    double tilt = 0.9;
    double floor = closed_form_distance(std::numbers::pi, 0.0, tilt);
    ASSERT_NEAR(floor, 0.1149, 1e-3);
    auto cfg = CalibrationConfig::rotation_defaults({0.1}, 31);
    cfg.max_rounds = 2;
    Instrument instr = rotation_instrument(cfg, 0.3, tilt, 32);
    CalibrationReport report = run_calibration(cfg, instr);
    ASSERT_EQ(report.stages.size(), 1u);
    const StageReport &s = report.stages[0];
    ASSERT_FALSE(s.passed);
    ASSERT_EQ(s.rounds, 2u);
    ASSERT_GE(s.distance, floor - 0.03);
    ASSERT_NE(report.mode_trace.find("give_up"), std::string::npos);
}

TEST(Calibration, config_validation) {
    auto expect_bad = [](CalibrationConfig cfg) {
        try {
            cfg.validate();
            FAIL();
        } catch (const Error &e) {
            ASSERT_EQ(e.kind(), ErrorKind::BadConfig);
        }
    };
    expect_bad(CalibrationConfig::rotation_defaults({}, 1));
    expect_bad(CalibrationConfig::rotation_defaults({0.1, 0.1}, 1));
    expect_bad(CalibrationConfig::rotation_defaults({0.05, 0.1}, 1));
    expect_bad(CalibrationConfig::rotation_defaults({0.0}, 1));
    auto cheap = CalibrationConfig::rotation_defaults({0.1}, 1);
    cheap.budget_factor = 0.5;
    expect_bad(cheap);
    auto policy = CalibrationConfig::rotation_defaults({0.1}, 1);
    policy.guess_policy = "annealing";
    expect_bad(policy);
    auto exact = CalibrationConfig::rotation_defaults({0.1, 0.3}, 1);
    exact.epsilons = {0.3, 0.1};
    exact.budget_factor = 1.0;
    exact.validate();
    ASSERT_EQ(exact.budget(0.1), min_sample_size(0.1));
}

TEST(Calibration, config_json_round_trip) {
    auto cfg = CalibrationConfig::rotation_defaults({0.1, 0.05}, 9);
    CalibrationConfig back = CalibrationConfig::from_json(cfg.to_json());
    ASSERT_EQ(back.to_json(), cfg.to_json());
    Json minimal = {{"epsilons", {0.2}}, {"target", {{"gate", "rotation_y"}, {"theta", 1.0}}}};
    CalibrationConfig m = CalibrationConfig::from_json(minimal);
    ASSERT_LE(max_abs_diff(m.target_gate, rotation_y(1.0)), 1e-15);
}

TEST(ModeNet, shipped_file_matches_and_is_well_formed) {
    NetFragment net = calibration_mode_net();
    Json shipped = read_json_file(GUESSLAB_DATA_DIR "/nets/calibration_modes.json");
    ASSERT_EQ(net_to_json(net_from_json(shipped)), net_to_json(net));
    ClassicalNet r = reduced_net(net);
    NetAnalysis a = analyze(r, {"ready"}, 100);
    ASSERT_EQ(a.reachable.size(), 5u);
    ASSERT_TRUE(a.violations.empty());
    ASSERT_EQ(a.deadlocks(), 1u);
}

TEST(ModeNet, trace_alternates_test_and_calibrate) {
    auto cfg = CalibrationConfig::rotation_defaults({0.1}, 41);
    Instrument instr = rotation_instrument(cfg, 0.3, 0.0, 42);
    CalibrationReport report = run_calibration(cfg, instr);
    std::vector<std::string> events;
    std::istringstream lines(report.mode_trace);
    for (std::string line; std::getline(lines, line);) {
        events.push_back(Json::parse(line)["event"]);
    }
    ASSERT_GE(events.size(), 5u);
    ASSERT_EQ(events[0], "begin_test");
    ASSERT_EQ(events[1], "fail");
    ASSERT_EQ(events[2], "calibrate");
    ASSERT_EQ(events.back(), "stop");
}
