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
#include <iomanip>
#include <numbers>
#include <sstream>

#include "guesslab/error.h"
#include "guesslab/linalg.h"
#include "guesslab/net_io.h"
#include "guesslab/stat_distance.h"

namespace guesslab {

double RotationFamily::resolution() const {
    return (hi - lo) / std::ldexp(1.0, static_cast<int>(bits));
}

Command RotationFamily::command(double theta) const {
    std::int64_t n = std::int64_t{1} << bits;
    std::int64_t idx = std::llround((theta - lo) / resolution());
    idx = ((idx % n) + n) % n;
    return Command::from_uint(static_cast<std::uint64_t>(idx), bits);
}

double RotationFamily::theta(const Command &b) const {
    if (b.size() != bits) {
        fail(ErrorKind::CommandNotInSet, "command '" + b.bits() + "' is not in the rotation family");
    }
    return lo + static_cast<double>(b.to_uint()) * resolution();
}

namespace {

CMatrix gate_model_by_name(const std::string &name, double theta) {
    if (name == "rotation_y") {
        return rotation_y(theta);
    }
    fail(ErrorKind::BadConfig, "unknown gate model '" + name + "'");
}

}  // namespace

CalibrationConfig CalibrationConfig::rotation_defaults(std::vector<double> epsilons, std::uint64_t seed) {
    CalibrationConfig cfg;
    cfg.target_gate = rotation_y(std::numbers::pi / 2);
    cfg.preparation = CVector::Zero(2);
    cfg.preparation(0) = 1;
    cfg.gate_model = [](double theta) {
        return rotation_y(theta);
    };
    cfg.epsilons = std::move(epsilons);
    cfg.seed = seed;
    return cfg;
}

CalibrationConfig CalibrationConfig::from_json(const Json &j) {
    try {
        CalibrationConfig cfg = rotation_defaults(j.at("epsilons").get<std::vector<double>>(), j.value("seed", 0ULL));
        if (j.contains("target")) {
            const Json &t = j["target"];
            if (t.contains("matrix")) {
                cfg.target_gate = complex_matrix_from_json(t["matrix"]);
            } else {
                cfg.target_gate = gate_model_by_name(t.value("gate", "rotation_y"), t.at("theta").get<double>());
            }
        }
        if (j.contains("preparation")) {
            cfg.preparation = complex_vector_from_json(j["preparation"]);
        }
        if (j.contains("family")) {
            const Json &f = j["family"];
            cfg.family.bits = f.value("bits", cfg.family.bits);
            cfg.family.lo = f.value("lo", cfg.family.lo);
            cfg.family.hi = f.value("hi", cfg.family.hi);
        }
        cfg.gate_model_name = j.value("gate_model", cfg.gate_model_name);
        std::string name = cfg.gate_model_name;
        gate_model_by_name(name, 0.0);
        cfg.gate_model = [name](double theta) {
            return gate_model_by_name(name, theta);
        };
        cfg.budget_factor = j.value("budget_factor", cfg.budget_factor);
        cfg.initial_step = j.value("initial_step", cfg.initial_step);
        cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
        cfg.max_rounds = j.value("max_rounds", cfg.max_rounds);
        cfg.guess_policy = j.value("guess_policy", cfg.guess_policy);
        cfg.shape.detectors = j.value("detectors", cfg.shape.detectors);
        cfg.shape.intervals = j.value("intervals", cfg.shape.intervals);
        return cfg;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed calibration config: ") + e.what());
    }
}

Json CalibrationConfig::to_json() const {
    return {{"target", {{"matrix", complex_matrix_to_json(target_gate)}}},
            {"preparation", complex_vector_to_json(preparation)},
            {"family", {{"bits", family.bits}, {"lo", family.lo}, {"hi", family.hi}}},
            {"gate_model", gate_model_name},
            {"epsilons", epsilons},
            {"budget_factor", budget_factor},
            {"initial_step", initial_step},
            {"max_iterations", max_iterations},
            {"max_rounds", max_rounds},
            {"guess_policy", guess_policy},
            {"detectors", shape.detectors},
            {"intervals", shape.intervals},
            {"seed", seed}};
}

std::uint64_t CalibrationConfig::budget(double epsilon) const {
    return static_cast<std::uint64_t>(std::ceil(budget_factor / (epsilon * epsilon) * (1.0 - 1e-12)));
}

void CalibrationConfig::validate() const {
    auto bad = [](const std::string &message) {
        fail(ErrorKind::BadConfig, message);
    };
    if (epsilons.empty()) {
        bad("the precision schedule is empty");
    }
    for (std::size_t k = 0; k < epsilons.size(); k++) {
        double eps = epsilons[k];
        if (!(eps > 0.0) || eps > 2.0) {
            bad("precision " + std::to_string(eps) + " is outside (0, 2]");
        }
        if (k > 0 && !(eps < epsilons[k - 1])) {
            bad("the precision schedule must be strictly decreasing");
        }
        if (budget(eps) < min_sample_size(eps)) {
            bad("budget " + std::to_string(budget(eps)) + " at precision " + std::to_string(eps) +
                " is below the minimum sample size " + std::to_string(min_sample_size(eps)));
        }
    }
    if (guess_policy != "coordinate-descent") {
        bad("unknown guess policy '" + guess_policy + "'");
    }
    if (family.bits == 0 || family.bits > 16 || !(family.hi > family.lo)) {
        bad("rotation family needs 1..16 bits and hi > lo");
    }
    if (!gate_model) {
        bad("no gate model");
    }
    if (!is_unitary(target_gate) || target_gate.rows() != preparation.size()) {
        bad("target gate must be unitary and match the preparation");
    }
    if (static_cast<std::size_t>(target_gate.rows()) > shape.detectors) {
        bad("fewer detectors than outcomes");
    }
    if (!(initial_step > 0.0) || max_iterations == 0) {
        bad("search needs a positive initial step and at least one iteration");
    }
}

Instrument rotation_instrument(const CalibrationConfig &cfg, double offset, double tilt, std::uint64_t seed) {
    if (cfg.family.bits == 0 || cfg.family.bits > 16) {
        fail(ErrorKind::BadConfig, "rotation family needs 1..16 bits");
    }
    StateFn v;
    UnitaryFn u;
    MeasurementFn m;
    CVector zero = CVector::Zero(2);
    zero(0) = 1;
    SpectralForm z = computational_measurement({0.0, 1.0});
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << cfg.family.bits); k++) {
        Command b = Command::from_uint(k, cfg.family.bits);
        v.set(b, zero);
        u.set(b, rotation_tilted_y(cfg.family.theta(b) + offset, tilt));
        m.set(b, z);
    }
    return Instrument(Model(2, std::move(v), std::move(u), std::move(m)), cfg.shape, seed);
}

NetFragment calibration_mode_net() {
    NetFragment net;
    for (const char *s : {"ready", "testing", "calibrating", "running", "done"}) {
        net.add_state(s, StateRole::Internal, ColorSet::black_only());
    }
    net.add_state("verdict", StateRole::Input,
                  ColorSet::of({Color::text("pass"), Color::text("fail"), Color::text("exhausted"), Color::text("next"),
                                Color::text("stop")}));
    auto plain = [&](const char *id, const char *from, const char *to) {
        Event e;
        e.id = id;
        e.inputs = {from};
        e.outputs = {to};
        e.fn = identity_function();
        net.add_event(e);
    };
    auto on_verdict = [&](const char *id, const char *from, const char *verdict, const char *to) {
        Event e;
        e.id = id;
        e.inputs = {from, "verdict"};
        e.outputs = {to};
        e.fn = table_function({{{Color::black(), Color::text(verdict)}, {Color::black()}}});
        net.add_event(e);
    };
    plain("begin_test", "ready", "testing");
    on_verdict("pass", "testing", "pass", "running");
    on_verdict("fail", "testing", "fail", "calibrating");
    on_verdict("give_up", "testing", "exhausted", "running");
    plain("calibrate", "calibrating", "testing");
    on_verdict("next_stage", "running", "next", "ready");
    on_verdict("stop", "running", "stop", "done");
    net.validate();
    return net;
}

namespace {

class Harness {
   public:
    Harness(const CalibrationConfig &cfg, Instrument &instrument) : cfg_(cfg), instrument_(instrument) {
        parser_.policy = ParsePolicy::PerRecord;
        parser_.shape = cfg.shape;
        for (std::size_t j = 1; j <= static_cast<std::size_t>(cfg.target_gate.rows()); j++) {
            RawRecord r = encode_one_hot(cfg.shape, j);
            values_.push_back(parse_outcomes(parser_, Command(), {r}).tallies(Command())[0].value);
        }
    }

    /// Distance between the target's predicted outcome frequencies and the
    /// parsed frequencies of `trials` runs of the command nearest `theta`.
    double estimate(double theta, std::uint64_t trials, std::uint64_t &used) {
        Command b = cfg_.family.command(theta);
        auto records = instrument_.measure(b, trials);
        used += trials;
        OutcomeRecord record = parse_outcomes(parser_, b, records);
        StateFn v;
        UnitaryFn u;
        MeasurementFn m;
        v.set(b, cfg_.preparation);
        u.set(b, cfg_.target_gate);
        m.set(b, computational_measurement(values_));
        Model predicted(static_cast<std::size_t>(cfg_.target_gate.rows()), v, u, m);
        return weighted_model_distance(predicted, record, CommandWeights::uniform({b}));
    }

   private:
    const CalibrationConfig &cfg_;
    Instrument &instrument_;
    OutcomeParser parser_;
    std::vector<double> values_;
};

double initial_guess(const CalibrationConfig &cfg) {
    double best_theta = cfg.family.lo;
    double best = INFINITY;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << cfg.family.bits); k++) {
        double theta = cfg.family.theta(Command::from_uint(k, cfg.family.bits));
        double gap = spectral_norm(cfg.gate_model(theta) - cfg.target_gate);
        if (gap < best) {
            best = gap;
            best_theta = theta;
        }
    }
    return best_theta;
}

}  // namespace

CalibrationReport run_calibration(const CalibrationConfig &cfg, Instrument &instrument) {
    cfg.validate();
    Harness harness(cfg, instrument);
    NetFragment net = calibration_mode_net();
    CalibrationReport report;
    double theta = initial_guess(cfg);
    report.initial_theta = theta;

    Marking m{{"ready", Color::black()}};
    std::vector<Firing> trace;
    std::size_t stage = 0;
    StageReport current;
    while (true) {
        auto enabled = enabled_events(net, m);
        if (enabled.empty()) {
            Color verdict;
            if (m.count("testing")) {
                current.distance = harness.estimate(theta, current.budget, current.trials);
                current.passed = current.distance <= current.epsilon / 2;
                verdict = Color::text(current.passed                     ? "pass"
                                      : current.rounds < cfg.max_rounds ? "fail"
                                                                         : "exhausted");
            } else if (m.count("running")) {
                current.theta = theta;
                report.stages.push_back(current);
                stage++;
                verdict = Color::text(stage < cfg.epsilons.size() ? "next" : "stop");
            } else {
                break;
            }
            m = inject(net, m, "verdict", verdict);
            continue;
        }
        std::string event = *enabled.begin();
        if (event == "begin_test") {
            current = StageReport{};
            current.epsilon = cfg.epsilons[stage];
            current.budget = cfg.budget(current.epsilon);
        } else if (event == "calibrate") {
            double eps = current.epsilon;
            double step = stage == 0 ? cfg.initial_step : std::min(cfg.initial_step, 4 * cfg.epsilons[stage - 1]);
            for (std::size_t it = 0; it < cfg.max_iterations && step >= eps / 4; it++) {
                double here = harness.estimate(theta, current.budget, current.trials);
                double up = harness.estimate(theta + step, current.budget, current.trials);
                double down = harness.estimate(theta - step, current.budget, current.trials);
                if (std::min(up, down) < here) {
                    theta = cfg.family.snap(up <= down ? theta + step : theta - step);
                    current.moves++;
                } else {
                    step /= 2;
                }
            }
            current.rounds++;
        }
        Firing f;
        m = fire(net, m, event, &f);
        trace.push_back(std::move(f));
    }
    report.mode_trace = firing_trace_jsonl(trace);
    return report;
}

std::string calibration_csv(const CalibrationReport &report) {
    std::ostringstream out;
    out << "epsilon,budget,trials,distance,theta,passed,moves,rounds\n";
    out << std::setprecision(10);
    for (const auto &s : report.stages) {
        out << s.epsilon << "," << s.budget << "," << s.trials << "," << s.distance << "," << s.theta << ","
            << (s.passed ? 1 : 0) << "," << s.moves << "," << s.rounds << "\n";
    }
    return out.str();
}

Json calibration_json(const CalibrationReport &report) {
    Json stages = Json::array();
    for (const auto &s : report.stages) {
        stages.push_back({{"epsilon", s.epsilon},
                          {"budget", s.budget},
                          {"trials", s.trials},
                          {"distance", s.distance},
                          {"theta", s.theta},
                          {"passed", s.passed},
                          {"moves", s.moves},
                          {"rounds", s.rounds}});
    }
    return {{"initial_theta", report.initial_theta}, {"stages", stages}};
}

}  // namespace guesslab
