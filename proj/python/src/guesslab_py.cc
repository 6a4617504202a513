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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "guesslab/calibration.h"
#include "guesslab/error.h"
#include "guesslab/experiments.h"
#include "guesslab/net_analysis.h"
#include "guesslab/net_io.h"
#include "guesslab/qm_model.h"
#include "guesslab/stat_distance.h"
#include "guesslab/tmp.h"

namespace py = pybind11;
using namespace guesslab;

namespace {

Json parse(const std::string &text, const char *what) {
    return parse_json_text(text, what);
}

std::string outcome_distribution_json(const std::string &model, const std::string &command_bits) {
    Model m = model_from_json(parse(model, "model"));
    return Json(outcome_distribution(m, Command::from_bits(command_bits))).dump();
}

std::string fit_model(const std::string &record_json, bool random_phases, std::uint64_t seed, std::size_t padding_dim) {
    OutcomeRecord record = record_from_json(parse(record_json, "record"));
    PhaseAssignment phases = random_phases ? PhaseAssignment::random(record, seed) : PhaseAssignment{};
    return model_to_json(construct_fitting_model(record, phases, padding_dim ? padding_dim : record.max_distinct()))
        .dump();
}

std::pair<std::string, std::string> orthogonal_pair(const std::string &record_json) {
    auto [a, b] = construct_orthogonal_pair(record_from_json(parse(record_json, "record")));
    return {model_to_json(a).dump(), model_to_json(b).dump()};
}

double model_record_distance(const std::string &model, const std::string &record_json) {
    Model m = model_from_json(parse(model, "model"));
    OutcomeRecord r = record_from_json(parse(record_json, "record"));
    return weighted_model_distance(m, r, CommandWeights::uniform(r.commands()));
}

py::dict sample_size(const std::vector<double> &epsilons, double power, std::size_t repetitions, std::uint64_t seed,
                     std::uint64_t max_trials) {
    SampleSizeConfig cfg;
    cfg.epsilons = epsilons;
    cfg.power = power;
    cfg.repetitions = repetitions;
    cfg.seed = seed;
    cfg.max_trials = max_trials;
    SampleSizeResult r = sample_size_experiment(cfg);
    py::list rows;
    for (const auto &row : r.rows) {
        py::dict d;
        d["epsilon"] = row.epsilon;
        d["n_bound"] = row.n_bound;
        d["n_empirical"] = row.n_empirical;
        d["power"] = row.power;
        d["saturated"] = row.saturated;
        rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["slope"] = r.slope;
    out["csv"] = sample_size_csv(r, seed);
    return out;
}

py::dict gate_error(const std::vector<CMatrix> &gates, double eps, std::size_t draws, std::uint64_t seed) {
    GateSequenceError r = gate_sequence_error(gates, eps, draws, seed);
    py::dict out;
    out["bound"] = r.bound;
    out["measured"] = r.measured;
    out["draws"] = r.draws;
    return out;
}

std::string simulate_net(const std::string &doc_json, std::size_t max_steps) {
    NetDocument doc = net_document_from_json(parse(doc_json, "net"));
    SimulationResult r = simulate(doc.net, doc.initial, doc.scheduler, max_steps, doc.inputs);
    Json outputs = Json::array();
    for (const auto &t : r.outputs) {
        outputs.push_back({{"step", t.step}, {"state", t.state}, {"color", color_to_json(t.color)}});
    }
    return Json{{"steps", r.steps},
                {"deadlocked", r.deadlocked},
                {"final_marking", marking_to_json(r.final_marking)},
                {"outputs", outputs},
                {"trace", firing_trace_jsonl(r.trace)}}
        .dump();
}

std::string analyze_net(const std::string &doc_json, std::size_t bound) {
    NetDocument doc = net_document_from_json(parse(doc_json, "net"));
    ClassicalNet reduced = reduced_net(doc.net);
    NetAnalysis a = analyze(reduced, marked_places(reduced, doc.initial), bound);
    Json markings = Json::array();
    for (const auto &m : a.reachable) {
        markings.push_back(m);
    }
    return Json{{"reachable", a.reachable.size()},
                {"markings", markings},
                {"live", a.live},
                {"all_live", a.all_live()},
                {"deadlocks", a.deadlocks()},
                {"safe", a.violations.empty()}}
        .dump();
}

std::string run_tmp(const std::string &program_json, const std::string &tape, const std::vector<std::string> &inputs,
                    std::size_t max_steps) {
    TmpProgram program = TmpProgram::from_json(parse(program_json, "program"));
    std::vector<Color> tokens;
    for (const auto &s : inputs) {
        tokens.push_back(s == "interrupt" ? interrupt_token() : data_token(s));
    }
    Tmp tmp;
    TmpRun run = run_program(tmp, program_token(program, tape), tokens, max_steps);
    Json sci = Json::array();
    for (const auto &c : run.scientist_outputs) {
        sci.push_back(color_to_json(c));
    }
    return Json{{"steps", run.steps},     {"halted", run.halted},         {"timed_out", run.timed_out},
                {"state", tmp.state()},   {"tape", tmp.tape()},           {"head", tmp.head()},
                {"scientist_outputs", sci}, {"noop_log", tmp.noop_log()}}
        .dump();
}

std::string calibrate(const std::string &config_json, double offset, double tilt, std::uint64_t instrument_seed) {
    CalibrationConfig cfg = CalibrationConfig::from_json(parse(config_json, "config"));
    cfg.validate();
    Instrument instrument = rotation_instrument(cfg, offset, tilt, instrument_seed);
    CalibrationReport report = run_calibration(cfg, instrument);
    Json out = calibration_json(report);
    out["csv"] = calibration_csv(report);
    out["mode_trace"] = report.mode_trace;
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_guesslab, m) {
    m.doc() = "Model fitting, statistical distance, colored nets and calibration experiments";
    m.attr("__version__") = GUESSLAB_VERSION;

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::exception<Error>(m, "GuesslabError", PyExc_RuntimeError)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            const py::object &type = error_type.get_stored();
            py::object err = type(e.what());
            err.attr("kind") = std::string(error_kind_name(e.kind()));
            PyErr_SetObject(type.ptr(), err.ptr());
        }
    });

    register_tmp_color_functions();

    m.def(
        "statistical_distance",
        [](const std::vector<double> &p, const std::vector<double> &q) { return statistical_distance(p, q); },
        py::arg("p"), py::arg("q"));
    m.def("min_sample_size", &min_sample_size, py::arg("epsilon"));
    m.def("vector_distance_bound", &vector_distance_bound, py::arg("a"), py::arg("b"));
    m.def("spectral_norm", &spectral_norm, py::arg("matrix"));
    m.def("outcome_distribution", &outcome_distribution_json, py::arg("model"), py::arg("command"));
    m.def("fit_model", &fit_model, py::arg("record"), py::arg("random_phases") = false, py::arg("seed") = 0,
          py::arg("padding_dim") = 0);
    m.def("orthogonal_pair", &orthogonal_pair, py::arg("record"));
    m.def("model_record_distance", &model_record_distance, py::arg("model"), py::arg("record"));
    m.def("sample_size", &sample_size, py::arg("epsilons"), py::arg("power") = 0.95, py::arg("repetitions") = 500,
          py::arg("seed") = 0, py::arg("max_trials") = 100000000);
    m.def("gate_sequence_error", &gate_error, py::arg("gates"), py::arg("eps"), py::arg("draws") = 100,
          py::arg("seed") = 0);
    m.def("simulate_net", &simulate_net, py::arg("net"), py::arg("max_steps") = 100);
    m.def("analyze_net", &analyze_net, py::arg("net"), py::arg("bound") = 100000);
    m.def("run_tmp", &run_tmp, py::arg("program"), py::arg("tape") = "", py::arg("inputs") = std::vector<std::string>{},
          py::arg("max_steps") = 10000);
    m.def("calibrate", &calibrate, py::arg("config"), py::arg("offset"), py::arg("tilt") = 0.0,
          py::arg("instrument_seed") = 0);
}
