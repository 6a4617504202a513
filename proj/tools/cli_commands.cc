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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.h"
#include "guesslab/calibration.h"
#include "guesslab/error.h"
#include "guesslab/experiments.h"
#include "guesslab/instrument.h"
#include "guesslab/linalg.h"
#include "guesslab/net_analysis.h"
#include "guesslab/net_io.h"
#include "guesslab/petri_net.h"
#include "guesslab/qm_model.h"
#include "guesslab/stat_distance.h"
#include "guesslab/tmp.h"

namespace guesslab::cli {

namespace fs = std::filesystem;

Json RunManifest::to_json() const {
    Json over = Json::object();
    for (const auto &[k, v] : overrides) {
        over[k] = v;
    }
    return {{"tool", "guesslab"},
            {"version", GUESSLAB_VERSION},
            {"verb", verb},
            {"inputs", inputs},
            {"output_dir", output_dir},
            {"seed", seed},
            {"overrides", over}};
}

void OutputSink::check_writable(const std::vector<std::string> &names) const {
    if (manifest_.output_dir.empty() || force_) {
        return;
    }
    for (const auto &name : names) {
        fs::path path = fs::path(manifest_.output_dir) / name;
        if (fs::exists(path)) {
            fail(ErrorKind::BadConfig, path.string() + " exists; pass --force to overwrite");
        }
    }
}

void OutputSink::write(const std::string &name, const std::string &text) const {
    if (manifest_.output_dir.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    check_writable({name});
    fs::create_directories(manifest_.output_dir);
    fs::path path = fs::path(manifest_.output_dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::BadConfig, "cannot write " + path.string());
    }
    out << text;
}

void OutputSink::json(const std::string &name, Json body) const {
    Json doc = {{"manifest", manifest_.to_json()}};
    for (auto &[k, v] : body.items()) {
        doc[k] = v;
    }
    write(name, doc.dump(2) + "\n");
}

void OutputSink::csv(const std::string &name, const std::string &body) const {
    write(name, "# " + manifest_.to_json().dump() + "\n" + body);
}

void OutputSink::jsonl(const std::string &name, const std::string &body) const {
    write(name, Json{{"manifest", manifest_.to_json()}}.dump() + "\n" + body);
}

std::optional<std::uint64_t> resolve_seed(const CommonOptions &opts) {
    if (opts.seed) {
        return opts.seed;
    }
    const char *env = std::getenv("GUESSLAB_SEED");
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(env, &used);
        if (used != std::string(env).size()) {
            throw std::invalid_argument(env);
        }
        return v;
    } catch (const std::exception &) {
        fail(ErrorKind::BadConfig, std::string("GUESSLAB_SEED is not an unsigned integer: ") + env);
    }
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string> &items) {
    std::map<std::string, std::string> out;
    for (const auto &item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail(ErrorKind::BadConfig, "override must be key=value: " + item);
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

namespace {

RunManifest manifest_for(const std::string &verb, const CommonOptions &opts, std::vector<std::string> inputs,
                         std::uint64_t seed) {
    RunManifest m;
    m.verb = verb;
    m.inputs = std::move(inputs);
    m.output_dir = opts.out;
    m.seed = seed;
    m.overrides = parse_overrides(opts.overrides);
    return m;
}

void reject_overrides(const CommonOptions &opts, const std::string &verb) {
    if (!opts.overrides.empty()) {
        fail(ErrorKind::BadConfig, verb + " takes no --set overrides");
    }
}

NetDocument load_net(const std::string &path) {
    return net_document_from_json(read_json_file(path));
}

Json tokens_json(const std::vector<TimedToken> &tokens) {
    Json out = Json::array();
    for (const auto &t : tokens) {
        out.push_back({{"step", t.step}, {"state", t.state}, {"color", color_to_json(t.color)}});
    }
    return out;
}

Json colors_json(const std::vector<Color> &colors) {
    Json out = Json::array();
    for (const auto &c : colors) {
        out.push_back(color_to_json(c));
    }
    return out;
}

double fit_error(const Model &m, const OutcomeRecord &r) {
    double worst = 0.0;
    for (const auto &[b, tallies] : r) {
        for (std::size_t j = 1; j <= tallies.size(); j++) {
            worst = std::max(worst, std::abs(outcome_probability(m, b, j) - r.frequency(b, j)));
        }
    }
    return worst;
}

std::vector<double> parse_number_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            fail(ErrorKind::ParseError, "not a number: '" + item + "'");
        }
    }
    return out;
}

Verb net_validate() {
    return {"net-validate", "Check a net description file", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                cmd.add_option("net", *path, "Net description (JSON)")->required();
                return [path](const CommonOptions &opts) {
                    reject_overrides(opts, "net-validate");
                    NetDocument doc = load_net(*path);
                    std::size_t inputs = doc.net.states_with_role(StateRole::Input).size();
                    std::size_t outputs = doc.net.states_with_role(StateRole::Output).size();
                    std::cout << *path << ": valid, " << doc.net.states().size() << " states (" << inputs
                              << " input, " << outputs << " output), " << doc.net.events().size() << " events\n";
                };
            }};
}

Verb net_simulate() {
    return {"net-simulate", "Run a net under its scheduler and write the firing trace", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                auto steps = std::make_shared<std::size_t>(100);
                cmd.add_option("net", *path, "Net description (JSON)")->required();
                cmd.add_option("--steps", *steps, "Maximum number of firings")->capture_default_str();
                return [path, steps](const CommonOptions &opts) {
                    reject_overrides(opts, "net-simulate");
                    NetDocument doc = load_net(*path);
                    if (auto seed = resolve_seed(opts)) {
                        doc.scheduler.seed = *seed;
                    }
                    OutputSink sink(manifest_for("net-simulate", opts, {*path}, doc.scheduler.seed), opts.force);
                    sink.check_writable({"trace.jsonl", "summary.json"});
                    SimulationResult r = simulate(doc.net, doc.initial, doc.scheduler, *steps, doc.inputs);
                    sink.jsonl("trace.jsonl", firing_trace_jsonl(r.trace));
                    sink.json("summary.json", {{"steps", r.steps},
                                               {"deadlocked", r.deadlocked},
                                               {"final_marking", marking_to_json(r.final_marking)},
                                               {"outputs", tokens_json(r.outputs)}});
                };
            }};
}

Verb net_analyze() {
    return {"net-analyze", "Reachability, liveness and safety of the reduced net", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                auto bound = std::make_shared<std::size_t>(100000);
                cmd.add_option("net", *path, "Net description (JSON)")->required();
                cmd.add_option("--bound", *bound, "Largest state space explored")->capture_default_str();
                return [path, bound](const CommonOptions &opts) {
                    reject_overrides(opts, "net-analyze");
                    NetDocument doc = load_net(*path);
                    ClassicalNet reduced = reduced_net(doc.net);
                    NetAnalysis a = analyze(reduced, marked_places(reduced, doc.initial), *bound);
                    Json markings = Json::array();
                    for (const auto &m : a.reachable) {
                        markings.push_back(m);
                    }
                    Json violations = Json::array();
                    for (const auto &v : a.violations) {
                        violations.push_back(
                            {{"marking", v.marking}, {"transition", v.transition}, {"place", v.place}});
                    }
                    OutputSink sink(manifest_for("net-analyze", opts, {*path}, 0), opts.force);
                    sink.json("analysis.json", {{"places", reduced.places},
                                                {"reachable", a.reachable.size()},
                                                {"markings", markings},
                                                {"live", a.live},
                                                {"all_live", a.all_live()},
                                                {"deadlocks", a.deadlocks()},
                                                {"safe", a.violations.empty()},
                                                {"violations", violations}});
                };
            }};
}

ColorPartition partition_from_json(const Json &j) {
    ColorPartition p;
    try {
        for (const auto &[state, blocks] : j.items()) {
            for (const auto &[label, colors] : blocks.items()) {
                ColorBlock block{label, {}};
                for (const auto &c : colors) {
                    block.colors.insert(color_from_json(c));
                }
                p[state].push_back(std::move(block));
            }
        }
    } catch (const Json::exception &e) {
        fail(ErrorKind::ParseError, std::string("malformed partition: ") + e.what());
    }
    return p;
}

Verb net_refine() {
    return {"net-refine", "Split states into color blocks", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                auto partition = std::make_shared<std::string>();
                cmd.add_option("net", *path, "Net description (JSON)")->required();
                cmd.add_option("--partition", *partition, "{state: {label: [colors]}} (JSON)")->required();
                return [path, partition](const CommonOptions &opts) {
                    reject_overrides(opts, "net-refine");
                    NetDocument doc = load_net(*path);
                    Refinement r = refine_colors(doc.net, partition_from_json(read_json_file(*partition)));
                    NetDocument out;
                    out.net = r.net;
                    out.initial = r.refine_marking(doc.initial);
                    out.scheduler = doc.scheduler;
                    out.scheduler.order.clear();
                    for (const auto &e : doc.scheduler.order) {
                        for (const auto &[refined, origin] : r.event_origin) {
                            if (origin == e) {
                                out.scheduler.order.push_back(refined);
                            }
                        }
                    }
                    for (const auto &t : doc.inputs) {
                        for (const auto &[state, color] : r.refine_marking({{t.state, t.color}})) {
                            out.inputs.push_back({t.step, state, color});
                        }
                    }
                    OutputSink sink(manifest_for("net-refine", opts, {*path, *partition}, 0), opts.force);
                    sink.json("refined.json", net_document_to_json(out));
                };
            }};
}

Verb net_coarsen() {
    return {"net-coarsen", "Replace every color by the black token", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                cmd.add_option("net", *path, "Net description (JSON)")->required();
                return [path](const CommonOptions &opts) {
                    reject_overrides(opts, "net-coarsen");
                    NetDocument doc = load_net(*path);
                    NetDocument out;
                    out.net = coarsen_colors(doc.net);
                    out.initial = coarsen_marking(doc.initial);
                    out.scheduler = doc.scheduler;
                    for (const auto &t : doc.inputs) {
                        out.inputs.push_back({t.step, t.state, Color::black()});
                    }
                    OutputSink sink(manifest_for("net-coarsen", opts, {*path}, 0), opts.force);
                    sink.json("coarse.json", net_document_to_json(out));
                };
            }};
}

Verb fit_models() {
    struct Args {
        std::string record;
        std::string phases = "zero";
        std::string method = "basis";
        std::size_t count = 1;
        std::size_t padding_dim = 0;
    };
    return {"fit-models", "Construct models that reproduce an outcome record exactly", [](CLI::App &cmd) {
                auto a = std::make_shared<Args>();
                cmd.add_option("--record", a->record, "Outcome record (JSON)")->required();
                cmd.add_option("--phases", a->phases, "zero or random")
                    ->check(CLI::IsMember({"zero", "random"}))
                    ->capture_default_str();
                cmd.add_option("--method", a->method, "basis or orthogonal")
                    ->check(CLI::IsMember({"basis", "orthogonal"}))
                    ->capture_default_str();
                cmd.add_option("--count", a->count, "Number of models (basis method)")->capture_default_str();
                cmd.add_option("--padding-dim", a->padding_dim, "Hilbert space dimension (basis method)");
                return [a](const CommonOptions &opts) {
                    reject_overrides(opts, "fit-models");
                    std::uint64_t seed = resolve_seed(opts).value_or(0);
                    CommonOptions where = opts;
                    if (where.out.empty()) {
                        where.out = ".";
                    }
                    OutcomeRecord record = record_from_json(read_json_file(a->record));
                    if (record.empty()) {
                        fail(ErrorKind::InvalidRecord, a->record + " has no outcomes");
                    }
                    RunManifest m = manifest_for("fit-models", where, {a->record}, seed);
                    m.overrides["phases"] = a->phases;
                    m.overrides["method"] = a->method;
                    std::vector<Model> models;
                    if (a->method == "orthogonal") {
                        auto [alpha, beta] = construct_orthogonal_pair(record);
                        models = {alpha, beta};
                    } else {
                        if (a->count == 0) {
                            fail(ErrorKind::BadConfig, "--count must be positive");
                        }
                        std::size_t dim = a->padding_dim ? a->padding_dim : record.max_distinct();
                        for (std::size_t k = 0; k < a->count; k++) {
                            PhaseAssignment phases =
                                a->phases == "random" ? PhaseAssignment::random(record, derive_seed(seed, k))
                                                      : PhaseAssignment{};
                            models.push_back(construct_fitting_model(record, phases, dim));
                        }
                    }
                    OutputSink sink(m, opts.force);
                    std::vector<std::string> names;
                    for (std::size_t k = 0; k < models.size(); k++) {
                        names.push_back("model_" + std::to_string(k + 1) + ".json");
                    }
                    sink.check_writable(names);
                    for (std::size_t k = 0; k < models.size(); k++) {
                        double err = fit_error(models[k], record);
                        if (err >= 1e-12) {
                            fail(ErrorKind::InvalidModel, names[k] + " misses the record by " + std::to_string(err));
                        }
                        sink.json(names[k], {{"model", model_to_json(models[k])}, {"fit_error", err}});
                        std::cout << (fs::path(where.out) / names[k]).string() << " max|Pr-n/N| " << err << "\n";
                    }
                };
            }};
}

Verb distance() {
    struct Args {
        std::string p;
        std::string q;
        std::vector<std::string> models;
        std::string record;
    };
    return {"distance", "Statistical distance between distributions or models", [](CLI::App &cmd) {
                auto a = std::make_shared<Args>();
                cmd.add_option("--p", a->p, "Distribution as a JSON array");
                cmd.add_option("--q", a->q, "Distribution as a JSON array");
                cmd.add_option("--model", a->models, "Model file (give two, or one with --record)");
                cmd.add_option("--record", a->record, "Outcome record compared with --model");
                return [a](const CommonOptions &opts) {
                    reject_overrides(opts, "distance");
                    double d = 0.0;
                    std::vector<std::string> inputs;
                    if (!a->p.empty() || !a->q.empty()) {
                        if (a->p.empty() || a->q.empty() || !a->models.empty()) {
                            fail(ErrorKind::BadConfig, "give both --p and --q, and no --model");
                        }
                        auto p = parse_json_text(a->p, "--p").get<std::vector<double>>();
                        auto q = parse_json_text(a->q, "--q").get<std::vector<double>>();
                        d = statistical_distance(p, q);
                        inputs = {a->p, a->q};
                    } else {
                        auto load = [](const std::string &path) {
                            Json j = read_json_file(path);
                            return model_from_json(j.contains("model") ? j.at("model") : j);
                        };
                        if (a->models.size() == 2 && a->record.empty()) {
                            Model alpha = load(a->models[0]);
                            Model beta = load(a->models[1]);
                            d = weighted_model_distance(alpha, beta, CommandWeights::uniform(alpha.commands()));
                        } else if (a->models.size() == 1 && !a->record.empty()) {
                            Model alpha = load(a->models[0]);
                            OutcomeRecord r = record_from_json(read_json_file(a->record));
                            d = weighted_model_distance(alpha, r, CommandWeights::uniform(r.commands()));
                        } else {
                            fail(ErrorKind::BadConfig, "give --p and --q, two --model files, or --model with --record");
                        }
                        inputs = a->models;
                        if (!a->record.empty()) {
                            inputs.push_back(a->record);
                        }
                    }
                    if (opts.out.empty()) {
                        std::printf("%.7f\n", d);
                        return;
                    }
                    OutputSink sink(manifest_for("distance", opts, inputs, 0), opts.force);
                    sink.json("distance.json", {{"distance", d}});
                };
            }};
}

Verb sample_size() {
    struct Args {
        std::string eps = "0.2,0.1,0.05,0.025";
        double power = 0.95;
        std::size_t repetitions = 500;
        std::uint64_t max_trials = 100000000;
    };
    return {"sample-size", "Trials needed to tell apart models at spectral distance eps", [](CLI::App &cmd) {
                auto a = std::make_shared<Args>();
                cmd.add_option("--eps", a->eps, "Comma-separated precisions")->capture_default_str();
                cmd.add_option("--power", a->power, "Target power")->capture_default_str();
                cmd.add_option("--reps", a->repetitions, "Repetitions per trial count")->capture_default_str();
                cmd.add_option("--max-trials", a->max_trials, "Search ceiling")->capture_default_str();
                return [a](const CommonOptions &opts) {
                    reject_overrides(opts, "sample-size");
                    SampleSizeConfig cfg;
                    cfg.epsilons = parse_number_list(a->eps);
                    cfg.power = a->power;
                    cfg.repetitions = a->repetitions;
                    cfg.max_trials = a->max_trials;
                    cfg.seed = resolve_seed(opts).value_or(0);
                    RunManifest m = manifest_for("sample-size", opts, {}, cfg.seed);
                    m.overrides = {{"eps", a->eps},
                                   {"power", Json(a->power).dump()},
                                   {"reps", std::to_string(a->repetitions)},
                                   {"max_trials", std::to_string(a->max_trials)}};
                    OutputSink sink(m, opts.force);
                    if (!opts.out.empty()) {
                        sink.check_writable({"sample_size.csv", "sample_size.json"});
                    }
                    SampleSizeResult r = sample_size_experiment(cfg);
                    sink.csv("sample_size.csv", sample_size_csv(r, cfg.seed));
                    if (!opts.out.empty()) {
                        Json slope = std::isnan(r.slope) ? Json(nullptr) : Json(r.slope);
                        sink.json("sample_size.json", {{"slope", slope}, {"rows", r.rows.size()}});
                    }
                };
            }};
}

Json apply_overrides(Json config, const std::map<std::string, std::string> &overrides) {
    for (const auto &[key, value] : overrides) {
        Json parsed;
        try {
            parsed = Json::parse(value);
        } catch (const Json::parse_error &) {
            parsed = value;
        }
        std::string pointer = "/" + key;
        std::replace(pointer.begin(), pointer.end(), '.', '/');
        config[Json::json_pointer(pointer)] = parsed;
    }
    return config;
}

Verb calibrate() {
    return {"calibrate", "Run the staged calibration harness against a simulated instrument", [](CLI::App &cmd) {
                auto path = std::make_shared<std::string>();
                cmd.add_option("config", *path, "Calibration config (JSON)")->required();
                return [path](const CommonOptions &opts) {
                    Json j;
                    try {
                        j = apply_overrides(read_json_file(*path), parse_overrides(opts.overrides));
                    } catch (const Json::exception &e) {
                        fail(ErrorKind::BadConfig, std::string("bad override: ") + e.what());
                    }
                    if (auto seed = resolve_seed(opts)) {
                        j["seed"] = *seed;
                    }
                    CalibrationConfig cfg = CalibrationConfig::from_json(j);
                    cfg.validate();
                    Json instr = j.value("instrument", Json::object());
                    double offset = 0.0;
                    double tilt = 0.0;
                    std::uint64_t instr_seed = derive_seed(cfg.seed, 1);
                    try {
                        offset = instr.value("offset", 0.0);
                        tilt = instr.value("tilt", 0.0);
                        instr_seed = instr.value("seed", instr_seed);
                    } catch (const Json::exception &e) {
                        fail(ErrorKind::ParseError, std::string("malformed instrument section: ") + e.what());
                    }
                    OutputSink sink(manifest_for("calibrate", opts, {*path}, cfg.seed), opts.force);
                    sink.check_writable({"calibration.csv", "calibration.json", "mode_trace.jsonl"});
                    Instrument instrument = rotation_instrument(cfg, offset, tilt, instr_seed);
                    CalibrationReport report = run_calibration(cfg, instrument);
                    sink.csv("calibration.csv", calibration_csv(report));
                    Json summary = calibration_json(report);
                    summary["config"] = cfg.to_json();
                    summary["instrument"] = {{"offset", offset}, {"tilt", tilt}, {"seed", instr_seed}};
                    sink.json("calibration.json", summary);
                    sink.jsonl("mode_trace.jsonl", report.mode_trace);
                };
            }};
}

Verb gate_error() {
    struct Args {
        std::string gates;
        std::size_t count = 20;
        std::size_t dim = 2;
        double eps = 0.005;
        std::size_t draws = 100;
    };
    return {"gate-error", "Spectral-norm error of a perturbed gate sequence", [](CLI::App &cmd) {
                auto a = std::make_shared<Args>();
                cmd.add_option("--gates", a->gates, "JSON array of gate matrices (default: random gates)");
                cmd.add_option("--count", a->count, "Number of random gates")->capture_default_str();
                cmd.add_option("--dim", a->dim, "Dimension of random gates")->capture_default_str();
                cmd.add_option("--eps", a->eps, "Perturbation norm per gate")->capture_default_str();
                cmd.add_option("--draws", a->draws, "Perturbation draws")->capture_default_str();
                return [a](const CommonOptions &opts) {
                    reject_overrides(opts, "gate-error");
                    std::uint64_t seed = resolve_seed(opts).value_or(0);
                    std::vector<CMatrix> gates;
                    std::vector<std::string> inputs;
                    if (!a->gates.empty()) {
                        Json j = read_json_file(a->gates);
                        if (!j.is_array()) {
                            fail(ErrorKind::ParseError, a->gates + ": expected an array of matrices");
                        }
                        for (const auto &g : j) {
                            gates.push_back(complex_matrix_from_json(g));
                        }
                        inputs.push_back(a->gates);
                    } else {
                        std::mt19937_64 rng(derive_seed(seed, 0));
                        for (std::size_t k = 0; k < a->count; k++) {
                            gates.push_back(random_unitary(rng, a->dim));
                        }
                    }
                    RunManifest m = manifest_for("gate-error", opts, inputs, seed);
                    m.overrides = {{"count", std::to_string(gates.size())},
                                   {"eps", Json(a->eps).dump()},
                                   {"draws", std::to_string(a->draws)}};
                    GateSequenceError r = gate_sequence_error(gates, a->eps, a->draws, derive_seed(seed, 1));
                    OutputSink sink(m, opts.force);
                    sink.json("gate_error.json", {{"gates", gates.size()},
                                                  {"eps", a->eps},
                                                  {"bound", r.bound},
                                                  {"measured", r.measured},
                                                  {"ratio", r.bound > 0 ? Json(r.measured / r.bound) : Json(nullptr)},
                                                  {"draws", r.draws}});
                };
            }};
}

Verb tmp_run() {
    struct Args {
        std::string program;
        std::string tape;
        std::string inputs;
        std::size_t max_steps = 10000;
    };
    return {"tmp-run", "Load a program into a process-control machine and run it", [](CLI::App &cmd) {
                auto a = std::make_shared<Args>();
                cmd.add_option("program", a->program, "Program table (JSON)")->required();
                cmd.add_option("--tape", a->tape, "Initial tape contents");
                cmd.add_option("--inputs", a->inputs, "Comma-separated scientist symbols ('interrupt' allowed)");
                cmd.add_option("--max-steps", a->max_steps, "Step limit")->capture_default_str();
                return [a](const CommonOptions &opts) {
                    reject_overrides(opts, "tmp-run");
                    TmpProgram program = TmpProgram::from_json(read_json_file(a->program));
                    std::vector<Color> inputs;
                    std::stringstream ss(a->inputs);
                    std::string item;
                    while (!a->inputs.empty() && std::getline(ss, item, ',')) {
                        inputs.push_back(item == "interrupt" ? interrupt_token() : data_token(item));
                    }
                    Tmp tmp;
                    TmpRun run = run_program(tmp, program_token(program, a->tape), inputs, a->max_steps);
                    RunManifest m = manifest_for("tmp-run", opts, {a->program}, 0);
                    m.overrides = {{"tape", a->tape}, {"inputs", a->inputs}};
                    OutputSink sink(m, opts.force);
                    sink.json("tmp_run.json", {{"steps", run.steps},
                                               {"halted", run.halted},
                                               {"timed_out", run.timed_out},
                                               {"state", tmp.state()},
                                               {"head", tmp.head()},
                                               {"tape", tmp.tape()},
                                               {"memory_hash", tmp.memory_hash()},
                                               {"scientist_outputs", colors_json(run.scientist_outputs)},
                                               {"instrument_outputs", colors_json(run.instrument_outputs)},
                                               {"noop_log", tmp.noop_log()}});
                };
            }};
}

}  // namespace

std::vector<Verb> verbs() {
    return {net_validate(), net_simulate(), net_analyze(), net_refine(), net_coarsen(), fit_models(),
            distance(),     sample_size(),  calibrate(),   gate_error(), tmp_run()};
}

}  // namespace guesslab::cli
