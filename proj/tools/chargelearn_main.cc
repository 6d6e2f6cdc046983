// Copyright 2026 The chargelearn Authors
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

#include <bit>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chargelearn/circuit_io.h"
#include "chargelearn/dataset.h"
#include "chargelearn/experiment.h"
#include "chargelearn/mitigation.h"
#include "chargelearn/report.h"
#include "chargelearn/trajectory_io.h"
#include "json.hpp"

using namespace chargelearn;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<DecoderKind> parse_decoder_list(const std::vector<std::string> &names) {
    std::vector<DecoderKind> out;
    for (const auto &n : names) {
        if (n == "none") {
            continue;
        }
        out.push_back(parse_decoder(n));
    }
    return out;
}

ojson decoder_names(const std::vector<DecoderKind> &kinds) {
    ojson out = ojson::array();
    for (DecoderKind k : kinds) {
        out.push_back(decoder_name(k));
    }
    return out;
}

// Every output gets a sidecar naming the inputs and seeds it came from.
void write_run_record(const fs::path &output, ojson record) {
    fs::path sidecar = output;
    sidecar += ".run.json";
    write_text_file(sidecar, record.dump(2) + "\n");
}

ojson discard_json(const DiscardStatistics &s) {
    return ojson{
        {"total", s.total},
        {"retained", s.retained()},
        {"charge_mismatch", s.charge_mismatch},
        {"zero_credence", s.zero_credence},
        {"heralded", s.heralded},
        {"discard_fraction", s.discard_fraction()},
        {"discard_error", s.discard_error()},
    };
}

struct GenCircuitArgs {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    std::optional<double> gamma;
    std::optional<double> p;
    uint64_t seed = 1;
    uint32_t scramble = 5;
    std::string out;
};

int gen_circuit(const GenCircuitArgs &a) {
    if (a.gamma.has_value() == a.p.has_value()) {
        throw std::invalid_argument("gen-circuit: give exactly one of --gamma or --p");
    }
    MeasurementPlan plan = a.gamma ? MeasurementPlan::weak_all(*a.gamma) : MeasurementPlan::projective_fraction(*a.p);
    CircuitSpec spec = build_circuit(a.num_qubits, a.depth ? a.depth : a.num_qubits / 2, plan, a.seed, a.scramble);
    save_circuit(spec, a.out);
    std::cout << "wrote " << a.out << " (L=" << spec.num_qubits << ", t=" << spec.depth << ")\n";
    return 0;
}

struct SampleArgs {
    std::string circuit;
    uint64_t shots = 0;
    uint64_t seed = 2;
    double p2q = 0;
    std::optional<int> charge;
    std::vector<std::string> decoders = {"postbqp", "sep"};
    uint32_t postbqp_max = 16;
    unsigned threads = 0;
    std::string out;
};

int sample(const SampleArgs &a) {
    CircuitSpec spec = load_circuit(a.circuit);
    ExperimentConfig config;
    config.trajectory_seed = a.seed;
    config.noise.p2q = a.p2q;
    config.noise.validate();
    config.decoders = parse_decoder_list(a.decoders);
    config.postbqp_max_qubits = a.postbqp_max;
    config.threads = a.threads;
    std::vector<int> charges;
    if (a.charge) {
        if (!spec.is_candidate(*a.charge)) {
            throw std::invalid_argument("--charge " + std::to_string(*a.charge) + " is not a candidate charge of the circuit");
        }
        charges.assign(a.shots, *a.charge);
    } else {
        // Same label stream as a sweep cell for circuit realization 0.
        Rng rng = make_rng(a.seed, SeedDomain::Labels, {spec.num_qubits, std::bit_cast<uint64_t>(spec.plan.parameter()), 0});
        charges = balanced_charges(a.shots, spec.candidate_charges, rng);
    }
    auto results = run_shots(config, spec, 0, charges);
    write_trajectory_file(a.out, spec, results);
    write_run_record(a.out, ojson{
                                {"command", "sample"},
                                {"circuit", a.circuit},
                                {"circuit_seed", spec.seed},
                                {"shots", a.shots},
                                {"trajectory_seed", a.seed},
                                {"p2q", a.p2q},
                                {"charge", a.charge ? ojson(*a.charge) : ojson("balanced")},
                                {"decoders", decoder_names(config.decoders)},
                                {"postbqp_max_qubits", a.postbqp_max},
                            });
    std::cout << "wrote " << results.size() << " trajectories to " << a.out << "\n";
    return 0;
}

struct DecodeArgs {
    std::string circuit;
    std::string in;
    std::vector<std::string> decoders = {"postbqp", "sep"};
    std::string out;
};

int decode(const DecodeArgs &a) {
    CircuitSpec spec = load_circuit(a.circuit);
    auto lines = read_trajectory_file(a.in);
    auto decoders = parse_decoder_list(a.decoders);
    std::vector<TrajectoryResult> results;
    for (auto &line : lines) {
        check_compatible(spec, line);
        TrajectoryResult r = std::move(line.result);
        r.postbqp.reset();
        r.sep.reset();
        decode_shot(spec, r, decoders);
        results.push_back(std::move(r));
    }
    write_trajectory_file(a.out, spec, results);
    write_run_record(a.out, ojson{{"command", "decode"}, {"circuit", a.circuit}, {"circuit_seed", spec.seed},
                                  {"input", a.in}, {"decoders", decoder_names(decoders)}});
    std::cout << "decoded " << results.size() << " trajectories into " << a.out << "\n";
    return 0;
}

struct MitigateArgs {
    std::string in;
    std::string out;
    std::string stats;
    bool no_charge_check = false;
    bool no_zero_credence = false;
};

int mitigate_cmd(const MitigateArgs &a) {
    auto lines = read_trajectory_file(a.in);
    if (lines.empty()) {
        throw std::invalid_argument(a.in + ": no trajectories");
    }
    MitigationFilters filters{!a.no_charge_check, !a.no_zero_credence};
    std::vector<TrajectoryResult> shots;
    for (const auto &l : lines) {
        shots.push_back(l.result);
    }
    auto result = mitigate(shots, filters);
    std::string text;
    for (size_t k = 0; k < shots.size(); k++) {
        if (discard_reason(shots[k], filters) != DiscardReason::Retained) {
            continue;
        }
        const auto &l = lines[k];
        CircuitSpec shape;
        shape.num_qubits = l.num_qubits;
        shape.depth = l.depth;
        shape.plan = l.kind == MeasurementKind::WeakAll ? MeasurementPlan::weak_all(l.plan_parameter)
                                                        : MeasurementPlan::projective_fraction(l.plan_parameter);
        shape.seed = l.circuit_seed;
        shape.candidate_charges = l.candidate_charges;
        text += format_trajectory_line(shape, shots[k]) + "\n";
    }
    write_text_file(a.out, text);
    ojson stats = discard_json(result.stats);
    ojson record{{"command", "mitigate"}, {"input", a.in},
                 {"charge_check", filters.charge_check}, {"zero_credence", filters.zero_credence},
                 {"statistics", stats}};
    write_run_record(a.out, record);
    if (!a.stats.empty()) {
        write_text_file(a.stats, stats.dump(2) + "\n");
    }
    std::cout << stats.dump(2) << "\n";
    return 0;
}

struct ConfigArgs {
    std::string config;
    std::vector<uint32_t> sizes;
    std::vector<double> grid;
    std::optional<uint64_t> shots;
    std::string plan;
    std::optional<double> p2q;
    std::optional<uint64_t> circuit_seed;
    std::optional<uint64_t> trajectory_seed;
    std::optional<uint32_t> circuits;
    std::vector<std::string> decoders;
    std::optional<unsigned> threads;
    std::string binder_form;
    std::string entropy_timing;
    std::string out;
    bool no_trajectories = false;
};

ExperimentConfig resolve_config(const ConfigArgs &a) {
    ExperimentConfig c;
    if (!a.config.empty()) {
        c = experiment_config_from_json(read_text_file(a.config));
    }
    if (!a.sizes.empty()) {
        c.sizes = a.sizes;
    }
    if (!a.grid.empty()) {
        c.grid = a.grid;
    }
    if (a.shots) {
        c.shots = *a.shots;
    }
    if (!a.plan.empty()) {
        c.kind = parse_measurement_kind(a.plan);
    }
    if (a.p2q) {
        c.noise.p2q = *a.p2q;
    }
    if (a.circuit_seed) {
        c.circuit_seed = *a.circuit_seed;
    }
    if (a.trajectory_seed) {
        c.trajectory_seed = *a.trajectory_seed;
    }
    if (a.circuits) {
        c.circuits = *a.circuits;
    }
    if (!a.decoders.empty()) {
        c.decoders = parse_decoder_list(a.decoders);
    }
    if (a.threads) {
        c.threads = *a.threads;
    }
    if (!a.binder_form.empty()) {
        c.binder_form = parse_binder_form(a.binder_form);
    }
    if (a.entropy_timing == "before-terminal-sweep") {
        c.entropy_timing = EntropyTiming::BeforeTerminalSweep;
    } else if (a.entropy_timing == "after-terminal-sweep") {
        c.entropy_timing = EntropyTiming::AfterTerminalSweep;
    }
    c.validate();
    return c;
}

int sweep(const ConfigArgs &a) {
    ExperimentConfig config = resolve_config(a);
    SweepResult result = run_sweep(config);
    write_sweep_outputs(a.out, result, !a.no_trajectories);
    size_t failed = 0;
    for (const auto &s : result.statistics) {
        failed += s.failed;
        for (const auto &n : s.notes) {
            std::cerr << "L=" << s.num_qubits << " parameter=" << s.parameter << ": " << n << "\n";
        }
    }
    std::cout << "wrote sweep outputs to " << a.out << " (" << result.statistics.size() << " cells, " << failed
              << " failed)\n";
    return failed ? 3 : 0;
}

int binder(const ConfigArgs &a) {
    ExperimentConfig config = resolve_config(a);
    if (config.kind != MeasurementKind::WeakAll) {
        throw std::invalid_argument("binder: reference trajectories need a weak-all plan");
    }
    BinderSweep result = run_binder_sweep(config);
    write_binder_outputs(a.out, result);
    size_t failed = 0;
    for (const auto &s : result.statistics) {
        failed += s.failed;
    }
    for (const auto &x : binder_crossings(config, result.statistics)) {
        std::cout << "L=" << x.smaller << " vs L=" << x.larger << " crossings:";
        for (double g : x.locations) {
            std::cout << ' ' << g;
        }
        std::cout << "\n";
    }
    std::cout << "wrote Binder outputs to " << a.out << "\n";
    return failed ? 3 : 0;
}

struct ExportArgs {
    std::string in;
    std::string out;
    double train_fraction = 0.8;
    uint64_t split_seed = 0;
};

int export_cmd(const ExportArgs &a) {
    auto lines = read_trajectory_file(a.in);
    Dataset ds = build_dataset(lines, a.train_fraction, a.split_seed);
    write_dataset(a.out, ds);
    write_run_record(fs::path(a.out) / "manifest.json",
                     ojson{{"command", "export"}, {"input", a.in}, {"train_fraction", a.train_fraction},
                           {"split_seed", a.split_seed}});
    std::cout << "wrote " << ds.train.size() << " train / " << ds.test.size() << " test records to " << a.out << "\n";
    return 0;
}

struct ReportArgs {
    std::string in;
    std::string out;
};

int report(const ReportArgs &a) {
    fs::path in = a.in;
    fs::path out = a.out.empty() ? in : fs::path(a.out);
    if (!fs::exists(in / "run_config.json")) {
        throw std::runtime_error("'" + (in / "run_config.json").string() + "' not found; expected a sweep or binder output directory");
    }
    bool any = false;
    if (fs::exists(in / "trajectories")) {
        SweepResult s = load_sweep(in);
        if (out != in) {
            write_text_file(out / "run_config.json", experiment_config_to_json(s.config));
        }
        write_sweep_reports(out, s.config, s.statistics);
        any = true;
    }
    if (fs::exists(in / "reference")) {
        BinderSweep b = load_binder_sweep(in);
        write_text_file(out / "run_config.json", experiment_config_to_json(b.config));
        write_text_file(out / "binder_curves.csv", binder_curves_csv(b.config, b.statistics));
        write_text_file(out / "binder_crossings.csv", binder_crossings_csv(binder_crossings(b.config, b.statistics)));
        any = true;
    }
    if (!any) {
        throw std::runtime_error("'" + in.string() + "' has neither trajectories/ nor reference/");
    }
    std::cout << "wrote reports to " << out.string() << "\n";
    return 0;
}

void add_config_options(CLI::App *cmd, ConfigArgs &a) {
    cmd->add_option("--config", a.config, "Experiment config JSON")->check(CLI::ExistingFile);
    cmd->add_option("--sizes", a.sizes, "System sizes, e.g. 6,10,14")->delimiter(',');
    cmd->add_option("--grid", a.grid, "Measurement strengths (or rates), e.g. 0.1,0.2")->delimiter(',');
    cmd->add_option("--shots", a.shots, "Shots per (L, grid point)");
    cmd->add_option("--plan", a.plan, "weak-all or projective-fraction");
    cmd->add_option("--p2q", a.p2q, "Bit-flip probability after each two-qubit gate");
    cmd->add_option("--circuit-seed", a.circuit_seed, "Circuit seed");
    cmd->add_option("--trajectory-seed", a.trajectory_seed, "Trajectory seed base");
    cmd->add_option("--circuits", a.circuits, "Circuit realizations per size");
    cmd->add_option("--decoders", a.decoders, "postbqp,sep")->delimiter(',');
    cmd->add_option("--threads", a.threads, "Worker threads (0 = automatic)");
    cmd->add_option("--out", a.out, "Output directory")->required();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monitored charge-conserving circuits: simulation, decoding and scaling statistics"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GenCircuitArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-circuit", "Generate a circuit file");
    gen_cmd->add_option("--L", gen.num_qubits, "Number of qubits (even)")->required();
    gen_cmd->add_option("--t", gen.depth, "Brickwork depth (default L/2)");
    auto *g_opt = gen_cmd->add_option("--gamma", gen.gamma, "Weak measurement strength on every qubit");
    auto *p_opt = gen_cmd->add_option("--p", gen.p, "Projective measurement probability per qubit");
    g_opt->excludes(p_opt);
    gen_cmd->add_option("--seed", gen.seed, "Circuit seed")->capture_default_str();
    gen_cmd->add_option("--scramble-layers", gen.scramble, "Scrambling layers")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output circuit file")->required();

    SampleArgs smp;
    auto *sample_cmd = app.add_subcommand("sample", "Sample (and decode) trajectories of a circuit");
    sample_cmd->add_option("--circuit", smp.circuit, "Circuit file")->required();
    sample_cmd->add_option("--shots", smp.shots, "Number of shots")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", smp.seed, "Trajectory seed base")->capture_default_str();
    sample_cmd->add_option("--p2q", smp.p2q, "Bit-flip probability after each two-qubit gate")->capture_default_str();
    sample_cmd->add_option("--charge", smp.charge, "Fixed true charge (default: balanced)");
    sample_cmd->add_option("--decoders", smp.decoders, "postbqp,sep or none")->delimiter(',')->capture_default_str();
    sample_cmd->add_option("--postbqp-max-qubits", smp.postbqp_max, "Largest L decoded by PostBQP")->capture_default_str();
    sample_cmd->add_option("--threads", smp.threads, "Worker threads (0 = automatic)");
    sample_cmd->add_option("--out", smp.out, "Output trajectory file (JSON lines)")->required();

    DecodeArgs dec;
    auto *decode_cmd = app.add_subcommand("decode", "Decode a trajectory file against its circuit");
    decode_cmd->add_option("--circuit", dec.circuit, "Circuit file")->required();
    decode_cmd->add_option("--in", dec.in, "Input trajectory file")->required();
    decode_cmd->add_option("--decoders", dec.decoders, "postbqp,sep")->delimiter(',')->capture_default_str();
    decode_cmd->add_option("--out", dec.out, "Output trajectory file")->required();

    MitigateArgs mit;
    auto *mitigate_sub = app.add_subcommand("mitigate", "Apply symmetry-based error mitigation");
    mitigate_sub->add_option("--in", mit.in, "Input trajectory file (SEP-decoded)")->required();
    mitigate_sub->add_option("--out", mit.out, "Retained trajectories")->required();
    mitigate_sub->add_option("--stats", mit.stats, "Write discard statistics JSON here");
    mitigate_sub->add_flag("--no-charge-check", mit.no_charge_check, "Keep shots whose final charge differs");
    mitigate_sub->add_flag("--no-zero-credence", mit.no_zero_credence, "Keep shots with zero SEP credence");

    ConfigArgs sw;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run a measurement-strength sweep over system sizes");
    add_config_options(sweep_cmd, sw);
    sweep_cmd->add_flag("--no-trajectories", sw.no_trajectories, "Do not save per-shot trajectory files");

    ConfigArgs bd;
    auto *binder_cmd = app.add_subcommand("binder", "Reference-qubit entropy and Binder ratio sweep");
    add_config_options(binder_cmd, bd);
    binder_cmd->add_option("--binder-form", bd.binder_form, "standard or literal")
        ->check(CLI::IsMember({"standard", "literal"}));
    binder_cmd->add_option("--entropy-timing", bd.entropy_timing, "before-terminal-sweep or after-terminal-sweep")
        ->check(CLI::IsMember({"before-terminal-sweep", "after-terminal-sweep"}));

    ExportArgs ex;
    auto *export_sub = app.add_subcommand("export", "Export a trajectory file as a sequence dataset");
    export_sub->add_option("--in", ex.in, "Input trajectory file")->required();
    export_sub->add_option("--out", ex.out, "Output dataset directory")->required();
    export_sub->add_option("--train-fraction", ex.train_fraction, "Train share")->capture_default_str();
    export_sub->add_option("--split-seed", ex.split_seed, "Split seed")->capture_default_str();

    ReportArgs rep;
    auto *report_cmd = app.add_subcommand("report", "Regenerate CSV reports from a sweep or binder directory");
    report_cmd->add_option("--in", rep.in, "Sweep or binder output directory")->required();
    report_cmd->add_option("--out", rep.out, "Report directory (default: --in)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*gen_cmd) {
            return gen_circuit(gen);
        }
        if (*sample_cmd) {
            return sample(smp);
        }
        if (*decode_cmd) {
            return decode(dec);
        }
        if (*mitigate_sub) {
            return mitigate_cmd(mit);
        }
        if (*sweep_cmd) {
            return sweep(sw);
        }
        if (*binder_cmd) {
            return binder(bd);
        }
        if (*export_sub) {
            return export_cmd(ex);
        }
        if (*report_cmd) {
            return report(rep);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
