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

#include "chargelearn/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "chargelearn/circuit_io.h"
#include "chargelearn/trajectory_io.h"

namespace chargelearn {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

size_t grid_index(const ExperimentConfig &config, double parameter) {
    auto it = std::find(config.grid.begin(), config.grid.end(), parameter);
    if (it == config.grid.end()) {
        throw std::invalid_argument("parameter " + num(parameter) + " is not on the configured grid");
    }
    return static_cast<size_t>(it - config.grid.begin());
}

}  // namespace

std::string credence_curves_csv(std::span<const CellStatistics> statistics) {
    std::ostringstream out;
    out << "L,t,parameter,subset,decoder,shots,mean_credence,mean_credence_error,credence_variance,"
           "credence_variance_error,mean_accuracy,mean_accuracy_error,heralded,charge_mismatch,zero_credence,"
           "discard_fraction,discard_error,retained_fraction\n";
    for (const auto &s : statistics) {
        for (ShotSubset subset : {ShotSubset::Raw, ShotSubset::Mitigated}) {
            for (DecoderKind kind : {DecoderKind::PostBqp, DecoderKind::Sep}) {
                const auto &d = s.get(subset, kind);
                if (!d) {
                    continue;
                }
                out << s.num_qubits << ',' << s.depth << ',' << num(s.parameter) << ',' << subset_name(subset) << ','
                    << decoder_name(kind) << ',' << d->shots << ',' << num(d->credence.value) << ','
                    << num(d->credence.error) << ',' << num(d->credence_variance.value) << ','
                    << num(d->credence_variance.error) << ',' << num(d->accuracy.value) << ','
                    << num(d->accuracy.error) << ',' << d->heralded << ',' << s.discard.charge_mismatch << ','
                    << s.discard.zero_credence << ',' << num(s.discard.discard_fraction()) << ','
                    << num(s.discard.discard_error()) << ',' << num(s.discard.retained_fraction()) << '\n';
            }
        }
    }
    return out.str();
}

std::string discard_table_csv(const ExperimentConfig &config, std::span<const CellStatistics> statistics) {
    std::ostringstream out;
    out << "L";
    for (double g : config.grid) {
        out << ',' << num(g);
    }
    out << '\n';
    for (uint32_t n : config.sizes) {
        out << n;
        for (double g : config.grid) {
            out << ',';
            for (const auto &s : statistics) {
                if (s.num_qubits == n && s.parameter == g && !s.failed) {
                    out << num(100 * s.discard.discard_fraction());
                    break;
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string variance_peaks_csv(std::span<const PeakSummary> peaks) {
    std::ostringstream out;
    out << "L,subset,decoder,peak_location,peak_location_error,peak_height,interior,points_used\n";
    for (const auto &p : peaks) {
        out << p.num_qubits << ',' << subset_name(p.subset) << ',' << decoder_name(p.decoder) << ','
            << num(p.fit.location) << ',' << num(p.fit.location_error) << ',' << num(p.fit.height) << ','
            << (p.fit.interior ? 1 : 0) << ',' << p.fit.points_used << '\n';
    }
    return out.str();
}

std::string binder_curves_csv(const ExperimentConfig &config, std::span<const BinderCell> cells) {
    std::ostringstream out;
    out << "L,t,gamma,shots,mean_entropy,mean_entropy_error,entropy_variance,entropy_variance_error,mu2,mu4,binder,"
           "binder_error,binder_form\n";
    for (const auto &c : cells) {
        if (c.failed) {
            continue;
        }
        out << c.num_qubits << ',' << c.depth << ',' << num(c.parameter) << ',' << c.moments.count << ','
            << num(c.entropy.value) << ',' << num(c.entropy.error) << ',' << num(c.entropy_variance.value) << ','
            << num(c.entropy_variance.error) << ',' << num(c.moments.mu2) << ',' << num(c.moments.mu4) << ','
            << (c.moments.binder ? num(*c.moments.binder) : std::string()) << ','
            << (c.moments.binder ? num(c.binder_error) : std::string()) << ',' << binder_form_name(config.binder_form)
            << '\n';
    }
    return out.str();
}

std::string binder_crossings_csv(std::span<const BinderCrossing> crossings) {
    std::ostringstream out;
    out << "L_small,L_large,crossing\n";
    for (const auto &x : crossings) {
        if (x.locations.empty()) {
            out << x.smaller << ',' << x.larger << ",\n";
        }
        for (double g : x.locations) {
            out << x.smaller << ',' << x.larger << ',' << num(g) << '\n';
        }
    }
    return out.str();
}

std::string reference_samples_csv(const ReferenceCell &cell) {
    std::ostringstream out;
    out << "shot,seed,entropy\n";
    for (size_t k = 0; k < cell.entropies.size(); k++) {
        out << k << ',' << cell.seeds[k] << ',' << format_double(cell.entropies[k]) << '\n';
    }
    return out.str();
}

std::string cell_stem(uint32_t num_qubits, size_t grid_index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "L%02u_%02zu", num_qubits, grid_index);
    return buf;
}

void write_sweep_reports(const std::filesystem::path &dir, const ExperimentConfig &config,
                         std::span<const CellStatistics> statistics) {
    write_text_file(dir / "credence_curves.csv", credence_curves_csv(statistics));
    write_text_file(dir / "discard_table.csv", discard_table_csv(config, statistics));
    write_text_file(dir / "variance_peaks.csv", variance_peaks_csv(variance_peaks(statistics)));
    std::string notes;
    for (const auto &s : statistics) {
        for (const auto &n : s.notes) {
            notes += "L=" + std::to_string(s.num_qubits) + " parameter=" + num(s.parameter) + ": " + n + "\n";
        }
    }
    write_text_file(dir / "notes.txt", notes);
}

void write_sweep_outputs(const std::filesystem::path &dir, const SweepResult &sweep, bool save_trajectories) {
    write_text_file(dir / "run_config.json", experiment_config_to_json(sweep.config));
    for (const auto &cell : sweep.cells) {
        std::string stem = cell_stem(cell.num_qubits, grid_index(sweep.config, cell.parameter));
        for (size_t c = 0; c < cell.circuits.size(); c++) {
            save_circuit(cell.circuits[c], dir / "circuits" / (stem + "_c" + std::to_string(c) + ".json"));
        }
        if (!save_trajectories || cell.failed) {
            continue;
        }
        std::string text;
        for (size_t k = 0; k < cell.shots.size(); k++) {
            text += format_trajectory_line(cell.circuits[cell.shot_circuit[k]], cell.shots[k]);
            text += '\n';
        }
        write_text_file(dir / "trajectories" / (stem + ".jsonl"), text);
    }
    write_sweep_reports(dir, sweep.config, sweep.statistics);
}

void write_binder_outputs(const std::filesystem::path &dir, const BinderSweep &sweep) {
    write_text_file(dir / "run_config.json", experiment_config_to_json(sweep.config));
    for (const auto &cell : sweep.cells) {
        if (cell.failed) {
            continue;
        }
        std::string stem = cell_stem(cell.num_qubits, grid_index(sweep.config, cell.parameter));
        write_text_file(dir / "reference" / (stem + ".csv"), reference_samples_csv(cell));
    }
    write_text_file(dir / "binder_curves.csv", binder_curves_csv(sweep.config, sweep.statistics));
    write_text_file(dir / "binder_crossings.csv", binder_crossings_csv(binder_crossings(sweep.config, sweep.statistics)));
}

SweepResult load_sweep(const std::filesystem::path &dir) {
    SweepResult out;
    out.config = experiment_config_from_json(read_text_file(dir / "run_config.json"));
    for (uint32_t n : out.config.sizes) {
        for (size_t gi = 0; gi < out.config.grid.size(); gi++) {
            CellResult cell;
            cell.num_qubits = n;
            cell.depth = out.config.depth_for(n);
            cell.parameter = out.config.grid[gi];
            std::string stem = cell_stem(n, gi);
            std::map<uint64_t, uint32_t> index_of_seed;
            for (uint32_t c = 0; c < out.config.circuits; c++) {
                auto path = dir / "circuits" / (stem + "_c" + std::to_string(c) + ".json");
                if (!std::filesystem::exists(path)) {
                    break;
                }
                cell.circuits.push_back(load_circuit(path));
                index_of_seed[cell.circuits.back().seed] = c;
            }
            auto traj = dir / "trajectories" / (stem + ".jsonl");
            if (cell.circuits.empty() || !std::filesystem::exists(traj)) {
                cell.failed = true;
                cell.notes.push_back("no saved trajectories at " + traj.string());
            } else {
                for (auto &line : read_trajectory_file(traj)) {
                    auto it = index_of_seed.find(line.circuit_seed);
                    if (it == index_of_seed.end()) {
                        throw std::invalid_argument(traj.string() + ": shot refers to an unknown circuit");
                    }
                    check_compatible(cell.circuits[it->second], line);
                    cell.shot_circuit.push_back(it->second);
                    cell.shots.push_back(std::move(line.result));
                }
                if (out.config.runs(DecoderKind::PostBqp) && n > out.config.postbqp_max_qubits) {
                    cell.notes.push_back(
                        "postbqp skipped: L=" + std::to_string(n) + " exceeds postbqp_max_qubits=" +
                        std::to_string(out.config.postbqp_max_qubits));
                }
            }
            out.statistics.push_back(summarize_cell(out.config, cell));
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

BinderSweep load_binder_sweep(const std::filesystem::path &dir) {
    BinderSweep out;
    out.config = experiment_config_from_json(read_text_file(dir / "run_config.json"));
    for (uint32_t n : out.config.sizes) {
        for (size_t gi = 0; gi < out.config.grid.size(); gi++) {
            ReferenceCell cell;
            cell.num_qubits = n;
            cell.depth = out.config.depth_for(n);
            cell.parameter = out.config.grid[gi];
            auto path = dir / "reference" / (cell_stem(n, gi) + ".csv");
            std::ifstream in(path);
            if (!in) {
                cell.failed = true;
                cell.notes.push_back("no reference samples at " + path.string());
            } else {
                std::string line;
                std::getline(in, line);
                while (std::getline(in, line)) {
                    if (line.empty()) {
                        continue;
                    }
                    std::istringstream row(line);
                    std::string shot, seed, entropy;
                    std::getline(row, shot, ',');
                    std::getline(row, seed, ',');
                    std::getline(row, entropy, ',');
                    try {
                        cell.seeds.push_back(std::stoull(seed));
                        cell.entropies.push_back(std::stod(entropy));
                    } catch (const std::exception &) {
                        throw FormatError(path.string() + ": malformed row '" + line + "'", std::string::npos);
                    }
                }
            }
            out.statistics.push_back(summarize_reference_cell(out.config, cell));
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

}  // namespace chargelearn
