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

#include "chargelearn/experiment.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "chargelearn/parallel.h"
#include "chargelearn/sep_decoder.h"
#include "json.hpp"

namespace chargelearn {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

uint64_t parameter_key(double x) {
    return std::bit_cast<uint64_t>(x);
}

const char *timing_name(EntropyTiming t) {
    return t == EntropyTiming::BeforeTerminalSweep ? "before-terminal-sweep" : "after-terminal-sweep";
}

EntropyTiming parse_timing(const std::string &s) {
    if (s == "before-terminal-sweep") {
        return EntropyTiming::BeforeTerminalSweep;
    }
    if (s == "after-terminal-sweep") {
        return EntropyTiming::AfterTerminalSweep;
    }
    throw std::invalid_argument("entropy_timing: unknown value '" + s + "'");
}

/// Shots given to circuit realization c when n shots are spread over `circuits` realizations.
uint64_t shots_for_circuit(uint64_t n, uint32_t circuits, uint32_t c) {
    return n / circuits + (c < n % circuits ? 1 : 0);
}

}  // namespace

bool ExperimentConfig::runs(DecoderKind kind) const {
    return std::find(decoders.begin(), decoders.end(), kind) != decoders.end();
}

MeasurementPlan ExperimentConfig::plan_at(double parameter) const {
    return kind == MeasurementKind::WeakAll ? MeasurementPlan::weak_all(parameter)
                                            : MeasurementPlan::projective_fraction(parameter);
}

void ExperimentConfig::validate() const {
    if (sizes.empty()) {
        throw std::invalid_argument("sizes: must not be empty");
    }
    for (uint32_t n : sizes) {
        if (n < 2 || n % 2 != 0 || n > 24) {
            throw std::invalid_argument("sizes: L=" + std::to_string(n) + " must be even and in [2, 24]");
        }
    }
    if (grid.empty()) {
        throw std::invalid_argument("grid: must not be empty");
    }
    for (double g : grid) {
        if (!(g >= 0 && g <= 1)) {
            throw std::invalid_argument("grid: values must lie in [0, 1]");
        }
    }
    if (shots < 1) {
        throw std::invalid_argument("shots: must be at least 1");
    }
    if (circuits < 1) {
        throw std::invalid_argument("circuits: must be at least 1");
    }
    if (decoders.empty()) {
        throw std::invalid_argument("decoders: must name at least one decoder");
    }
    noise.validate();
}

std::string experiment_config_to_json(const ExperimentConfig &c) {
    ojson j;
    j["sizes"] = c.sizes;
    j["depth"] = c.depth;
    j["plan"] = std::string(measurement_kind_name(c.kind));
    j["grid"] = c.grid;
    j["shots"] = c.shots;
    j["circuit_seed"] = c.circuit_seed;
    j["circuits"] = c.circuits;
    j["trajectory_seed"] = c.trajectory_seed;
    j["scramble_layers"] = c.scramble_layers;
    j["noise"] = {{"p2q", c.noise.p2q}};
    ojson decoders = ojson::array();
    for (DecoderKind k : c.decoders) {
        decoders.push_back(decoder_name(k));
    }
    j["decoders"] = decoders;
    j["postbqp_max_qubits"] = c.postbqp_max_qubits;
    j["mitigation"] = {{"charge_check", c.filters.charge_check}, {"zero_credence", c.filters.zero_credence}};
    j["bootstrap_resamples"] = c.bootstrap_resamples;
    j["binder_form"] = binder_form_name(c.binder_form);
    j["entropy_timing"] = timing_name(c.entropy_timing);
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("experiment config: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("experiment config: top level must be an object");
    }
    static const std::set<std::string> known = {
        "sizes", "depth", "plan", "grid", "shots", "circuit_seed", "circuits", "trajectory_seed",
        "scramble_layers", "noise", "decoders", "postbqp_max_qubits", "mitigation", "bootstrap_resamples",
        "binder_form", "entropy_timing", "threads"};
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("experiment config: unknown field '" + key + "'");
        }
    }
    ExperimentConfig c;
    auto read = [&](const char *key, auto &dst) {
        if (j.contains(key)) {
            try {
                j.at(key).get_to(dst);
            } catch (const json::exception &) {
                throw std::invalid_argument(std::string("experiment config: field '") + key + "' has the wrong type");
            }
        }
    };
    read("sizes", c.sizes);
    read("depth", c.depth);
    read("grid", c.grid);
    read("shots", c.shots);
    read("circuit_seed", c.circuit_seed);
    read("circuits", c.circuits);
    read("trajectory_seed", c.trajectory_seed);
    read("scramble_layers", c.scramble_layers);
    read("postbqp_max_qubits", c.postbqp_max_qubits);
    read("bootstrap_resamples", c.bootstrap_resamples);
    read("threads", c.threads);
    std::string s;
    if (j.contains("plan")) {
        read("plan", s);
        c.kind = parse_measurement_kind(s);
    }
    if (j.contains("noise")) {
        const json &n = j.at("noise");
        if (!n.is_object() || !n.contains("p2q") || !n.at("p2q").is_number()) {
            throw std::invalid_argument("experiment config: noise must be {\"p2q\": number}");
        }
        c.noise.p2q = n.at("p2q").get<double>();
    }
    if (j.contains("decoders")) {
        std::vector<std::string> names;
        read("decoders", names);
        c.decoders.clear();
        for (const auto &name : names) {
            c.decoders.push_back(parse_decoder(name));
        }
    }
    if (j.contains("mitigation")) {
        const json &m = j.at("mitigation");
        if (!m.is_object()) {
            throw std::invalid_argument("experiment config: mitigation must be an object");
        }
        c.filters.charge_check = m.value("charge_check", true);
        c.filters.zero_credence = m.value("zero_credence", true);
    }
    if (j.contains("binder_form")) {
        read("binder_form", s);
        c.binder_form = parse_binder_form(s);
    }
    if (j.contains("entropy_timing")) {
        read("entropy_timing", s);
        c.entropy_timing = parse_timing(s);
    }
    c.validate();
    return c;
}

uint64_t circuit_seed_for(const ExperimentConfig &config, uint32_t index) {
    return index == 0 ? config.circuit_seed : derive_seed(config.circuit_seed, SeedDomain::Circuit, {index});
}

CircuitSpec circuit_for(const ExperimentConfig &config, uint32_t num_qubits, double parameter, uint32_t index) {
    return build_circuit(
        num_qubits, config.depth_for(num_qubits), config.plan_at(parameter), circuit_seed_for(config, index),
        config.scramble_layers);
}

std::vector<int> balanced_charges(size_t n, std::span<const int> candidates, Rng &rng) {
    if (candidates.empty()) {
        throw std::invalid_argument("balanced_charges: no candidates");
    }
    std::vector<int> out;
    out.reserve(n);
    for (size_t k = 0; k < n; k++) {
        out.push_back(candidates[k % candidates.size()]);
    }
    shuffle_range(out.begin(), out.end(), rng);
    return out;
}

void decode_shot(const CircuitSpec &spec, TrajectoryResult &shot, std::span<const DecoderKind> decoders) {
    for (DecoderKind k : decoders) {
        if (k == DecoderKind::PostBqp) {
            shot.postbqp = decode_postbqp(spec, shot.record, shot.true_charge);
        } else {
            shot.sep = decode_sep(spec, shot.record, shot.true_charge);
        }
    }
}

std::vector<TrajectoryResult> run_shots(
    const ExperimentConfig &config, const CircuitSpec &spec, uint32_t circuit_index, std::span<const int> charges) {
    std::vector<DecoderKind> decoders;
    for (DecoderKind k : config.decoders) {
        if (k == DecoderKind::PostBqp && spec.num_qubits > config.postbqp_max_qubits) {
            continue;
        }
        decoders.push_back(k);
    }
    const uint64_t key = parameter_key(spec.plan.parameter());
    std::vector<TrajectoryResult> out(charges.size());
    parallel_for(charges.size(), config.threads, [&](size_t k) {
        uint64_t seed = derive_seed(config.trajectory_seed, SeedDomain::Trajectory, {spec.num_qubits, key, circuit_index, k});
        Rng rng = rng_from_seed(seed);
        TrajectoryResult r = run_trajectory(spec, charges[k], rng, config.noise);
        r.shot = k;
        r.seed = seed;
        decode_shot(spec, r, decoders);
        out[k] = std::move(r);
    });
    return out;
}

CellResult run_cell(const ExperimentConfig &config, uint32_t num_qubits, double parameter) {
    CellResult cell;
    cell.num_qubits = num_qubits;
    cell.depth = config.depth_for(num_qubits);
    cell.parameter = parameter;
    if (config.runs(DecoderKind::PostBqp) && num_qubits > config.postbqp_max_qubits) {
        cell.notes.push_back(
            "postbqp skipped: L=" + std::to_string(num_qubits) + " exceeds postbqp_max_qubits=" +
            std::to_string(config.postbqp_max_qubits));
    }
    try {
        const uint64_t key = parameter_key(parameter);
        for (uint32_t c = 0; c < config.circuits; c++) {
            CircuitSpec spec = circuit_for(config, num_qubits, parameter, c);
            Rng label_rng = make_rng(config.trajectory_seed, SeedDomain::Labels, {num_qubits, key, c});
            auto charges = balanced_charges(shots_for_circuit(config.shots, config.circuits, c), spec.candidate_charges, label_rng);
            auto shots = run_shots(config, spec, c, charges);
            for (auto &s : shots) {
                cell.shots.push_back(std::move(s));
                cell.shot_circuit.push_back(c);
            }
            cell.circuits.push_back(std::move(spec));
        }
    } catch (const std::exception &e) {
        cell.failed = true;
        cell.notes.push_back(std::string("cell failed: ") + e.what());
    }
    return cell;
}

DecoderStatistics decoder_statistics(
    std::span<const TrajectoryResult> shots, DecoderKind kind, size_t resamples, Rng &rng) {
    std::vector<double> credence, accuracy;
    DecoderStatistics out;
    for (const auto &s : shots) {
        const auto &d = s.decoded(kind);
        if (!d) {
            continue;
        }
        credence.push_back(d->credence);
        accuracy.push_back(d->accurate ? 1.0 : 0.0);
        out.heralded += d->heralded;
    }
    const size_t n = credence.size();
    out.shots = n;
    out.credence.value = mean(credence);
    out.credence_variance.value = sample_variance(credence);
    out.accuracy.value = mean(accuracy);
    if (n < 2 || resamples < 2) {
        return out;
    }
    // One set of resampled indices serves all three statistics.
    std::vector<double> rc(resamples), rv(resamples), ra(resamples);
    std::vector<double> sample(n);
    for (size_t r = 0; r < resamples; r++) {
        double acc = 0;
        for (size_t k = 0; k < n; k++) {
            size_t idx = uniform_index(rng, n);
            sample[k] = credence[idx];
            acc += accuracy[idx];
        }
        rc[r] = mean(sample);
        rv[r] = sample_variance(sample);
        ra[r] = acc / static_cast<double>(n);
    }
    out.credence.error = std::sqrt(sample_variance(rc));
    out.credence_variance.error = std::sqrt(sample_variance(rv));
    out.accuracy.error = std::sqrt(sample_variance(ra));
    return out;
}

const char *subset_name(ShotSubset subset) {
    return subset == ShotSubset::Raw ? "raw" : "mitigated";
}

CellStatistics summarize_cell(const ExperimentConfig &config, const CellResult &cell) {
    CellStatistics st;
    st.num_qubits = cell.num_qubits;
    st.depth = cell.depth;
    st.parameter = cell.parameter;
    st.shots = cell.shots.size();
    st.notes = cell.notes;
    st.failed = cell.failed;
    if (cell.failed) {
        return st;
    }
    MitigationFilters filters = config.filters;
    if (!config.runs(DecoderKind::Sep)) {
        filters.zero_credence = false;
    }
    MitigationResult mitigated = mitigate(cell.shots, filters);
    st.discard = mitigated.stats;
    const uint64_t key = parameter_key(cell.parameter);
    for (ShotSubset subset : {ShotSubset::Raw, ShotSubset::Mitigated}) {
        std::span<const TrajectoryResult> shots = subset == ShotSubset::Raw
                                                      ? std::span<const TrajectoryResult>(cell.shots)
                                                      : std::span<const TrajectoryResult>(mitigated.retained);
        for (DecoderKind kind : {DecoderKind::PostBqp, DecoderKind::Sep}) {
            bool any = std::any_of(shots.begin(), shots.end(), [&](const auto &s) { return s.decoded(kind).has_value(); });
            if (!any) {
                continue;
            }
            Rng rng = make_rng(
                config.trajectory_seed, SeedDomain::Bootstrap,
                {cell.num_qubits, key, static_cast<uint64_t>(subset), static_cast<uint64_t>(kind)});
            st.decoders[static_cast<size_t>(subset)][static_cast<size_t>(kind)] =
                decoder_statistics(shots, kind, config.bootstrap_resamples, rng);
        }
    }
    return st;
}

SweepResult run_sweep(const ExperimentConfig &config) {
    config.validate();
    SweepResult out;
    out.config = config;
    for (uint32_t n : config.sizes) {
        for (double g : config.grid) {
            CellResult cell = run_cell(config, n, g);
            out.statistics.push_back(summarize_cell(config, cell));
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<PeakSummary> variance_peaks(std::span<const CellStatistics> statistics) {
    std::map<uint32_t, std::vector<const CellStatistics *>> by_size;
    for (const auto &s : statistics) {
        if (!s.failed) {
            by_size[s.num_qubits].push_back(&s);
        }
    }
    std::vector<PeakSummary> out;
    for (auto &[n, cells] : by_size) {
        std::sort(cells.begin(), cells.end(), [](auto *a, auto *b) { return a->parameter < b->parameter; });
        for (ShotSubset subset : {ShotSubset::Raw, ShotSubset::Mitigated}) {
            for (DecoderKind kind : {DecoderKind::PostBqp, DecoderKind::Sep}) {
                std::vector<double> xs, ys, es;
                for (const auto *c : cells) {
                    const auto &d = c->get(subset, kind);
                    if (d && d->shots > 1) {
                        xs.push_back(c->parameter);
                        ys.push_back(d->credence_variance.value);
                        es.push_back(d->credence_variance.error);
                    }
                }
                if (xs.size() < 4) {
                    continue;
                }
                PeakSummary p;
                p.num_qubits = n;
                p.decoder = kind;
                p.subset = subset;
                p.fit = variance_peak(xs, ys, es);
                out.push_back(p);
            }
        }
    }
    return out;
}

ReferenceCell run_reference_cell(const ExperimentConfig &config, uint32_t num_qubits, double parameter) {
    ReferenceCell cell;
    cell.num_qubits = num_qubits;
    cell.depth = config.depth_for(num_qubits);
    cell.parameter = parameter;
    try {
        const uint64_t key = parameter_key(parameter);
        for (uint32_t c = 0; c < config.circuits; c++) {
            CircuitSpec spec = circuit_for(config, num_qubits, parameter, c);
            if (spec.candidate_charges.size() != 2) {
                throw std::invalid_argument("reference trajectories need exactly two candidate charges");
            }
            std::pair<int, int> pair{spec.candidate_charges[0], spec.candidate_charges[1]};
            uint64_t n = shots_for_circuit(config.shots, config.circuits, c);
            std::vector<double> entropy(n), variance(n);
            std::vector<uint64_t> seeds(n);
            parallel_for(n, config.threads, [&](size_t k) {
                uint64_t seed = derive_seed(config.trajectory_seed, SeedDomain::Reference, {num_qubits, key, c, k});
                Rng rng = rng_from_seed(seed);
                auto r = run_reference_trajectory(spec, pair, rng, config.entropy_timing);
                entropy[k] = r.reference_entropy;
                variance[k] = r.sweep_charge_variance.empty() ? 0.0 : r.sweep_charge_variance.front();
                seeds[k] = seed;
            });
            cell.entropies.insert(cell.entropies.end(), entropy.begin(), entropy.end());
            cell.seeds.insert(cell.seeds.end(), seeds.begin(), seeds.end());
            for (double v : variance) {
                cell.first_sweep_charge_variance += v;
            }
        }
        if (!cell.entropies.empty()) {
            cell.first_sweep_charge_variance /= static_cast<double>(cell.entropies.size());
        }
    } catch (const std::exception &e) {
        cell.failed = true;
        cell.notes.push_back(std::string("cell failed: ") + e.what());
    }
    return cell;
}

BinderCell summarize_reference_cell(const ExperimentConfig &config, const ReferenceCell &cell) {
    BinderCell out;
    out.num_qubits = cell.num_qubits;
    out.depth = cell.depth;
    out.parameter = cell.parameter;
    out.failed = cell.failed || cell.entropies.size() < 2;
    if (out.failed) {
        return out;
    }
    const auto &xs = cell.entropies;
    out.moments = binder_moments(xs, config.binder_form);
    out.entropy = mean_estimate(xs);
    out.entropy_variance.value = sample_variance(xs);
    Rng rng = make_rng(config.trajectory_seed, SeedDomain::Bootstrap, {cell.num_qubits, parameter_key(cell.parameter), 99});
    const size_t n = xs.size();
    std::vector<double> sample(n), reps_b, reps_v;
    for (size_t r = 0; r < config.bootstrap_resamples; r++) {
        for (auto &s : sample) {
            s = xs[uniform_index(rng, n)];
        }
        reps_v.push_back(sample_variance(sample));
        auto m = binder_moments(sample, config.binder_form);
        if (m.binder) {
            reps_b.push_back(*m.binder);
        }
    }
    out.entropy_variance.error = std::sqrt(sample_variance(reps_v));
    out.binder_error = out.moments.binder ? std::sqrt(sample_variance(reps_b)) : 0.0;
    return out;
}

BinderSweep run_binder_sweep(const ExperimentConfig &config) {
    config.validate();
    BinderSweep out;
    out.config = config;
    for (uint32_t n : config.sizes) {
        for (double g : config.grid) {
            ReferenceCell cell = run_reference_cell(config, n, g);
            out.statistics.push_back(summarize_reference_cell(config, cell));
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<BinderCrossing> binder_crossings(const ExperimentConfig &config, std::span<const BinderCell> cells) {
    std::vector<uint32_t> sizes = config.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    std::vector<double> grid = config.grid;
    std::sort(grid.begin(), grid.end());
    auto curve = [&](uint32_t n) {
        std::vector<double> ys(grid.size(), std::numeric_limits<double>::quiet_NaN());
        for (const auto &c : cells) {
            if (c.num_qubits != n || c.failed || !c.moments.binder) {
                continue;
            }
            auto it = std::find(grid.begin(), grid.end(), c.parameter);
            if (it != grid.end()) {
                ys[static_cast<size_t>(it - grid.begin())] = *c.moments.binder;
            }
        }
        return ys;
    };
    std::vector<BinderCrossing> out;
    for (size_t k = 0; k + 1 < sizes.size(); k++) {
        BinderCrossing x;
        x.smaller = sizes[k];
        x.larger = sizes[k + 1];
        auto a = curve(x.smaller);
        auto b = curve(x.larger);
        x.locations = curve_crossings(grid, a, b);
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace chargelearn
