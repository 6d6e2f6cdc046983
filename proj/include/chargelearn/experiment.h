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

#ifndef CHARGELEARN_EXPERIMENT_H
#define CHARGELEARN_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chargelearn/circuit.h"
#include "chargelearn/mitigation.h"
#include "chargelearn/record.h"
#include "chargelearn/simulator.h"
#include "chargelearn/statistics.h"

namespace chargelearn {

struct ExperimentConfig {
    std::vector<uint32_t> sizes = {6, 10, 14};
    /// 0 means t = L/2.
    uint32_t depth = 0;
    MeasurementKind kind = MeasurementKind::WeakAll;
    /// gamma values for weak-all plans, p values for projective-fraction plans.
    std::vector<double> grid;
    /// Shots per (L, grid point), split evenly between the two candidate charges.
    uint64_t shots = 2000;
    uint64_t circuit_seed = 1;
    /// Circuit realizations per size. Shots are divided among them and results pooled.
    uint32_t circuits = 1;
    uint64_t trajectory_seed = 2;
    uint32_t scramble_layers = 5;
    NoiseModel noise;
    std::vector<DecoderKind> decoders = {DecoderKind::PostBqp, DecoderKind::Sep};
    uint32_t postbqp_max_qubits = 16;
    MitigationFilters filters;
    size_t bootstrap_resamples = kDefaultResamples;
    BinderForm binder_form = BinderForm::Standard;
    EntropyTiming entropy_timing = EntropyTiming::BeforeTerminalSweep;
    /// 0 picks a thread count automatically. Results do not depend on it.
    unsigned threads = 0;

    uint32_t depth_for(uint32_t num_qubits) const {
        return depth ? depth : num_qubits / 2;
    }
    bool runs(DecoderKind kind) const;
    MeasurementPlan plan_at(double parameter) const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

std::string experiment_config_to_json(const ExperimentConfig &config);
ExperimentConfig experiment_config_from_json(std::string_view text);

/// Seed of circuit realization `index` for size L. Realization 0 of a single-circuit run
/// uses circuit_seed itself, so `gen-circuit --seed` reproduces sweep circuits.
uint64_t circuit_seed_for(const ExperimentConfig &config, uint32_t index);
CircuitSpec circuit_for(const ExperimentConfig &config, uint32_t num_qubits, double parameter, uint32_t index);

/// Exactly floor(n/2) or ceil(n/2) of each candidate, in shuffled order. With odd n the
/// first candidate gets the extra shot.
std::vector<int> balanced_charges(size_t n, std::span<const int> candidates, Rng &rng);

/// Samples `shots` trajectories of `spec` with the given true charges and decodes them.
/// Shot k uses the stream derived from (trajectory_seed, L, parameter, circuit index, k).
std::vector<TrajectoryResult> run_shots(
    const ExperimentConfig &config, const CircuitSpec &spec, uint32_t circuit_index, std::span<const int> charges);

/// Decodes a shot with every decoder listed in `decoders` that applies to `spec`.
void decode_shot(const CircuitSpec &spec, TrajectoryResult &shot, std::span<const DecoderKind> decoders);

struct CellResult {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    double parameter = 0;
    std::vector<CircuitSpec> circuits;
    /// Circuit-major: all shots of realization 0, then realization 1, ...
    std::vector<TrajectoryResult> shots;
    std::vector<uint32_t> shot_circuit;
    /// Notes about decoders skipped for resource caps, or an error that stopped the cell.
    std::vector<std::string> notes;
    bool failed = false;
};

CellResult run_cell(const ExperimentConfig &config, uint32_t num_qubits, double parameter);

struct DecoderStatistics {
    size_t shots = 0;
    Estimate credence;
    Estimate credence_variance;
    Estimate accuracy;
    size_t heralded = 0;
};

/// Statistics over shots carrying output from `kind`. Credence of a heralded shot is 0
/// and it counts as inaccurate. Errors are bootstrap standard errors.
DecoderStatistics decoder_statistics(
    std::span<const TrajectoryResult> shots, DecoderKind kind, size_t resamples, Rng &rng);

enum class ShotSubset { Raw, Mitigated };
const char *subset_name(ShotSubset subset);

struct CellStatistics {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    double parameter = 0;
    size_t shots = 0;
    DiscardStatistics discard;
    /// Indexed [subset][decoder].
    std::array<std::array<std::optional<DecoderStatistics>, 2>, 2> decoders;
    std::vector<std::string> notes;
    bool failed = false;

    const std::optional<DecoderStatistics> &get(ShotSubset subset, DecoderKind kind) const {
        return decoders[static_cast<size_t>(subset)][static_cast<size_t>(kind)];
    }
};

CellStatistics summarize_cell(const ExperimentConfig &config, const CellResult &cell);

struct SweepResult {
    ExperimentConfig config;
    std::vector<CellResult> cells;
    std::vector<CellStatistics> statistics;
};

/// Cells in (size, grid) order. A failing cell is recorded and the sweep continues.
SweepResult run_sweep(const ExperimentConfig &config);

struct PeakSummary {
    uint32_t num_qubits = 0;
    DecoderKind decoder = DecoderKind::Sep;
    ShotSubset subset = ShotSubset::Raw;
    PeakFit fit;
};

/// Variance-of-credence peak for every (size, decoder, subset) with at least four grid points.
std::vector<PeakSummary> variance_peaks(std::span<const CellStatistics> statistics);

struct ReferenceCell {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    double parameter = 0;
    std::vector<double> entropies;
    std::vector<uint64_t> seeds;
    /// Mean over shots of the system charge variance after the first sweep.
    double first_sweep_charge_variance = 0;
    bool failed = false;
    std::vector<std::string> notes;
};

/// Reference-qubit trajectories for one (L, gamma) cell; shots are split over circuits like run_cell.
ReferenceCell run_reference_cell(const ExperimentConfig &config, uint32_t num_qubits, double parameter);

struct BinderCell {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    double parameter = 0;
    Estimate entropy;
    Estimate entropy_variance;
    BinderMoments moments;
    /// Bootstrap standard error of the Binder ratio (0 if undefined).
    double binder_error = 0;
    bool failed = false;
};

BinderCell summarize_reference_cell(const ExperimentConfig &config, const ReferenceCell &cell);

struct BinderSweep {
    ExperimentConfig config;
    std::vector<ReferenceCell> cells;
    std::vector<BinderCell> statistics;
};

BinderSweep run_binder_sweep(const ExperimentConfig &config);

struct BinderCrossing {
    uint32_t smaller = 0;
    uint32_t larger = 0;
    std::vector<double> locations;
};

/// Crossings of Binder curves for each pair of adjacent sizes.
std::vector<BinderCrossing> binder_crossings(const ExperimentConfig &config, std::span<const BinderCell> cells);

}  // namespace chargelearn

#endif
