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

#ifndef CHARGELEARN_REPORT_H
#define CHARGELEARN_REPORT_H

#include <filesystem>
#include <span>
#include <string>

#include "chargelearn/experiment.h"

namespace chargelearn {

/// One row per (cell, subset, decoder): mean credence, credence variance and accuracy with
/// standard errors, plus the cell's discard counts.
std::string credence_curves_csv(std::span<const CellStatistics> statistics);

/// Discarded percentage per size (rows) and grid point (columns); empty for failed cells.
std::string discard_table_csv(const ExperimentConfig &config, std::span<const CellStatistics> statistics);

std::string variance_peaks_csv(std::span<const PeakSummary> peaks);

std::string binder_curves_csv(const ExperimentConfig &config, std::span<const BinderCell> cells);
std::string binder_crossings_csv(std::span<const BinderCrossing> crossings);
std::string reference_samples_csv(const ReferenceCell &cell);

/// "L06_03" for size 6 and grid index 3.
std::string cell_stem(uint32_t num_qubits, size_t grid_index);

/// Layout under `dir`: run_config.json, circuits/, trajectories/ (when requested), and the
/// CSV files written by write_sweep_reports.
void write_sweep_outputs(const std::filesystem::path &dir, const SweepResult &sweep, bool save_trajectories);

/// credence_curves.csv, discard_table.csv, variance_peaks.csv and notes.txt.
void write_sweep_reports(const std::filesystem::path &dir, const ExperimentConfig &config,
                         std::span<const CellStatistics> statistics);

/// run_config.json, reference/ samples, binder_curves.csv and binder_crossings.csv.
void write_binder_outputs(const std::filesystem::path &dir, const BinderSweep &sweep);

/// Rebuilds a sweep from a directory written by write_sweep_outputs with trajectories saved.
SweepResult load_sweep(const std::filesystem::path &dir);

/// Rebuilds reference cells from a directory written by write_binder_outputs.
BinderSweep load_binder_sweep(const std::filesystem::path &dir);

}  // namespace chargelearn

#endif
