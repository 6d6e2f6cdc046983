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

#ifndef CHARGELEARN_DATASET_H
#define CHARGELEARN_DATASET_H

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chargelearn/circuit.h"
#include "chargelearn/trajectory_io.h"

namespace chargelearn {

inline constexpr std::string_view kDatasetFormatName = "chargelearn.dataset";
inline constexpr int kDatasetFormatVersion = 1;

/// Step encodings: "bits" is one 0/1 entry per site (weak-all); "one-hot-trit" is three
/// entries per site, [not measured, outcome 0, outcome 1] (projective-fraction).
std::string_view step_encoding_name(MeasurementKind kind);

struct DatasetManifest {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    MeasurementKind kind = MeasurementKind::WeakAll;
    double parameter = 0;
    uint64_t circuit_seed = 0;
    std::vector<int> candidate_charges;
    /// Number of per-sweep vectors in every record (= t).
    uint32_t sequence_length = 0;
    /// Entries per vector: L for "bits", 3L for "one-hot-trit".
    uint32_t step_width = 0;
    std::string encoding;
    double train_fraction = 0.8;
    uint64_t split_seed = 0;
    size_t train_count = 0;
    size_t test_count = 0;

    bool operator==(const DatasetManifest &other) const = default;
};

struct DatasetRecord {
    uint64_t shot = 0;
    /// 0 for Q = L/2, 1 for Q = L/2 - 1.
    int label = 0;
    std::vector<std::vector<uint8_t>> steps;

    bool operator==(const DatasetRecord &other) const = default;
};

struct Dataset {
    DatasetManifest manifest;
    std::vector<DatasetRecord> train;
    std::vector<DatasetRecord> test;

    bool operator==(const Dataset &other) const = default;
};

int charge_label(uint32_t num_qubits, int charge);

/// Per-sweep vectors for one record; throws if the record does not fit the shape.
std::vector<std::vector<uint8_t>> encode_record(
    uint32_t num_qubits, uint32_t depth, MeasurementKind kind, const MeasurementRecord &record);

/// Stratified split: each label is shuffled with the split seed and the train share is
/// allotted by largest remainder, so the train set has round(fraction * n) records.
/// Throws std::invalid_argument when shots disagree on L, t, plan, or circuit seed.
Dataset build_dataset(std::span<const TrajectoryLine> lines, double train_fraction, uint64_t split_seed);

/// Writes manifest.json, train.jsonl and test.jsonl into `dir`.
void write_dataset(const std::filesystem::path &dir, const Dataset &dataset);
Dataset read_dataset(const std::filesystem::path &dir);

}  // namespace chargelearn

#endif
