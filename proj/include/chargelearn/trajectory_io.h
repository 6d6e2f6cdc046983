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

#ifndef CHARGELEARN_TRAJECTORY_IO_H
#define CHARGELEARN_TRAJECTORY_IO_H

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chargelearn/circuit.h"
#include "chargelearn/record.h"

namespace chargelearn {

/// One shot as read back from a trajectory file, with the schedule shape it was written under.
struct TrajectoryLine {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    MeasurementKind kind = MeasurementKind::WeakAll;
    double plan_parameter = 0;
    uint64_t circuit_seed = 0;
    std::vector<int> candidate_charges;
    TrajectoryResult result;
};

/// Single-line JSON for one shot. Mid-circuit bits are a flat array in schedule order;
/// projective-fraction plans also carry a 0/1 mask of length t*L marking measured slots.
/// Log-likelihoods of -infinity are written as null.
std::string format_trajectory_line(const CircuitSpec &spec, const TrajectoryResult &result);

TrajectoryLine parse_trajectory_line(std::string_view line);

/// Throws std::invalid_argument when a line was not produced under `spec`'s shape.
void check_compatible(const CircuitSpec &spec, const TrajectoryLine &line);

void write_trajectory_file(
    const std::filesystem::path &path, const CircuitSpec &spec, std::span<const TrajectoryResult> results);

/// Blank lines are skipped; parse errors carry the path and 1-based line number.
std::vector<TrajectoryLine> read_trajectory_file(const std::filesystem::path &path);

std::vector<TrajectoryResult> results_of(std::vector<TrajectoryLine> lines);

}  // namespace chargelearn

#endif
