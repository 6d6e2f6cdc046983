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

#ifndef CHARGELEARN_MITIGATION_H
#define CHARGELEARN_MITIGATION_H

#include <cstddef>
#include <span>
#include <vector>

#include "chargelearn/record.h"

namespace chargelearn {

struct MitigationFilters {
    /// Reject shots whose terminal readout does not show the prepared charge.
    bool charge_check = true;
    /// Reject shots where the SEP decoder gives the true charge zero credence.
    bool zero_credence = true;
};

enum class DiscardReason { Retained, ChargeMismatch, ZeroCredence };

/// The charge check is applied first; a shot failing both is counted under ChargeMismatch.
DiscardReason discard_reason(const TrajectoryResult &shot, const MitigationFilters &filters = {});

struct DiscardStatistics {
    size_t total = 0;
    size_t charge_mismatch = 0;
    size_t zero_credence = 0;
    /// Shots with every SEP likelihood at zero; a subset of those rejected for zero credence
    /// or charge mismatch.
    size_t heralded = 0;

    size_t discarded() const {
        return charge_mismatch + zero_credence;
    }
    size_t retained() const {
        return total - discarded();
    }
    double discard_fraction() const;
    double retained_fraction() const;
    /// Binomial standard error of the discard fraction.
    double discard_error() const;
};

struct MitigationResult {
    std::vector<TrajectoryResult> retained;
    DiscardStatistics stats;
};

/// Throws std::invalid_argument if the zero-credence filter is on and a shot lacks SEP output.
MitigationResult mitigate(std::span<const TrajectoryResult> shots, const MitigationFilters &filters = {});

}  // namespace chargelearn

#endif
