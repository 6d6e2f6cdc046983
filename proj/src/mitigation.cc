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

#include "chargelearn/mitigation.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chargelearn {

DiscardReason discard_reason(const TrajectoryResult &shot, const MitigationFilters &filters) {
    if (filters.charge_check && shot.final_measured_charge != shot.true_charge) {
        return DiscardReason::ChargeMismatch;
    }
    if (filters.zero_credence) {
        if (!shot.sep) {
            throw std::invalid_argument(
                "shot " + std::to_string(shot.shot) + " has no SEP decoding; the zero-credence filter needs it");
        }
        if (shot.sep->credence == 0) {
            return DiscardReason::ZeroCredence;
        }
    }
    return DiscardReason::Retained;
}

double DiscardStatistics::discard_fraction() const {
    return total ? static_cast<double>(discarded()) / static_cast<double>(total) : 0.0;
}

double DiscardStatistics::retained_fraction() const {
    return total ? 1 - discard_fraction() : 1.0;
}

double DiscardStatistics::discard_error() const {
    if (total == 0) {
        return 0;
    }
    double f = discard_fraction();
    return std::sqrt(f * (1 - f) / static_cast<double>(total));
}

MitigationResult mitigate(std::span<const TrajectoryResult> shots, const MitigationFilters &filters) {
    MitigationResult out;
    out.stats.total = shots.size();
    for (const auto &shot : shots) {
        if (shot.heralded_error()) {
            out.stats.heralded++;
        }
        switch (discard_reason(shot, filters)) {
            case DiscardReason::ChargeMismatch:
                out.stats.charge_mismatch++;
                break;
            case DiscardReason::ZeroCredence:
                out.stats.zero_credence++;
                break;
            case DiscardReason::Retained:
                out.retained.push_back(shot);
                break;
        }
    }
    return out;
}

}  // namespace chargelearn
