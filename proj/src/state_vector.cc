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

#include "chargelearn/state_vector.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chargelearn {

StateVector::StateVector(std::shared_ptr<const BasisTable> basis, std::span<const std::pair<Config, Amplitude>> terms)
    : basis_(std::move(basis)), blocks_(basis_->num_qubits() + 1) {
    Config limit = Config{1} << basis_->num_qubits();
    for (const auto &[c, amp] : terms) {
        if (c >= limit) {
            throw std::out_of_range("configuration outside the register");
        }
        auto &block = blocks_[std::popcount(c)];
        if (block.empty()) {
            block.assign(basis_->sector_size(std::popcount(c)), Amplitude{});
        }
        block[basis_->index_of(c)] += amp;
    }
}

StateVector StateVector::basis_state(uint32_t num_qubits, Config c) {
    std::pair<Config, Amplitude> term{c, Amplitude{1}};
    return StateVector(BasisTable::for_size(num_qubits), std::span(&term, 1));
}

bool StateVector::has_sector(int q) const {
    return q >= 0 && q < static_cast<int>(blocks_.size()) && !blocks_[q].empty();
}

std::vector<int> StateVector::sectors() const {
    std::vector<int> out;
    for (size_t q = 0; q < blocks_.size(); q++) {
        if (!blocks_[q].empty()) {
            out.push_back(static_cast<int>(q));
        }
    }
    return out;
}

std::span<const Amplitude> StateVector::block(int q) const {
    if (!has_sector(q)) {
        return {};
    }
    return blocks_[q];
}

Amplitude StateVector::amplitude(Config c) const {
    int q = std::popcount(c);
    if (!has_sector(q)) {
        return {};
    }
    return blocks_[q][basis_->index_of(c)];
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &block : blocks_) {
        for (const auto &a : block) {
            total += std::norm(a);
        }
    }
    return total;
}

void StateVector::normalize() {
    double n2 = norm_squared();
    if (!(n2 > 0)) {
        throw std::domain_error("cannot normalize a zero-norm state");
    }
    double scale = 1 / std::sqrt(n2);
    for (auto &block : blocks_) {
        for (auto &a : block) {
            a *= scale;
        }
    }
}

double StateVector::sector_weight(int q) const {
    double total = 0;
    for (const auto &a : block(q)) {
        total += std::norm(a);
    }
    return total;
}

double StateVector::charge_variance() const {
    std::vector<double> w(blocks_.size());
    double total = 0;
    double mean = 0;
    for (size_t q = 0; q < blocks_.size(); q++) {
        w[q] = sector_weight(static_cast<int>(q));
        total += w[q];
        mean += w[q] * static_cast<double>(q);
    }
    if (!(total > 0)) {
        return 0;
    }
    mean /= total;
    double v = 0;
    for (size_t q = 0; q < blocks_.size(); q++) {
        double d = static_cast<double>(q) - mean;
        v += w[q] * d * d;
    }
    return v / total;
}

void StateVector::check_site(uint32_t site) const {
    if (site >= num_qubits()) {
        throw std::out_of_range("site " + std::to_string(site) + " out of range for L=" + std::to_string(num_qubits()));
    }
}

double StateVector::occupied_weight(uint32_t site) const {
    check_site(site);
    double total = 0;
    for (size_t q = 0; q < blocks_.size(); q++) {
        const auto &block = blocks_[q];
        if (block.empty()) {
            continue;
        }
        auto configs = basis_->sector(static_cast<int>(q));
        for (size_t k = 0; k < block.size(); k++) {
            if (occupied(configs[k], site)) {
                total += std::norm(block[k]);
            }
        }
    }
    return total;
}

void StateVector::apply_gate(const GateParams &g, SitePair sites) {
    const uint32_t i = sites.first;
    const uint32_t j = sites.second;
    check_site(i);
    check_site(j);
    if (i == j) {
        throw std::invalid_argument("apply_gate: sites must differ");
    }
    const GateMatrix u = gate_matrix(g);
    const Amplitude e00 = u[0][0];
    const Amplitude e11 = u[3][3];
    const Amplitude a = u[1][1], b = u[1][2], c = u[2][1], d = u[2][2];
    const Config flip = (Config{1} << i) | (Config{1} << j);

    for (size_t q = 0; q < blocks_.size(); q++) {
        auto &block = blocks_[q];
        if (block.empty()) {
            continue;
        }
        auto configs = basis_->sector(static_cast<int>(q));
        for (size_t k = 0; k < block.size(); k++) {
            Config cfg = configs[k];
            bool bi = occupied(cfg, i);
            bool bj = occupied(cfg, j);
            if (bi == bj) {
                block[k] *= bi ? e11 : e00;
            } else if (bj) {
                // cfg is |0_i 1_j>; its partner |1_i 0_j> is updated together with it.
                size_t k2 = basis_->index_of(cfg ^ flip);
                Amplitude x01 = block[k];
                Amplitude x10 = block[k2];
                block[k] = a * x01 + b * x10;
                block[k2] = c * x01 + d * x10;
            }
        }
    }
}

void StateVector::apply_x(uint32_t site) {
    check_site(site);
    std::vector<std::vector<Amplitude>> out(blocks_.size());
    const Config bit = Config{1} << site;
    for (size_t q = 0; q < blocks_.size(); q++) {
        const auto &block = blocks_[q];
        if (block.empty()) {
            continue;
        }
        auto configs = basis_->sector(static_cast<int>(q));
        for (size_t k = 0; k < block.size(); k++) {
            if (block[k] == Amplitude{}) {
                continue;
            }
            Config target = configs[k] ^ bit;
            auto &dst = out[std::popcount(target)];
            if (dst.empty()) {
                dst.assign(basis_->sector_size(std::popcount(target)), Amplitude{});
            }
            dst[basis_->index_of(target)] = block[k];
        }
    }
    blocks_ = std::move(out);
}

void StateVector::apply_diagonal(uint32_t site, Amplitude on_empty, Amplitude on_occupied) {
    check_site(site);
    for (size_t q = 0; q < blocks_.size(); q++) {
        auto &block = blocks_[q];
        if (block.empty()) {
            continue;
        }
        auto configs = basis_->sector(static_cast<int>(q));
        for (size_t k = 0; k < block.size(); k++) {
            block[k] *= occupied(configs[k], site) ? on_occupied : on_empty;
        }
    }
}

Config StateVector::sample_configuration(Rng &rng) const {
    double u = uniform01(rng) * norm_squared();
    double acc = 0;
    Config last = 0;
    bool found_any = false;
    for (size_t q = 0; q < blocks_.size(); q++) {
        const auto &block = blocks_[q];
        if (block.empty()) {
            continue;
        }
        auto configs = basis_->sector(static_cast<int>(q));
        for (size_t k = 0; k < block.size(); k++) {
            double w = std::norm(block[k]);
            if (w <= 0) {
                continue;
            }
            acc += w;
            last = configs[k];
            found_any = true;
            if (u < acc) {
                return configs[k];
            }
        }
    }
    if (!found_any) {
        throw std::domain_error("cannot sample from a zero-norm state");
    }
    // Rounding left u just above the accumulated total.
    return last;
}

void StateVector::collapse_to(Config c) {
    Amplitude amp = amplitude(c);
    double mag = std::abs(amp);
    Amplitude unit = mag > 0 ? amp / mag : Amplitude{1};
    for (auto &block : blocks_) {
        block.clear();
    }
    auto &block = blocks_[std::popcount(c)];
    block.assign(basis_->sector_size(std::popcount(c)), Amplitude{});
    block[basis_->index_of(c)] = unit;
}

}  // namespace chargelearn
