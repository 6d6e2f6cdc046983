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

#include "chargelearn/trajectory_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chargelearn/circuit_io.h"
#include "json.hpp"

namespace chargelearn {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ojson number_or_null(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return nullptr;
}

ojson decoded_to_json(const DecodedCharge &d) {
    ojson lls = ojson::array();
    for (double ll : d.log_likelihoods) {
        lls.push_back(number_or_null(ll));
    }
    return ojson{
        {"log_likelihoods", lls},
        {"posterior", d.posterior.probabilities},
        {"credence", d.credence},
        {"accurate", d.accurate},
        {"heralded", d.heralded},
    };
}

const json &need(const json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(std::string("missing field '") + key + "'", std::string::npos);
    }
    return *it;
}

template <typename T>
T get_as(const json &obj, const char *key) {
    const json &v = need(obj, key);
    try {
        return v.get<T>();
    } catch (const json::exception &) {
        throw FormatError(std::string("field '") + key + "' has the wrong type", std::string::npos);
    }
}

DecodedCharge decoded_from_json(const json &j, const char *name) {
    if (!j.is_object()) {
        throw FormatError(std::string("decoder entry '") + name + "' must be an object", std::string::npos);
    }
    DecodedCharge d;
    for (const auto &v : need(j, "log_likelihoods")) {
        if (v.is_null()) {
            d.log_likelihoods.push_back(kNegativeInfinity);
        } else if (v.is_number()) {
            d.log_likelihoods.push_back(v.get<double>());
        } else {
            throw FormatError("log_likelihoods entries must be numbers or null", std::string::npos);
        }
    }
    d.posterior.probabilities = get_as<std::vector<double>>(j, "posterior");
    d.credence = get_as<double>(j, "credence");
    d.accurate = get_as<bool>(j, "accurate");
    d.heralded = get_as<bool>(j, "heralded");
    return d;
}

std::vector<uint8_t> bit_array(const json &obj, const char *key) {
    std::vector<uint8_t> out;
    const json &arr = need(obj, key);
    if (!arr.is_array()) {
        throw FormatError(std::string("field '") + key + "' must be an array", std::string::npos);
    }
    for (const auto &v : arr) {
        if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 1) {
            throw FormatError(std::string("field '") + key + "' must contain only 0 and 1", std::string::npos);
        }
        out.push_back(static_cast<uint8_t>(v.get<int>()));
    }
    return out;
}

}  // namespace

std::string format_trajectory_line(const CircuitSpec &spec, const TrajectoryResult &r) {
    const uint32_t n = spec.num_qubits;
    ojson bits = ojson::array();
    for (const auto &o : r.record.outcomes) {
        bits.push_back(o.bit);
    }
    ojson line;
    line["shot"] = r.shot;
    line["seed"] = r.seed;
    line["L"] = n;
    line["t"] = spec.depth;
    line["plan"] = {
        {"kind", std::string(measurement_kind_name(spec.plan.kind()))}, {"value", spec.plan.parameter()}};
    line["circuit_seed"] = spec.seed;
    line["charges"] = spec.candidate_charges;
    line["true_charge"] = r.true_charge;
    line["final_charge"] = r.final_measured_charge;
    line["final_config"] = r.record.final_occupations ? ojson(*r.record.final_occupations) : ojson(nullptr);
    line["faults"] = r.injected_faults;
    line["sampling_log_probability"] = number_or_null(r.sampling_log_probability);
    line["bits"] = bits;
    if (spec.plan.kind() == MeasurementKind::ProjectiveFraction) {
        std::vector<uint8_t> mask(spec.num_slots(), 0);
        for (const auto &o : r.record.outcomes) {
            mask[static_cast<size_t>(o.step) * n + o.site] = 1;
        }
        line["schedule"] = mask;
    }
    ojson decoders = ojson::object();
    if (r.postbqp) {
        decoders[decoder_name(DecoderKind::PostBqp)] = decoded_to_json(*r.postbqp);
    }
    if (r.sep) {
        decoders[decoder_name(DecoderKind::Sep)] = decoded_to_json(*r.sep);
    }
    line["decoders"] = decoders;
    return line.dump();
}

TrajectoryLine parse_trajectory_line(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("malformed trajectory line: ") + e.what(), e.byte);
    }
    if (!j.is_object()) {
        throw FormatError("trajectory line must be an object", 0);
    }
    TrajectoryLine out;
    TrajectoryResult &r = out.result;
    r.shot = get_as<uint64_t>(j, "shot");
    r.seed = get_as<uint64_t>(j, "seed");
    out.num_qubits = get_as<uint32_t>(j, "L");
    out.depth = get_as<uint32_t>(j, "t");
    const json &plan = need(j, "plan");
    try {
        out.kind = parse_measurement_kind(get_as<std::string>(plan, "kind"));
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what(), std::string::npos);
    }
    out.plan_parameter = get_as<double>(plan, "value");
    out.circuit_seed = get_as<uint64_t>(j, "circuit_seed");
    out.candidate_charges = get_as<std::vector<int>>(j, "charges");
    r.true_charge = get_as<int>(j, "true_charge");
    r.final_measured_charge = get_as<int>(j, "final_charge");
    if (!need(j, "final_config").is_null()) {
        r.record.final_occupations = bit_array(j, "final_config");
    }
    r.injected_faults = get_as<uint32_t>(j, "faults");
    const json &slp = need(j, "sampling_log_probability");
    r.sampling_log_probability = slp.is_null() ? kNegativeInfinity : get_as<double>(j, "sampling_log_probability");

    const uint32_t n = out.num_qubits;
    if (n == 0) {
        throw FormatError("L must be positive", std::string::npos);
    }
    auto bits = bit_array(j, "bits");
    const size_t slots = static_cast<size_t>(n) * out.depth;
    if (out.kind == MeasurementKind::WeakAll) {
        if (bits.size() != slots) {
            throw FormatError(
                "weak-all line has " + std::to_string(bits.size()) + " bits, expected " + std::to_string(slots),
                std::string::npos);
        }
        for (size_t k = 0; k < slots; k++) {
            r.record.outcomes.push_back({static_cast<uint32_t>(k / n), static_cast<uint32_t>(k % n), bits[k]});
        }
    } else {
        auto mask = bit_array(j, "schedule");
        if (mask.size() != slots) {
            throw FormatError("schedule mask length must be t*L", std::string::npos);
        }
        size_t next = 0;
        for (size_t k = 0; k < slots; k++) {
            if (!mask[k]) {
                continue;
            }
            if (next >= bits.size()) {
                throw FormatError("schedule marks more slots than there are bits", std::string::npos);
            }
            r.record.outcomes.push_back({static_cast<uint32_t>(k / n), static_cast<uint32_t>(k % n), bits[next++]});
        }
        if (next != bits.size()) {
            throw FormatError("schedule marks fewer slots than there are bits", std::string::npos);
        }
    }

    const json &decoders = need(j, "decoders");
    if (!decoders.is_object()) {
        throw FormatError("field 'decoders' must be an object", std::string::npos);
    }
    for (DecoderKind k : {DecoderKind::PostBqp, DecoderKind::Sep}) {
        auto it = decoders.find(decoder_name(k));
        if (it != decoders.end()) {
            r.decoded(k) = decoded_from_json(*it, decoder_name(k));
        }
    }
    return out;
}

void check_compatible(const CircuitSpec &spec, const TrajectoryLine &line) {
    if (line.num_qubits != spec.num_qubits || line.depth != spec.depth) {
        throw std::invalid_argument(
            "trajectory shape L=" + std::to_string(line.num_qubits) + ", t=" + std::to_string(line.depth) +
            " does not match circuit L=" + std::to_string(spec.num_qubits) + ", t=" + std::to_string(spec.depth));
    }
    if (line.kind != spec.plan.kind()) {
        throw std::invalid_argument("trajectory measurement plan kind does not match the circuit");
    }
    if (line.candidate_charges != spec.candidate_charges) {
        throw std::invalid_argument("trajectory candidate charges do not match the circuit");
    }
    check_schedule(spec, line.result.record);
}

void write_trajectory_file(
    const std::filesystem::path &path, const CircuitSpec &spec, std::span<const TrajectoryResult> results) {
    std::string text;
    for (const auto &r : results) {
        text += format_trajectory_line(spec, r);
        text += '\n';
    }
    write_text_file(path, text);
}

std::vector<TrajectoryLine> read_trajectory_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::vector<TrajectoryLine> out;
    std::string line;
    size_t number = 0;
    size_t offset = 0;
    while (std::getline(in, line)) {
        number++;
        size_t start = offset;
        offset += line.size() + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(parse_trajectory_line(line));
        } catch (const FormatError &e) {
            throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what(), start);
        }
    }
    return out;
}

std::vector<TrajectoryResult> results_of(std::vector<TrajectoryLine> lines) {
    std::vector<TrajectoryResult> out;
    out.reserve(lines.size());
    for (auto &l : lines) {
        out.push_back(std::move(l.result));
    }
    return out;
}

}  // namespace chargelearn
