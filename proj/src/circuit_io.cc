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

#include "chargelearn/circuit_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chargelearn {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

void write_layers(std::ostream &out, const char *name, const std::vector<GateLayer> &layers) {
    out << "  \"" << name << "\": [";
    for (size_t k = 0; k < layers.size(); k++) {
        out << (k ? ",\n    [" : "\n    [");
        for (size_t g = 0; g < layers[k].size(); g++) {
            const auto &gate = layers[k][g];
            const auto &p = gate.params;
            out << (g ? ",\n      " : "\n      ");
            out << "{\"sites\": [" << gate.sites.first << ", " << gate.sites.second << "], "
                << "\"theta\": " << format_double(p.theta) << ", "
                << "\"phi\": [" << format_double(p.phi0) << ", " << format_double(p.phi1) << ", "
                << format_double(p.phi2) << ", " << format_double(p.phi3) << "]}";
        }
        out << (layers[k].empty() ? "]" : "\n    ]");
    }
    out << (layers.empty() ? "]" : "\n  ]");
}

const json &field(const json &obj, const char *key, const std::string &path) {
    if (!obj.is_object()) {
        throw FormatError(path + ": expected an object", std::string::npos);
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(path + ": missing field '" + key + "'", std::string::npos);
    }
    return *it;
}

template <typename T>
T get_as(const json &value, const std::string &path) {
    try {
        return value.get<T>();
    } catch (const json::exception &e) {
        throw FormatError(path + ": " + e.what(), std::string::npos);
    }
}

double get_number(const json &value, const std::string &path) {
    if (!value.is_number()) {
        throw FormatError(path + ": expected a number", std::string::npos);
    }
    return value.get<double>();
}

uint32_t get_index(const json &value, const std::string &path) {
    if (!value.is_number_unsigned()) {
        throw FormatError(path + ": expected a non-negative integer", std::string::npos);
    }
    return value.get<uint32_t>();
}

std::vector<GateLayer> read_layers(const json &value, const std::string &path) {
    if (!value.is_array()) {
        throw FormatError(path + ": expected an array of layers", std::string::npos);
    }
    std::vector<GateLayer> layers;
    for (size_t k = 0; k < value.size(); k++) {
        std::string layer_path = path + "[" + std::to_string(k) + "]";
        const json &layer_json = value[k];
        if (!layer_json.is_array()) {
            throw FormatError(layer_path + ": expected an array of gates", std::string::npos);
        }
        GateLayer layer;
        for (size_t g = 0; g < layer_json.size(); g++) {
            std::string gate_path = layer_path + "[" + std::to_string(g) + "]";
            const json &gj = layer_json[g];
            const json &sites = field(gj, "sites", gate_path);
            const json &phi = field(gj, "phi", gate_path);
            if (!sites.is_array() || sites.size() != 2) {
                throw FormatError(gate_path + ".sites: expected two site indices", std::string::npos);
            }
            if (!phi.is_array() || phi.size() != 4) {
                throw FormatError(gate_path + ".phi: expected four phases", std::string::npos);
            }
            PlacedGate gate;
            gate.sites.first = get_index(sites[0], gate_path + ".sites[0]");
            gate.sites.second = get_index(sites[1], gate_path + ".sites[1]");
            gate.params.theta = get_number(field(gj, "theta", gate_path), gate_path + ".theta");
            gate.params.phi0 = get_number(phi[0], gate_path + ".phi[0]");
            gate.params.phi1 = get_number(phi[1], gate_path + ".phi[1]");
            gate.params.phi2 = get_number(phi[2], gate_path + ".phi[2]");
            gate.params.phi3 = get_number(phi[3], gate_path + ".phi[3]");
            layer.push_back(gate);
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

}  // namespace

std::string serialize_circuit(const CircuitSpec &spec) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format\": \"" << kCircuitFormatName << "\",\n";
    out << "  \"version\": " << kCircuitFormatVersion << ",\n";
    out << "  \"num_qubits\": " << spec.num_qubits << ",\n";
    out << "  \"depth\": " << spec.depth << ",\n";
    out << "  \"seed\": " << spec.seed << ",\n";
    out << "  \"plan\": {\"kind\": \"" << measurement_kind_name(spec.plan.kind()) << "\", \""
        << (spec.plan.kind() == MeasurementKind::WeakAll ? "gamma" : "p")
        << "\": " << format_double(spec.plan.parameter()) << "},\n";
    out << "  \"candidate_charges\": [";
    for (size_t i = 0; i < spec.candidate_charges.size(); i++) {
        out << (i ? ", " : "") << spec.candidate_charges[i];
    }
    out << "],\n";
    write_layers(out, "scramble_layers", spec.scramble_layers);
    out << ",\n";
    write_layers(out, "brick_layers", spec.brick_layers);
    out << "\n}\n";
    return out.str();
}

CircuitSpec deserialize_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw FormatError(
            "circuit document: parse error at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
    const std::string root = "circuit";
    std::string format = get_as<std::string>(field(doc, "format", root), root + ".format");
    if (format != kCircuitFormatName) {
        throw FormatError(root + ".format: unexpected format tag '" + format + "'", std::string::npos);
    }
    const json &version_json = field(doc, "version", root);
    if (!version_json.is_number_integer()) {
        throw FormatError(root + ".version: expected an integer", std::string::npos);
    }
    int version = version_json.get<int>();
    if (version != kCircuitFormatVersion) {
        throw VersionError(
            "unsupported circuit format version " + std::to_string(version) + " (this build reads version " +
                std::to_string(kCircuitFormatVersion) + ")",
            version);
    }

    CircuitSpec spec;
    spec.num_qubits = get_index(field(doc, "num_qubits", root), root + ".num_qubits");
    spec.depth = get_index(field(doc, "depth", root), root + ".depth");
    const json &seed = field(doc, "seed", root);
    if (!seed.is_number_unsigned()) {
        throw FormatError(root + ".seed: expected an unsigned 64-bit integer", std::string::npos);
    }
    spec.seed = seed.get<uint64_t>();

    const json &plan = field(doc, "plan", root);
    auto kind_name = get_as<std::string>(field(plan, "kind", root + ".plan"), root + ".plan.kind");
    try {
        MeasurementKind kind = parse_measurement_kind(kind_name);
        if (kind == MeasurementKind::WeakAll) {
            spec.plan = MeasurementPlan::weak_all(get_number(field(plan, "gamma", root + ".plan"), root + ".plan.gamma"));
        } else {
            spec.plan = MeasurementPlan::projective_fraction(get_number(field(plan, "p", root + ".plan"), root + ".plan.p"));
        }
    } catch (const std::invalid_argument &e) {
        throw FormatError(root + ".plan: " + e.what(), std::string::npos);
    }

    const json &charges = field(doc, "candidate_charges", root);
    if (!charges.is_array()) {
        throw FormatError(root + ".candidate_charges: expected an array", std::string::npos);
    }
    for (size_t i = 0; i < charges.size(); i++) {
        if (!charges[i].is_number_integer()) {
            throw FormatError(root + ".candidate_charges: expected integers", std::string::npos);
        }
        spec.candidate_charges.push_back(charges[i].get<int>());
    }
    spec.scramble_layers = read_layers(field(doc, "scramble_layers", root), root + ".scramble_layers");
    spec.brick_layers = read_layers(field(doc, "brick_layers", root), root + ".brick_layers");

    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("circuit: ") + e.what(), std::string::npos);
    }
    return spec;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

void save_circuit(const CircuitSpec &spec, const std::filesystem::path &path) {
    write_text_file(path, serialize_circuit(spec));
}

CircuitSpec load_circuit(const std::filesystem::path &path) {
    std::string text = read_text_file(path);
    try {
        return deserialize_circuit(text);
    } catch (const VersionError &e) {
        throw VersionError(path.string() + ": " + e.what(), e.version());
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what(), e.position());
    }
}

}  // namespace chargelearn
