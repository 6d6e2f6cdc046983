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

#include "chargelearn/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chargelearn/circuit_io.h"
#include "json.hpp"

namespace chargelearn {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view step_encoding_name(MeasurementKind kind) {
    return kind == MeasurementKind::WeakAll ? "bits" : "one-hot-trit";
}

int charge_label(uint32_t num_qubits, int charge) {
    int half = static_cast<int>(num_qubits / 2);
    if (charge == half) {
        return 0;
    }
    if (charge == half - 1) {
        return 1;
    }
    throw std::invalid_argument(
        "charge " + std::to_string(charge) + " has no label for L=" + std::to_string(num_qubits));
}

std::vector<std::vector<uint8_t>> encode_record(
    uint32_t num_qubits, uint32_t depth, MeasurementKind kind, const MeasurementRecord &record) {
    const uint32_t width = kind == MeasurementKind::WeakAll ? num_qubits : 3 * num_qubits;
    std::vector<std::vector<uint8_t>> steps(depth, std::vector<uint8_t>(width, 0));
    if (kind == MeasurementKind::ProjectiveFraction) {
        for (auto &s : steps) {
            for (uint32_t i = 0; i < num_qubits; i++) {
                s[3 * i] = 1;
            }
        }
    }
    std::vector<uint8_t> seen(static_cast<size_t>(num_qubits) * depth, 0);
    for (const auto &o : record.outcomes) {
        if (o.step >= depth || o.site >= num_qubits || o.bit > 1) {
            throw std::invalid_argument("record entry outside the dataset shape");
        }
        size_t slot = static_cast<size_t>(o.step) * num_qubits + o.site;
        if (seen[slot]++) {
            throw std::invalid_argument("record measures a slot twice");
        }
        if (kind == MeasurementKind::WeakAll) {
            steps[o.step][o.site] = o.bit;
        } else {
            steps[o.step][3 * o.site] = 0;
            steps[o.step][3 * o.site + 1 + o.bit] = 1;
        }
    }
    if (kind == MeasurementKind::WeakAll && record.outcomes.size() != seen.size()) {
        throw std::invalid_argument("weak-all record must measure every slot");
    }
    return steps;
}

Dataset build_dataset(std::span<const TrajectoryLine> lines, double train_fraction, uint64_t split_seed) {
    if (lines.empty()) {
        throw std::invalid_argument("build_dataset: no trajectories");
    }
    if (!(train_fraction >= 0 && train_fraction <= 1)) {
        throw std::invalid_argument("build_dataset: train fraction must lie in [0, 1]");
    }
    const TrajectoryLine &first = lines.front();
    Dataset ds;
    DatasetManifest &m = ds.manifest;
    m.num_qubits = first.num_qubits;
    m.depth = first.depth;
    m.kind = first.kind;
    m.parameter = first.plan_parameter;
    m.circuit_seed = first.circuit_seed;
    m.candidate_charges = first.candidate_charges;
    m.sequence_length = first.depth;
    m.step_width = first.kind == MeasurementKind::WeakAll ? first.num_qubits : 3 * first.num_qubits;
    m.encoding = std::string(step_encoding_name(first.kind));
    m.train_fraction = train_fraction;
    m.split_seed = split_seed;

    std::vector<DatasetRecord> records;
    for (size_t k = 0; k < lines.size(); k++) {
        const auto &l = lines[k];
        if (l.num_qubits != m.num_qubits || l.depth != m.depth || l.kind != m.kind || l.plan_parameter != m.parameter ||
            l.circuit_seed != m.circuit_seed || l.candidate_charges != m.candidate_charges) {
            throw std::invalid_argument(
                "trajectory " + std::to_string(k) + " (shot " + std::to_string(l.result.shot) +
                ") has a different schedule from the first");
        }
        DatasetRecord r;
        r.shot = l.result.shot;
        r.label = charge_label(m.num_qubits, l.result.true_charge);
        r.steps = encode_record(m.num_qubits, m.depth, m.kind, l.result.record);
        records.push_back(std::move(r));
    }

    std::vector<std::vector<size_t>> by_label(2);
    for (size_t k = 0; k < records.size(); k++) {
        by_label[static_cast<size_t>(records[k].label)].push_back(k);
    }
    const size_t total_train = static_cast<size_t>(std::llround(train_fraction * static_cast<double>(records.size())));
    std::vector<size_t> quota(2);
    std::vector<double> remainder(2);
    size_t assigned = 0;
    for (size_t lab = 0; lab < 2; lab++) {
        double exact = train_fraction * static_cast<double>(by_label[lab].size());
        quota[lab] = static_cast<size_t>(std::floor(exact));
        remainder[lab] = exact - std::floor(exact);
        assigned += quota[lab];
    }
    while (assigned < total_train) {
        size_t lab = remainder[1] > remainder[0] ? 1 : 0;
        if (quota[lab] >= by_label[lab].size()) {
            lab = 1 - lab;
        }
        quota[lab]++;
        remainder[lab] = -1;
        assigned++;
    }

    std::vector<uint8_t> in_train(records.size(), 0);
    for (size_t lab = 0; lab < 2; lab++) {
        Rng rng = make_rng(split_seed, SeedDomain::Split, {lab});
        auto idx = by_label[lab];
        shuffle_range(idx.begin(), idx.end(), rng);
        for (size_t k = 0; k < quota[lab]; k++) {
            in_train[idx[k]] = 1;
        }
    }
    for (size_t k = 0; k < records.size(); k++) {
        (in_train[k] ? ds.train : ds.test).push_back(std::move(records[k]));
    }
    m.train_count = ds.train.size();
    m.test_count = ds.test.size();
    return ds;
}

namespace {

std::string manifest_json(const DatasetManifest &m) {
    ojson j;
    j["format"] = std::string(kDatasetFormatName);
    j["version"] = kDatasetFormatVersion;
    j["L"] = m.num_qubits;
    j["t"] = m.depth;
    j["plan"] = {{"kind", std::string(measurement_kind_name(m.kind))}, {"value", m.parameter}};
    j["circuit_seed"] = m.circuit_seed;
    j["charges"] = m.candidate_charges;
    j["labels"] = {{"0", m.num_qubits / 2}, {"1", m.num_qubits / 2 - 1}};
    j["sequence_length"] = m.sequence_length;
    j["step_width"] = m.step_width;
    j["encoding"] = m.encoding;
    j["train_fraction"] = m.train_fraction;
    j["split_seed"] = m.split_seed;
    j["train_count"] = m.train_count;
    j["test_count"] = m.test_count;
    return j.dump(2) + "\n";
}

std::string records_jsonl(const std::vector<DatasetRecord> &records) {
    std::string out;
    for (const auto &r : records) {
        ojson j;
        j["shot"] = r.shot;
        j["label"] = r.label;
        j["x"] = r.steps;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<DatasetRecord> read_records(const std::filesystem::path &path, const DatasetManifest &m) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::vector<DatasetRecord> out;
    std::string line;
    size_t number = 0;
    while (std::getline(in, line)) {
        number++;
        if (line.empty()) {
            continue;
        }
        auto where = path.string() + ":" + std::to_string(number);
        try {
            json j = json::parse(line);
            DatasetRecord r;
            r.shot = j.at("shot").get<uint64_t>();
            r.label = j.at("label").get<int>();
            r.steps = j.at("x").get<std::vector<std::vector<uint8_t>>>();
            if (r.label < 0 || r.label > 1) {
                throw FormatError(where + ": label must be 0 or 1", std::string::npos);
            }
            if (r.steps.size() != m.sequence_length) {
                throw FormatError(where + ": sequence length differs from the manifest", std::string::npos);
            }
            for (const auto &s : r.steps) {
                if (s.size() != m.step_width) {
                    throw FormatError(where + ": step width differs from the manifest", std::string::npos);
                }
            }
            out.push_back(std::move(r));
        } catch (const json::exception &e) {
            throw FormatError(where + ": " + e.what(), std::string::npos);
        }
    }
    return out;
}

}  // namespace

void write_dataset(const std::filesystem::path &dir, const Dataset &ds) {
    write_text_file(dir / "manifest.json", manifest_json(ds.manifest));
    write_text_file(dir / "train.jsonl", records_jsonl(ds.train));
    write_text_file(dir / "test.jsonl", records_jsonl(ds.test));
}

Dataset read_dataset(const std::filesystem::path &dir) {
    auto manifest_path = dir / "manifest.json";
    json j;
    try {
        j = json::parse(read_text_file(manifest_path));
    } catch (const json::parse_error &e) {
        throw FormatError(manifest_path.string() + ": " + e.what(), e.byte);
    }
    Dataset ds;
    DatasetManifest &m = ds.manifest;
    try {
        if (j.at("format").get<std::string>() != kDatasetFormatName) {
            throw FormatError(manifest_path.string() + ": not a dataset manifest", std::string::npos);
        }
        int version = j.at("version").get<int>();
        if (version != kDatasetFormatVersion) {
            throw VersionError(manifest_path.string() + ": unsupported dataset version " + std::to_string(version), version);
        }
        m.num_qubits = j.at("L").get<uint32_t>();
        m.depth = j.at("t").get<uint32_t>();
        m.kind = parse_measurement_kind(j.at("plan").at("kind").get<std::string>());
        m.parameter = j.at("plan").at("value").get<double>();
        m.circuit_seed = j.at("circuit_seed").get<uint64_t>();
        m.candidate_charges = j.at("charges").get<std::vector<int>>();
        m.sequence_length = j.at("sequence_length").get<uint32_t>();
        m.step_width = j.at("step_width").get<uint32_t>();
        m.encoding = j.at("encoding").get<std::string>();
        m.train_fraction = j.at("train_fraction").get<double>();
        m.split_seed = j.at("split_seed").get<uint64_t>();
        m.train_count = j.at("train_count").get<size_t>();
        m.test_count = j.at("test_count").get<size_t>();
    } catch (const json::exception &e) {
        throw FormatError(manifest_path.string() + ": " + e.what(), std::string::npos);
    }
    ds.train = read_records(dir / "train.jsonl", m);
    ds.test = read_records(dir / "test.jsonl", m);
    if (ds.train.size() != m.train_count || ds.test.size() != m.test_count) {
        throw FormatError(dir.string() + ": record counts differ from the manifest", std::string::npos);
    }
    return ds;
}

}  // namespace chargelearn
