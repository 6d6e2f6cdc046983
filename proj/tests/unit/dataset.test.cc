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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "chargelearn/circuit_io.h"
#include "chargelearn/experiment.h"
#include "json.hpp"

using namespace chargelearn;

namespace {

std::vector<TrajectoryLine> sample_lines(const CircuitSpec &spec, size_t n, uint64_t seed = 2) {
    ExperimentConfig config;
    config.trajectory_seed = seed;
    config.decoders = {DecoderKind::Sep};
    Rng rng = make_rng(seed, SeedDomain::Labels);
    auto charges = balanced_charges(n, spec.candidate_charges, rng);
    std::vector<TrajectoryLine> out;
    for (const auto &r : run_shots(config, spec, 0, charges)) {
        out.push_back(parse_trajectory_line(format_trajectory_line(spec, r)));
    }
    return out;
}

std::filesystem::path temp_dir(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("chargelearn_dataset_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(dataset, labels) {
    EXPECT_EQ(charge_label(6, 3), 0);
    EXPECT_EQ(charge_label(6, 2), 1);
    EXPECT_THROW(charge_label(6, 4), std::invalid_argument);
}

TEST(dataset, weak_all_encoding_is_the_bit_matrix) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    auto line = sample_lines(spec, 1).front();
    auto steps = encode_record(4, 2, MeasurementKind::WeakAll, line.result.record);
    ASSERT_EQ(steps.size(), 2u);
    for (const auto &o : line.result.record.outcomes) {
        EXPECT_EQ(steps[o.step][o.site], o.bit);
    }
    MeasurementRecord partial = line.result.record;
    partial.outcomes.pop_back();
    EXPECT_THROW(encode_record(4, 2, MeasurementKind::WeakAll, partial), std::invalid_argument);
}

TEST(dataset, projective_encoding_is_one_hot) {
    auto spec = build_circuit(6, 3, MeasurementPlan::projective_fraction(0.5), 4);
    for (const auto &line : sample_lines(spec, 20)) {
        auto steps = encode_record(6, 3, MeasurementKind::ProjectiveFraction, line.result.record);
        size_t measured = 0;
        for (const auto &s : steps) {
            ASSERT_EQ(s.size(), 18u);
            for (size_t i = 0; i < 6; i++) {
                EXPECT_EQ(s[3 * i] + s[3 * i + 1] + s[3 * i + 2], 1);
                measured += s[3 * i] == 0;
            }
        }
        EXPECT_EQ(measured, line.result.record.outcomes.size());
        for (const auto &o : line.result.record.outcomes) {
            EXPECT_EQ(steps[o.step][3 * o.site + 1 + o.bit], 1);
        }
    }
}

TEST(dataset, split_is_disjoint_and_stratified) {
    auto spec = build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 5);
    auto lines = sample_lines(spec, 100);
    auto ds = build_dataset(lines, 0.8, 7);
    EXPECT_EQ(ds.train.size(), 80u);
    EXPECT_EQ(ds.test.size(), 20u);
    EXPECT_EQ(ds.manifest.train_count, 80u);
    EXPECT_EQ(ds.manifest.sequence_length, 3u);
    EXPECT_EQ(ds.manifest.step_width, 6u);
    EXPECT_EQ(ds.manifest.encoding, "bits");
    std::set<uint64_t> train_shots, all;
    int labels[2][2] = {{0, 0}, {0, 0}};
    for (const auto &r : ds.train) {
        train_shots.insert(r.shot);
        labels[0][r.label]++;
    }
    for (const auto &r : ds.test) {
        EXPECT_EQ(train_shots.count(r.shot), 0u);
        labels[1][r.label]++;
    }
    for (const auto &r : ds.train) {
        all.insert(r.shot);
    }
    for (const auto &r : ds.test) {
        all.insert(r.shot);
    }
    EXPECT_EQ(all.size(), 100u);
    EXPECT_LE(std::abs(labels[0][0] - labels[0][1]), 1);
    EXPECT_LE(std::abs(labels[1][0] - labels[1][1]), 1);
}

TEST(dataset, split_depends_on_seed_only) {
    auto spec = build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 6);
    auto lines = sample_lines(spec, 60);
    EXPECT_EQ(build_dataset(lines, 0.8, 1), build_dataset(lines, 0.8, 1));
    EXPECT_NE(build_dataset(lines, 0.8, 1).train, build_dataset(lines, 0.8, 2).train);
}

TEST(dataset, rejects_mixed_schedules) {
    auto a = sample_lines(build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 8), 10);
    auto b = sample_lines(build_circuit(6, 3, MeasurementPlan::weak_all(0.6), 8), 10);
    a.insert(a.end(), b.begin(), b.end());
    EXPECT_THROW(build_dataset(a, 0.8, 0), std::invalid_argument);
    EXPECT_THROW(build_dataset(std::vector<TrajectoryLine>{}, 0.8, 0), std::invalid_argument);
    EXPECT_THROW(build_dataset(b, 1.5, 0), std::invalid_argument);
}

TEST(dataset, write_then_read) {
    for (auto plan : {MeasurementPlan::weak_all(0.4), MeasurementPlan::projective_fraction(0.3)}) {
        auto spec = build_circuit(6, 3, plan, 9);
        auto ds = build_dataset(sample_lines(spec, 50), 0.8, 3);
        auto dir = temp_dir("rw");
        write_dataset(dir, ds);
        EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
        auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
        EXPECT_EQ(manifest["format"], "chargelearn.dataset");
        EXPECT_EQ(read_dataset(dir), ds);
        std::filesystem::remove_all(dir);
    }
}

TEST(dataset, read_rejects_tampering) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.4), 10);
    auto ds = build_dataset(sample_lines(spec, 20), 0.5, 3);
    auto dir = temp_dir("tamper");
    write_dataset(dir, ds);
    auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
    manifest["version"] = 99;
    write_text_file(dir / "manifest.json", manifest.dump());
    EXPECT_THROW(read_dataset(dir), VersionError);
    write_dataset(dir, ds);
    write_text_file(dir / "test.jsonl", "");
    EXPECT_THROW(read_dataset(dir), FormatError);
    std::filesystem::remove_all(dir);
}
