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

#include <gtest/gtest.h>

#include <filesystem>

#include "chargelearn/circuit_io.h"
#include "chargelearn/experiment.h"
#include "json.hpp"

using namespace chargelearn;

namespace {

std::vector<TrajectoryResult> sample_shots(const CircuitSpec &spec, size_t n, double p2q = 0) {
    ExperimentConfig config;
    config.noise.p2q = p2q;
    config.threads = 1;
    std::vector<int> charges;
    for (size_t k = 0; k < n; k++) {
        charges.push_back(spec.candidate_charges[k % 2]);
    }
    return run_shots(config, spec, 0, charges);
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("chargelearn_trajio_" + name);
}

}  // namespace

TEST(trajectory_io, round_trip_weak_all) {
    auto spec = build_circuit(6, 3, MeasurementPlan::weak_all(0.6), 5);
    for (const auto &r : sample_shots(spec, 20, 0.03)) {
        std::string text = format_trajectory_line(spec, r);
        auto line = parse_trajectory_line(text);
        EXPECT_EQ(line.num_qubits, 6u);
        EXPECT_EQ(line.depth, 3u);
        EXPECT_EQ(line.kind, MeasurementKind::WeakAll);
        EXPECT_EQ(line.plan_parameter, 0.6);
        EXPECT_EQ(line.circuit_seed, 5u);
        EXPECT_EQ(line.candidate_charges, spec.candidate_charges);
        EXPECT_EQ(line.result.record, r.record);
        EXPECT_EQ(line.result.true_charge, r.true_charge);
        EXPECT_EQ(line.result.final_measured_charge, r.final_measured_charge);
        EXPECT_EQ(line.result.injected_faults, r.injected_faults);
        EXPECT_EQ(line.result.sampling_log_probability, r.sampling_log_probability);
        ASSERT_TRUE(line.result.sep && line.result.postbqp);
        EXPECT_EQ(line.result.sep->log_likelihoods, r.sep->log_likelihoods);
        EXPECT_EQ(line.result.postbqp->posterior, r.postbqp->posterior);
        EXPECT_EQ(line.result.sep->credence, r.sep->credence);
        EXPECT_EQ(line.result.sep->heralded, r.sep->heralded);
        EXPECT_EQ(format_trajectory_line(spec, line.result), text);
        EXPECT_NO_THROW(check_compatible(spec, line));
    }
}

TEST(trajectory_io, negative_infinity_is_null) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(1.0), 6);
    auto r = sample_shots(spec, 1).front();
    r.sep = assess({kNegativeInfinity, kNegativeInfinity}, spec.candidate_charges, r.true_charge);
    std::string text = format_trajectory_line(spec, r);
    auto j = nlohmann::json::parse(text);
    EXPECT_TRUE(j["decoders"]["sep"]["log_likelihoods"][0].is_null());
    EXPECT_TRUE(j["decoders"]["sep"]["heralded"].get<bool>());
    auto back = parse_trajectory_line(text);
    EXPECT_EQ(back.result.sep->log_likelihoods[0], kNegativeInfinity);
    EXPECT_TRUE(back.result.heralded_error());
}

TEST(trajectory_io, projective_schedule_round_trips) {
    auto spec = build_circuit(6, 3, MeasurementPlan::projective_fraction(0.4), 7);
    for (const auto &r : sample_shots(spec, 10)) {
        std::string text = format_trajectory_line(spec, r);
        auto j = nlohmann::json::parse(text);
        EXPECT_EQ(j["schedule"].size(), spec.num_slots());
        EXPECT_EQ(j["bits"].size(), r.record.outcomes.size());
        auto line = parse_trajectory_line(text);
        EXPECT_EQ(line.result.record, r.record);
        EXPECT_NO_THROW(check_compatible(spec, line));
    }
}

TEST(trajectory_io, file_round_trip) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 8);
    auto shots = sample_shots(spec, 12);
    auto path = temp_path("file.jsonl");
    write_trajectory_file(path, spec, shots);
    auto lines = read_trajectory_file(path);
    ASSERT_EQ(lines.size(), shots.size());
    auto results = results_of(lines);
    for (size_t k = 0; k < shots.size(); k++) {
        EXPECT_EQ(results[k].shot, shots[k].shot);
        EXPECT_EQ(results[k].seed, shots[k].seed);
        EXPECT_EQ(results[k].record, shots[k].record);
    }
    std::filesystem::remove(path);
}

TEST(trajectory_io, errors_name_file_and_line) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 9);
    auto r = sample_shots(spec, 1).front();
    auto path = temp_path("bad.jsonl");
    write_text_file(path, format_trajectory_line(spec, r) + "\n{\"shot\": 1}\n");
    try {
        read_trajectory_file(path);
        FAIL() << "expected a format error";
    } catch (const FormatError &e) {
        EXPECT_NE(std::string(e.what()).find(path.string() + ":2"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
    EXPECT_THROW(read_trajectory_file(temp_path("missing.jsonl")), std::runtime_error);
}

TEST(trajectory_io, rejects_malformed_lines) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 10);
    auto r = sample_shots(spec, 1).front();
    auto good = nlohmann::json::parse(format_trajectory_line(spec, r));
    EXPECT_THROW(parse_trajectory_line("not json"), FormatError);
    EXPECT_THROW(parse_trajectory_line("[1, 2]"), FormatError);
    auto short_bits = good;
    short_bits["bits"].erase(short_bits["bits"].begin());
    EXPECT_THROW(parse_trajectory_line(short_bits.dump()), FormatError);
    auto bad_bit = good;
    bad_bit["bits"][0] = 2;
    EXPECT_THROW(parse_trajectory_line(bad_bit.dump()), FormatError);
    auto bad_kind = good;
    bad_kind["plan"]["kind"] = "sometimes";
    EXPECT_THROW(parse_trajectory_line(bad_kind.dump()), FormatError);
}

TEST(trajectory_io, check_compatible_rejects_other_circuits) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 11);
    auto line = parse_trajectory_line(format_trajectory_line(spec, sample_shots(spec, 1).front()));
    EXPECT_THROW(check_compatible(build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 11), line), std::invalid_argument);
    EXPECT_THROW(check_compatible(build_circuit(4, 2, MeasurementPlan::projective_fraction(0.5), 11), line),
                 std::invalid_argument);
}
