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

#include <gtest/gtest.h>

#include <filesystem>

using namespace chargelearn;

TEST(circuit_io, round_trip_property) {
    // Random sizes, depths, plans and seeds: parse(print(s)) == s and printing is a fixed point.
    Rng rng = make_rng(99, SeedDomain::Circuit);
    for (int trial = 0; trial < 40; trial++) {
        uint32_t n = 2 * static_cast<uint32_t>(1 + uniform_index(rng, 8));
        uint32_t t = static_cast<uint32_t>(1 + uniform_index(rng, 8));
        MeasurementPlan plan = uniform01(rng) < 0.5 ? MeasurementPlan::weak_all(uniform01(rng))
                                                    : MeasurementPlan::projective_fraction(uniform01(rng));
        auto spec = build_circuit(n, t, plan, rng(), static_cast<uint32_t>(uniform_index(rng, 6)));
        std::string text = serialize_circuit(spec);
        CircuitSpec back = deserialize_circuit(text);
        ASSERT_EQ(back, spec);
        ASSERT_EQ(serialize_circuit(back), text);
    }
}

TEST(circuit_io, seed_uses_full_64_bits) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 0xFFFFFFFFFFFFFFFFULL);
    EXPECT_EQ(deserialize_circuit(serialize_circuit(spec)).seed, 0xFFFFFFFFFFFFFFFFULL);
}

TEST(circuit_io, angles_printed_with_full_precision) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    std::string text = serialize_circuit(spec);
    std::string theta = format_double(spec.brick_layers[0][0].params.theta);
    EXPECT_NE(text.find(theta), std::string::npos);
    EXPECT_GE(theta.size(), 16u);
}

TEST(circuit_io, truncated_document_reports_position) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    std::string text = serialize_circuit(spec);
    std::string cut = text.substr(0, text.size() / 2);
    try {
        deserialize_circuit(cut);
        FAIL() << "expected a parse error";
    } catch (const FormatError &e) {
        EXPECT_NE(e.position(), std::string::npos);
        EXPECT_LE(e.position(), cut.size() + 1);
    }
}

TEST(circuit_io, unknown_version_is_rejected) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    std::string text = serialize_circuit(spec);
    auto at = text.find("\"version\": 1");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 12, "\"version\": 7");
    try {
        deserialize_circuit(text);
        FAIL() << "expected a version error";
    } catch (const VersionError &e) {
        EXPECT_EQ(e.version(), 7);
    }
}

TEST(circuit_io, schema_violations_name_the_field) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    std::string text = serialize_circuit(spec);
    auto at = text.find("\"depth\"");
    text.replace(at, 7, "\"dpth\"");
    try {
        deserialize_circuit(text);
        FAIL() << "expected a schema error";
    } catch (const FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("depth"), std::string::npos);
    }
    EXPECT_THROW(deserialize_circuit("{\"format\": \"something-else\", \"version\": 1}"), FormatError);
}

TEST(circuit_io, structural_invariants_checked_on_load) {
    auto spec = build_circuit(4, 2, MeasurementPlan::weak_all(0.5), 3);
    spec.brick_layers[1][0].sites = {0, 1};
    EXPECT_THROW(deserialize_circuit(serialize_circuit(spec)), FormatError);
}

TEST(circuit_io, missing_file_names_path) {
    try {
        load_circuit("/nonexistent/dir/circuit.json");
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/circuit.json"), std::string::npos);
    }
}

TEST(circuit_io, save_and_load) {
    auto path = std::filesystem::temp_directory_path() / "chargelearn_circuit_io_test.json";
    auto spec = build_circuit(6, 3, MeasurementPlan::projective_fraction(0.25), 17);
    save_circuit(spec, path);
    EXPECT_EQ(load_circuit(path), spec);
    std::filesystem::remove(path);
}
