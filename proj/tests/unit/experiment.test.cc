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

#include "chargelearn/experiment.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "chargelearn/circuit_io.h"
#include "chargelearn/report.h"
#include "chargelearn/trajectory_io.h"

using namespace chargelearn;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig c;
    c.sizes = {4, 6};
    c.grid = {0.0, 0.5, 1.0};
    c.shots = 60;
    c.bootstrap_resamples = 50;
    return c;
}

std::filesystem::path temp_dir(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("chargelearn_experiment_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(experiment, config_json_round_trip) {
    ExperimentConfig c = tiny_config();
    c.kind = MeasurementKind::ProjectiveFraction;
    c.noise.p2q = 0.02;
    c.circuits = 3;
    c.filters.zero_credence = false;
    c.binder_form = BinderForm::Literal;
    c.entropy_timing = EntropyTiming::AfterTerminalSweep;
    c.decoders = {DecoderKind::Sep};
    std::string text = experiment_config_to_json(c);
    ExperimentConfig back = experiment_config_from_json(text);
    EXPECT_EQ(experiment_config_to_json(back), text);
    EXPECT_EQ(back.sizes, c.sizes);
    EXPECT_EQ(back.noise.p2q, 0.02);
    EXPECT_EQ(back.binder_form, BinderForm::Literal);
    EXPECT_FALSE(back.runs(DecoderKind::PostBqp));
    EXPECT_THROW(experiment_config_from_json(R"({"sizes": [6], "bogus": 1})"), std::invalid_argument);
}

TEST(experiment, validate_names_the_field) {
    ExperimentConfig c = tiny_config();
    c.sizes = {5};
    try {
        c.validate();
        FAIL() << "odd L accepted";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("sizes"), std::string::npos) << e.what();
    }
    c = tiny_config();
    c.grid = {1.5};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.shots = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(experiment, balanced_charges) {
    Rng rng = make_rng(1, SeedDomain::Labels);
    std::vector<int> cand = {3, 2};
    for (size_t n : {0u, 1u, 7u, 100u}) {
        auto v = balanced_charges(n, cand, rng);
        ASSERT_EQ(v.size(), n);
        auto threes = std::count(v.begin(), v.end(), 3);
        EXPECT_EQ(static_cast<size_t>(threes), (n + 1) / 2);
        EXPECT_EQ(static_cast<size_t>(std::count(v.begin(), v.end(), 2)), n / 2);
    }
}

TEST(experiment, circuit_seeds) {
    ExperimentConfig c = tiny_config();
    c.circuit_seed = 17;
    EXPECT_EQ(circuit_seed_for(c, 0), 17u);
    EXPECT_NE(circuit_seed_for(c, 1), 17u);
    // Gates depend on the seed only, so cells at different strengths share the unitary.
    auto a = circuit_for(c, 6, 0.2, 0), b = circuit_for(c, 6, 0.7, 0);
    EXPECT_EQ(a.brick_layers, b.brick_layers);
    EXPECT_EQ(a.scramble_layers, b.scramble_layers);
}

TEST(experiment, results_do_not_depend_on_thread_count) {
    ExperimentConfig c = tiny_config();
    c.threads = 1;
    auto one = run_cell(c, 6, 0.5);
    c.threads = 4;
    auto four = run_cell(c, 6, 0.5);
    ASSERT_EQ(one.shots.size(), four.shots.size());
    for (size_t k = 0; k < one.shots.size(); k++) {
        EXPECT_EQ(one.shots[k].seed, four.shots[k].seed);
        EXPECT_EQ(one.shots[k].record, four.shots[k].record);
        EXPECT_EQ(one.shots[k].sep->log_likelihoods, four.shots[k].sep->log_likelihoods);
        EXPECT_EQ(one.shots[k].postbqp->log_likelihoods, four.shots[k].postbqp->log_likelihoods);
    }
    auto s1 = summarize_cell(c, one), s4 = summarize_cell(c, four);
    EXPECT_EQ(s1.get(ShotSubset::Raw, DecoderKind::Sep)->credence.error,
              s4.get(ShotSubset::Raw, DecoderKind::Sep)->credence.error);
}

TEST(experiment, limit_cells) {
    ExperimentConfig c = tiny_config();
    auto blind = summarize_cell(c, run_cell(c, 6, 0.0));
    for (DecoderKind k : {DecoderKind::PostBqp, DecoderKind::Sep}) {
        const auto &d = blind.get(ShotSubset::Raw, k);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(d->credence.value, 0.5);
        EXPECT_EQ(d->credence_variance.value, 0.0);
    }
    auto sharp = summarize_cell(c, run_cell(c, 6, 1.0));
    EXPECT_EQ(sharp.discard.retained_fraction(), 1.0);
    for (DecoderKind k : {DecoderKind::PostBqp, DecoderKind::Sep}) {
        for (ShotSubset s : {ShotSubset::Raw, ShotSubset::Mitigated}) {
            const auto &d = sharp.get(s, k);
            ASSERT_TRUE(d.has_value());
            EXPECT_EQ(d->credence.value, 1.0);
            EXPECT_EQ(d->accuracy.value, 1.0);
        }
    }
}

TEST(experiment, postbqp_cap_is_noted) {
    ExperimentConfig c = tiny_config();
    c.postbqp_max_qubits = 4;
    auto cell = run_cell(c, 6, 0.5);
    EXPECT_FALSE(cell.failed);
    ASSERT_EQ(cell.notes.size(), 1u);
    EXPECT_NE(cell.notes[0].find("postbqp"), std::string::npos);
    EXPECT_FALSE(cell.shots[0].postbqp.has_value());
    EXPECT_TRUE(cell.shots[0].sep.has_value());
}

TEST(experiment, circuits_split_the_shots) {
    ExperimentConfig c = tiny_config();
    c.circuits = 3;
    c.shots = 61;
    auto cell = run_cell(c, 4, 0.5);
    EXPECT_EQ(cell.circuits.size(), 3u);
    EXPECT_EQ(cell.shots.size(), 61u);
    EXPECT_NE(cell.circuits[0].seed, cell.circuits[1].seed);
    EXPECT_EQ(std::count(cell.shot_circuit.begin(), cell.shot_circuit.end(), 0u), 21);
}

TEST(experiment, variance_peak_is_interior_for_small_size) {
    ExperimentConfig c;
    c.sizes = {6};
    c.grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    c.shots = 600;
    c.decoders = {DecoderKind::Sep};
    c.bootstrap_resamples = 100;
    auto sweep = run_sweep(c);
    auto peaks = variance_peaks(sweep.statistics);
    bool found = false;
    for (const auto &p : peaks) {
        if (p.decoder == DecoderKind::Sep && p.subset == ShotSubset::Raw) {
            found = true;
            EXPECT_TRUE(p.fit.interior) << p.fit.location;
        }
    }
    EXPECT_TRUE(found);
}

TEST(experiment, sweep_outputs_reload) {
    ExperimentConfig c = tiny_config();
    c.grid = {0.2, 0.4, 0.6, 0.8};
    auto sweep = run_sweep(c);
    auto dir = temp_dir("sweep");
    write_sweep_outputs(dir, sweep, true);
    for (const char *f : {"run_config.json", "credence_curves.csv", "discard_table.csv", "variance_peaks.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    auto back = load_sweep(dir);
    EXPECT_EQ(credence_curves_csv(back.statistics), credence_curves_csv(sweep.statistics));
    EXPECT_EQ(read_text_file(dir / "discard_table.csv"), discard_table_csv(c, back.statistics));
    auto circuit = load_circuit(dir / "circuits" / (cell_stem(4, 0) + "_c0.json"));
    EXPECT_EQ(circuit, sweep.cells[0].circuits[0]);
    std::filesystem::remove_all(dir);
}

TEST(experiment, reference_cells) {
    ExperimentConfig c = tiny_config();
    c.grid = {0.0, 1.0};
    c.shots = 40;
    auto blind = run_reference_cell(c, 6, 0.0);
    ASSERT_EQ(blind.entropies.size(), 40u);
    for (double s : blind.entropies) {
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
    EXPECT_FALSE(summarize_reference_cell(c, blind).moments.binder.has_value());
    auto sharp = run_reference_cell(c, 6, 1.0);
    for (double s : sharp.entropies) {
        EXPECT_NEAR(s, 0.0, 1e-12);
    }
    EXPECT_NEAR(sharp.first_sweep_charge_variance, 0.0, 1e-12);
    auto sweep = run_binder_sweep(c);
    EXPECT_EQ(sweep.statistics.size(), 4u);
    auto dir = temp_dir("binder");
    write_binder_outputs(dir, sweep);
    auto back = load_binder_sweep(dir);
    EXPECT_EQ(binder_curves_csv(c, back.statistics), binder_curves_csv(c, sweep.statistics));
    std::filesystem::remove_all(dir);
}
