// Copyright 2026 The cmilab Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmilab/linalg.hpp"
#include "cmilab/runner.hpp"

namespace cmilab {
namespace {

namespace fs = std::filesystem;

const fs::path kConfigs = CMILAB_TEST_CONFIG_DIR;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class RunnerTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cmilab_runner_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    RunOptions opts(const std::string &sub, int threads = 2) {
        RunOptions o;
        o.output_dir = (dir_ / sub).string();
        o.threads = threads;
        return o;
    }

    fs::path dir_;
};

TEST_F(RunnerTest, ValidConfigHasNoFindings) {
    EXPECT_TRUE(validate_config((kConfigs / "decay_ising.json").string()).empty());
    EXPECT_TRUE(validate_config((kConfigs / "certificates_ising.json").string()).empty());
    EXPECT_TRUE(validate_config((kConfigs / "cmi_custom.json").string()).empty());
}

TEST_F(RunnerTest, UnknownKeyIsReported) {
    auto f = validate_config((kConfigs / "decay_ising.json").string(), {"temperature=3"});
    ASSERT_EQ(f.size(), 1u);
    EXPECT_NE(f[0].find("temperature"), std::string::npos);
}

TEST_F(RunnerTest, NonCommutingModelWithPauliEngineIsReported) {
    auto f = validate_config((kConfigs / "noncommuting.json").string());
    ASSERT_FALSE(f.empty());
    bool found = false;
    for (const auto &s : f) found = found || s.find("non-commuting") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST_F(RunnerTest, MissingKeysAndCapsAreReported) {
    fs::path p = write("c.json", R"({"experiment": "decay_curve", "model": "ising_chain", "beta": [0.1]})");
    auto f = validate_config(p.string());
    ASSERT_EQ(f.size(), 1u);
    EXPECT_NE(f[0].find("distances"), std::string::npos);
    fs::path big = write("big.json", R"({"experiment": "cmi", "model": "ising_chain_n20", "beta": [0.1],
                                          "engine": "dense"})");
    auto g = validate_config(big.string());
    ASSERT_EQ(g.size(), 1u);
    EXPECT_NE(g[0].find("CMILAB_MAX_DENSE_DIM"), std::string::npos);
    EXPECT_FALSE(validate_config((dir_ / "missing.json").string()).empty());
}

TEST_F(RunnerTest, DecayRunWritesCsvResultsAndManifest) {
    RunOutcome out = run_experiment((kConfigs / "decay_ising.json").string(), opts("out"));
    EXPECT_EQ(out.exit_code, kExitOk);
    ASSERT_EQ(out.written.size(), 3u);
    const std::string csv = slurp(dir_ / "out" / "decay_ising.csv");
    EXPECT_EQ(csv.rfind("beta,distance,cmi_bits\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 18);
    const std::string json = slurp(dir_ / "out" / "decay_ising.json");
    EXPECT_NE(json.find("\"xi\""), std::string::npos);
    const std::string manifest = slurp(dir_ / "out" / "decay_ising.manifest.json");
    EXPECT_NE(manifest.find("\"timings_seconds\""), std::string::npos);
    EXPECT_NE(manifest.find("\"max_pauli_terms\""), std::string::npos);
    EXPECT_EQ(json.find("timings"), std::string::npos);
}

TEST_F(RunnerTest, ZeroBetaOverrideGivesNoCmi) {
    run_experiment((kConfigs / "decay_ising.json").string(),
                   [&] {
                       RunOptions o = opts("zero");
                       o.overrides = {"beta=[0.0]"};
                       return o;
                   }());
    std::istringstream csv(slurp(dir_ / "zero" / "decay_ising.csv"));
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    while (std::getline(csv, line)) {
        const double v = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_LE(v, 1e-10);
        ++rows;
    }
    EXPECT_EQ(rows, 6);
}

TEST_F(RunnerTest, ManifestRerunIsByteIdentical) {
    run_experiment((kConfigs / "decay_ising.json").string(), opts("a", 4));
    run_experiment((dir_ / "a" / "decay_ising.manifest.json").string(), opts("b", 1));
    EXPECT_EQ(slurp(dir_ / "a" / "decay_ising.csv"), slurp(dir_ / "b" / "decay_ising.csv"));
    EXPECT_EQ(slurp(dir_ / "a" / "decay_ising.json"), slurp(dir_ / "b" / "decay_ising.json"));
}

TEST_F(RunnerTest, CertificatesExitZero) {
    RunOutcome out = run_experiment((kConfigs / "certificates_ising.json").string(), opts("cert"));
    EXPECT_EQ(out.exit_code, kExitOk);
    EXPECT_NE(slurp(dir_ / "cert" / "certificates_ising.json").find("\"violations\": 0"), std::string::npos);
}

TEST_F(RunnerTest, CustomModelFileWithPartition) {
    RunOutcome out = run_experiment((kConfigs / "cmi_custom.json").string(), opts("custom"));
    EXPECT_EQ(out.exit_code, kExitOk);
    const std::string manifest = slurp(dir_ / "custom" / "cmi_custom.manifest.json");
    // The model file is inlined so the manifest is self-contained.
    EXPECT_NE(manifest.find("\"terms\""), std::string::npos);
}

TEST_F(RunnerTest, OtherExperiments) {
    const std::vector<std::string> configs = {
        R"({"experiment": "theorem3_bound", "k": 2, "q": [0, 1e-12, 1e-6]})",
        R"({"experiment": "cluster_equivalence", "n": [4, 6], "beta": [0.5, 2.0]})",
        R"({"experiment": "low_temperature_demo", "model": "parity_chain", "beta": ["inf"], "distances": [2, 3]})",
        R"({"experiment": "combinatorics", "model": "ising_chain_n5", "max_weight": 4})",
        R"({"experiment": "pinned_certificates", "model": "ising_chain_n4", "beta": [0.05], "max_weight": 3,
            "channel": {"kind": "transition", "matrix": [[0.8, 0.2], [0.2, 0.8]]}})",
        R"({"experiment": "cmi", "model": "bell_chain_n3", "beta": ["inf"], "engine": "pauli"})"};
    int i = 0;
    for (const auto &text : configs) {
        fs::path p = write("cfg" + std::to_string(i) + ".json", text);
        RunOutcome out = run_experiment(p.string(), opts("other" + std::to_string(i++)));
        EXPECT_EQ(out.exit_code, kExitOk) << text;
    }
}

TEST_F(RunnerTest, ToolingErrorsThrow) {
    EXPECT_THROW(run_experiment((dir_ / "none.json").string(), opts("x")), Error);
    fs::path bad = write("bad.json", R"({"experiment": "decay_curve", "model": "ising_chain", "beta": [0.1],
                                         "distances": [1], "engine": "quantum"})");
    EXPECT_THROW(run_experiment(bad.string(), opts("x")), Error);
    fs::path cap = write("cap.json", R"({"experiment": "cmi", "model": "ising_chain_n30", "beta": [0.1]})");
    try {
        run_experiment(cap.string(), opts("x"));
        FAIL();
    } catch (const CapError &e) {
        EXPECT_NE(std::string(e.what()).find("CMILAB_MAX_CONFIGS"), std::string::npos);
    }
}

}  // namespace
}  // namespace cmilab
