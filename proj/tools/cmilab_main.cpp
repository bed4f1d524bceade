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

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "cmilab/runner.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Conditional mutual information experiments for noisy Gibbs states"};
    app.set_version_flag("--version", cmilab::artifact_version());
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> overrides;
    cmilab::RunOptions opts;

    auto *run = app.add_subcommand("run", "Run an experiment config or a manifest");
    run->add_option("config", config, "Experiment config or manifest JSON")->required();
    run->add_option("--override", overrides, "key=value, value parsed as JSON when possible")->take_all();
    run->add_option("--threads", opts.threads, "Worker threads (0 = available parallelism)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--output-dir", opts.output_dir, "Directory for outputs");

    auto *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("config", config, "Experiment config JSON")->required();
    validate->add_option("--override", overrides, "key=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? cmilab::kExitOk : cmilab::kExitError;
    }

    if (validate->parsed()) {
        const auto findings = cmilab::validate_config(config, overrides);
        for (const auto &f : findings) std::printf("finding: %s\n", f.c_str());
        if (findings.empty()) std::printf("ok\n");
        return findings.empty() ? cmilab::kExitOk : cmilab::kExitError;
    }

    opts.overrides = overrides;
    try {
        const auto outcome = cmilab::run_experiment(config, opts);
        for (const auto &path : outcome.written) std::printf("wrote %s\n", path.c_str());
        std::printf("%s\n", outcome.summary.c_str());
        return outcome.exit_code;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cmilab::kExitError;
    }
}
