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

#ifndef CMILAB_RUNNER_HPP
#define CMILAB_RUNNER_HPP

#include <string>
#include <vector>

namespace cmilab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct RunOptions {
    /// "key=value" with a JSON value (bare words are taken as strings); dotted keys reach nested objects.
    std::vector<std::string> overrides;
    /// 0 means the available hardware parallelism.
    int threads = 0;
    std::string output_dir = ".";
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<std::string> written;
    std::string summary;
};

/// Runs an experiment config, or a manifest written by a previous run. Writes <output>.csv (curves),
/// <output>.json (results) and <output>.manifest.json. Throws cmilab::Error on invalid input.
RunOutcome run_experiment(const std::string &config_path, const RunOptions &options);

/// Schema and semantic findings without running anything; empty when the config is valid.
std::vector<std::string> validate_config(const std::string &config_path,
                                         const std::vector<std::string> &overrides = {});

/// Version string recorded in manifests.
const char *artifact_version();

}  // namespace cmilab

#endif
