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

// Internal JSON helpers shared by io.cpp and runner.cpp; not installed.
#ifndef CMILAB_SRC_IO_JSON_HPP
#define CMILAB_SRC_IO_JSON_HPP

#include <json.hpp>
#include <string>

#include "cmilab/cluster_expansion.hpp"
#include "cmilab/model.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {

using json = nlohmann::ordered_json;

/// Pretty-printed with two-space indent; floats use format_double.
std::string dump_json(const json &j);
double json_to_beta(const json &v);
json beta_to_json(double beta);
LocalHamiltonian model_from_json(const json &j);
json model_json(const LocalHamiltonian &h);
ChannelSpec channel_spec_from_json(const json &j);
json certificate_json(const CertificateReport &r);

}  // namespace cmilab

#endif
