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

#ifndef CMILAB_IO_HPP
#define CMILAB_IO_HPP

#include <string>
#include <vector>

#include "cmilab/channels.hpp"
#include "cmilab/cluster_expansion.hpp"
#include "cmilab/combinatorics.hpp"
#include "cmilab/experiments.hpp"
#include "cmilab/model.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {

/// Round-trip formatting with 17 significant digits; non-finite values print as "inf", "-inf", "nan".
std::string format_double(double v);

/// {"q": int, "n_sites": int, "terms": [{"support": [...], "pauli": "XZ.." | "diag": [...], "lambda": x}]}.
/// A Pauli string lists one letter per support site. Unknown keys are rejected.
LocalHamiltonian parse_model_json(const std::string &text);
std::string model_to_json(const LocalHamiltonian &h);

/// {"kind": ..., "p": x | "matrix": [[...]] | "kraus": [[[re, im], ...], ...]} with an optional "site".
/// Kraus operators are given row-major, either flat (q^2 entries) or as rows.
ChannelSpec parse_channel_spec_json(const std::string &text);
/// Same, but "site" is required.
SiteChannel parse_channel_json(const std::string &text, int q);

std::string certificate_to_json(const CertificateReport &report);
std::string curve_to_csv(const DecayCurve &curve);

}  // namespace cmilab

#endif
