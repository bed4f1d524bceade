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

#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>

#include "cmilab/io.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {
namespace {

TEST(Io, FormatDoubleRoundTrips) {
    std::mt19937_64 rng(91);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 2000) {
        std::uint64_t b = bits(rng);
        double v;
        std::memcpy(&v, &b, sizeof v);
        if (!std::isfinite(v)) continue;
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
        ++checked;
    }
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Io, ModelJsonRoundTrip) {
    for (const LocalHamiltonian &h : {cluster_chain(4), parity_chain(2), ising_lattice(2, 2)}) {
        const std::string text = model_to_json(h);
        LocalHamiltonian back = parse_model_json(text);
        EXPECT_EQ(model_to_json(back), text);
        EXPECT_LT((back.dense() - h.dense()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Io, ModelJsonAcceptsSupportLetters) {
    LocalHamiltonian h = parse_model_json(R"({"q": 2, "n_sites": 3,
        "terms": [{"support": [0, 2], "pauli": "XZ", "lambda": 0.5},
                  {"support": [1], "pauli": "-Z", "lambda": 1}]})");
    EXPECT_EQ(h.term(0).pauli_op().str(), "XIZ");
    EXPECT_EQ(h.term(1).pauli_op().str(), "-IZI");
}

TEST(Io, ModelJsonDiagonalTable) {
    LocalHamiltonian h = parse_model_json(R"({"q": 3, "n_sites": 2,
        "terms": [{"support": [0, 1], "diag": [1, 0, 0, 0, 1, 0, 0, 0, 1], "lambda": -1}]})");
    EXPECT_EQ(h.local_dim(), 3);
    EXPECT_DOUBLE_EQ(h.diagonal_energy({2, 2}), -1.0);
    EXPECT_DOUBLE_EQ(h.diagonal_energy({2, 1}), 0.0);
}

TEST(Io, ModelJsonRejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_model_json(R"({"q": 2, "n_sites": 2, "terms": [], "colour": 1})"), Error);
    EXPECT_THROW(parse_model_json(R"({"q": 2, "n_sites": 2,
        "terms": [{"support": [0, 1], "pauli": "ZZ", "lambda": 2}]})"),
                 Error);
    EXPECT_THROW(parse_model_json(R"({"q": 2, "n_sites": 2,
        "terms": [{"support": [0, 1], "pauli": "ZZ", "weight": 1}]})"),
                 Error);
    EXPECT_THROW(parse_model_json("{not json"), Error);
}

TEST(Io, ChannelSpecs) {
    ChannelSpec s = parse_channel_spec_json(R"({"kind": "bitflip", "p": 0.25})");
    EXPECT_EQ(s.kind, "bitflip");
    EXPECT_EQ(s.p, 0.25);
    SiteChannel t = parse_channel_json(R"({"site": 1, "kind": "transition", "matrix": [[0.9, 0.2], [0.1, 0.8]]})", 2);
    EXPECT_EQ(t.site(), 1);
    EXPECT_NEAR(t.transition_matrix()(1, 0), 0.1, 1e-15);
    SiteChannel k = parse_channel_json(
        R"({"site": 0, "kind": "kraus", "kraus": [[[1, 0], [0, 0], [0, 0], [1, 0]]]})", 2);
    EXPECT_TRUE(is_unital(k));
    EXPECT_THROW(parse_channel_spec_json(R"({"kind": "teleport"})"), Error);
    EXPECT_THROW(parse_channel_spec_json(R"({"kind": "bitflip", "prob": 0.1})"), Error);
    EXPECT_THROW(parse_channel_json(R"({"kind": "bitflip", "p": 0.1})", 2), Error);
}

TEST(Io, CurveCsvHasFixedHeader) {
    DecayCurve c;
    c.points = {{0.5, 1, 0.25}, {std::numeric_limits<double>::infinity(), 2, 1.0}};
    EXPECT_EQ(curve_to_csv(c), "beta,distance,cmi_bits\n0.5,1,0.25\ninf,2,1\n");
}

TEST(Io, CertificateJsonIsDeterministic) {
    ModelInstance inst = builtin_instance("ising_chain_n4", ChannelSpec{"dephasing", 0.2});
    CertificateReport a = derivative_norm_certificate(inst.h, 0.05, inst.layer, 3);
    CertificateReport b = derivative_norm_certificate(inst.h, 0.05, inst.layer, 3);
    const std::string ja = certificate_to_json(a);
    EXPECT_EQ(ja, certificate_to_json(b));
    EXPECT_NE(ja.find("\"entries\""), std::string::npos);
}

}  // namespace
}  // namespace cmilab
