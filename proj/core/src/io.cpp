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

#include "cmilab/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "io_json.hpp"

namespace cmilab {

namespace {

void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &what) {
    if (!j.is_object()) throw Error(what + " must be a JSON object");
    for (const auto &item : j.items()) {
        if (!allowed.count(item.key())) throw Error("unknown key '" + item.key() + "' in " + what);
    }
}

json parse_text(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error("invalid JSON in " + what + ": " + e.what());
    }
}

Complex parse_complex(const json &v) {
    if (v.is_number()) return Complex(v.get<double>(), 0);
    if (v.is_array() && v.size() == 2) return Complex(v[0].get<double>(), v[1].get<double>());
    throw Error("complex entries must be numbers or [re, im] pairs");
}

Matrix parse_operator(const json &op) {
    if (!op.is_array() || op.empty()) throw Error("Kraus operator must be a nonempty array");
    const bool rows = op[0].is_array() && !op[0].empty() && op[0][0].is_array();
    std::vector<Complex> flat;
    std::size_t q = 0;
    if (rows) {
        q = op.size();
        for (const auto &row : op) {
            if (!row.is_array() || row.size() != q) throw Error("Kraus operator rows must form a square matrix");
            for (const auto &v : row) flat.push_back(parse_complex(v));
        }
    } else {
        for (const auto &v : op) flat.push_back(parse_complex(v));
        q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
        if (q * q != flat.size()) throw Error("flat Kraus operator needs q^2 entries");
    }
    Matrix m(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) m(i, j) = flat[i * q + j];
    return m;
}

ChannelSpec spec_from_json(const json &j) {
    reject_unknown(j, {"site", "kind", "p", "matrix", "kraus"}, "channel spec");
    ChannelSpec spec;
    if (!j.contains("kind")) throw Error("channel spec needs a 'kind'");
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("p")) spec.p = j.at("p").get<double>();
    if (j.contains("matrix")) {
        const json &m = j.at("matrix");
        const std::size_t q = m.size();
        spec.matrix = RealMatrix(q, q);
        for (std::size_t i = 0; i < q; ++i) {
            if (m[i].size() != q) throw Error("transition matrix must be square");
            for (std::size_t k = 0; k < q; ++k) spec.matrix(i, k) = m[i][k].get<double>();
        }
    }
    if (j.contains("kraus")) {
        for (const auto &op : j.at("kraus")) spec.kraus.push_back(parse_operator(op));
    }
    static const std::set<std::string> kinds = {"identity", "dephasing", "bitflip", "depolarizing",
                                                "amplitude_damping", "transition", "kraus", "parity"};
    if (!kinds.count(spec.kind)) throw Error("unknown channel kind '" + spec.kind + "'");
    if ((spec.kind == "transition") != (spec.matrix.size() > 0)) {
        throw Error("'matrix' is required for, and only for, transition channels");
    }
    if ((spec.kind == "kraus") != !spec.kraus.empty()) {
        throw Error("'kraus' is required for, and only for, Kraus channels");
    }
    return spec;
}

void write_json(std::ostringstream &out, const json &j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto &item : j.items()) {
                if (!first) out << ",\n";
                first = false;
                out << pad << json(item.key()).dump() << ": ";
                write_json(out, item.value(), indent, depth + 1);
            }
            out << "\n" << close_pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ",\n";
                out << pad;
                write_json(out, j[i], indent, depth + 1);
            }
            out << "\n" << close_pad << "]";
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (std::isfinite(v)) {
                out << format_double(v);
            } else {
                // JSON has no infinities; keep them readable and parseable as strings.
                out << '"' << format_double(v) << '"';
            }
            return;
        }
        default:
            out << j.dump();
    }
}

}  // namespace

std::string dump_json(const json &j) {
    std::ostringstream out;
    write_json(out, j, 2, 0);
    out << "\n";
    return out.str();
}

double json_to_beta(const json &v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw Error("beta strings must be \"inf\"");
    }
    if (!v.is_number()) throw Error("beta values must be numbers or \"inf\"");
    double b = v.get<double>();
    if (!(b >= 0)) throw Error("beta values must be nonnegative");
    return b;
}

json beta_to_json(double beta) {
    if (std::isinf(beta)) return "inf";
    return beta;
}

LocalHamiltonian model_from_json(const json &j) {
    reject_unknown(j, {"q", "n_sites", "terms", "edges"}, "model");
    if (!j.contains("n_sites") || !j.contains("terms")) throw Error("model needs 'n_sites' and 'terms'");
    const int n = j.at("n_sites").get<int>();
    const int q = j.value("q", 2);
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) edges = j.at("edges").get<std::vector<std::pair<int, int>>>();
    std::vector<HamiltonianTerm> terms;
    for (const auto &t : j.at("terms")) {
        reject_unknown(t, {"support", "pauli", "diag", "lambda"}, "term");
        if (!t.contains("support") || !t.contains("lambda")) throw Error("term needs 'support' and 'lambda'");
        auto support = t.at("support").get<std::vector<int>>();
        const double lambda = t.at("lambda").get<double>();
        if (t.contains("pauli") == t.contains("diag")) throw Error("term needs exactly one of 'pauli' and 'diag'");
        if (t.contains("pauli")) {
            std::string ops = t.at("pauli").get<std::string>();
            int sign = 1;
            if (!ops.empty() && (ops[0] == '-' || ops[0] == '+')) {
                sign = ops[0] == '-' ? -1 : 1;
                ops.erase(0, 1);
            }
            if (ops.size() == static_cast<std::size_t>(n) && support.size() != ops.size()) {
                // A full-length string: letters per site, support checked against it.
                PauliString p = PauliString::parse(ops);
                if (sign < 0) p = -p;
                if (p.support() != normalize_sites(support, n)) throw Error("Pauli string does not match its support");
                terms.push_back(HamiltonianTerm::pauli(p, lambda));
            } else {
                terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n, ops, support, sign), lambda));
            }
        } else {
            terms.push_back(HamiltonianTerm::diagonal(support, t.at("diag").get<std::vector<double>>(), q, lambda));
        }
    }
    return LocalHamiltonian(SiteGraph(n, q, edges), terms);
}

json model_json(const LocalHamiltonian &h) {
    json j;
    j["q"] = h.local_dim();
    j["n_sites"] = h.n_sites();
    json terms = json::array();
    for (const auto &t : h.terms()) {
        json tj;
        tj["support"] = t.support();
        if (t.is_pauli()) {
            std::string ops;
            for (int s : t.support()) ops += t.pauli_op().op(s);
            tj["pauli"] = (t.pauli_op().sign() < 0 ? "-" : "") + ops;
        } else {
            tj["diag"] = t.table();
        }
        tj["lambda"] = t.lambda();
        terms.push_back(tj);
    }
    j["terms"] = terms;
    return j;
}

ChannelSpec channel_spec_from_json(const json &j) { return spec_from_json(j); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LocalHamiltonian parse_model_json(const std::string &text) { return model_from_json(parse_text(text, "model")); }

std::string model_to_json(const LocalHamiltonian &h) { return dump_json(model_json(h)); }

ChannelSpec parse_channel_spec_json(const std::string &text) {
    return spec_from_json(parse_text(text, "channel spec"));
}

SiteChannel parse_channel_json(const std::string &text, int q) {
    json j = parse_text(text, "channel");
    ChannelSpec spec = spec_from_json(j);
    if (!j.contains("site")) throw Error("channel needs a 'site'");
    auto c = make_channel(spec, j.at("site").get<int>(), q);
    if (!c) return SiteChannel::transition(j.at("site").get<int>(), RealMatrix::Identity(q, q));
    return *c;
}

json certificate_json(const CertificateReport &r) {
    json j;
    j["name"] = r.name;
    j["beta"] = r.beta;
    j["degree"] = r.degree;
    j["beta_c"] = r.beta_c;
    j["max_weight"] = r.max_weight;
    j["commutation_verdict"] = r.commutation_verdict;
    j["max_vanishing_norm"] = r.max_vanishing_norm;
    j["constant_term_error"] = r.constant_term_error;
    j["violations"] = r.violations;
    json entries = json::array();
    for (const auto &e : r.entries) {
        json ej;
        ej["kind"] = e.kind;
        json terms = json::array(), mult = json::array();
        for (auto [t, mu] : e.cluster.entries()) {
            terms.push_back(t);
            mult.push_back(mu);
        }
        ej["terms"] = terms;
        ej["multiplicities"] = mult;
        ej["weight"] = e.cluster.weight();
        ej["norm"] = e.norm;
        ej["bound"] = e.bound;
        ej["pass"] = e.pass;
        entries.push_back(ej);
    }
    j["entries"] = entries;
    return j;
}

std::string certificate_to_json(const CertificateReport &report) { return dump_json(certificate_json(report)); }

std::string curve_to_csv(const DecayCurve &curve) {
    std::string out = "beta,distance,cmi_bits\n";
    for (const auto &p : curve.points) {
        out += format_double(p.beta) + "," + std::to_string(p.distance) + "," + format_double(p.cmi) + "\n";
    }
    return out;
}

}  // namespace cmilab
