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

#include "cmilab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cmilab/classical.hpp"
#include "cmilab/combinatorics.hpp"
#include "cmilab/dense.hpp"
#include "cmilab/experiments.hpp"
#include "cmilab/io.hpp"
#include "cmilab/pauli_engine.hpp"
#include "io_json.hpp"

namespace cmilab {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kExperiments = {"decay_curve",         "cmi",
                                            "certificates",        "pinned_certificates",
                                            "cluster_equivalence", "theorem3_bound",
                                            "low_temperature_demo", "combinatorics"};
const std::set<std::string> kKeys = {"experiment", "model", "beta",       "channel", "distances", "engine",
                                     "output",     "partition", "max_weight", "n",       "k",         "q"};
const std::set<std::string> kFamilies = {"ising_chain", "parity_chain", "bell_chain", "cluster_chain"};

std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read '" + p.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path &p, const std::string &text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << text;
}

void apply_override(json &cfg, const std::string &text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("override '" + text + "' must look like key=value");
    const std::string key = text.substr(0, eq);
    const std::string raw = text.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error &) {
        value = raw;
    }
    json *node = &cfg;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        if (!(*node)[part].is_object()) (*node)[part] = json::object();
        node = &(*node)[part];
        start = dot + 1;
    }
}

struct Loaded {
    json config;
    fs::path base_dir;
};

Loaded load(const std::string &path, const std::vector<std::string> &overrides) {
    Loaded l;
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw Error("invalid JSON in '" + path + "': " + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("artifact")) {
        j = j.at("config");
    }
    for (const auto &o : overrides) apply_override(j, o);
    l.config = std::move(j);
    l.base_dir = fs::path(path).parent_path();
    return l;
}

std::vector<std::string> schema_findings(const json &cfg) {
    std::vector<std::string> f;
    if (!cfg.is_object()) return {"config must be a JSON object"};
    for (const auto &item : cfg.items()) {
        if (!kKeys.count(item.key())) f.push_back("unknown key '" + item.key() + "'");
    }
    if (!cfg.contains("experiment")) {
        f.push_back("missing key 'experiment'");
        return f;
    }
    const std::string exp = cfg.at("experiment").is_string() ? cfg.at("experiment").get<std::string>() : "";
    if (!kExperiments.count(exp)) {
        f.push_back("unknown experiment '" + cfg.at("experiment").dump() + "'");
        return f;
    }
    auto need = [&](const char *key) {
        if (!cfg.contains(key)) f.push_back("experiment '" + exp + "' needs key '" + key + "'");
    };
    if (exp == "theorem3_bound") {
        need("k");
        need("q");
    } else if (exp == "cluster_equivalence") {
        need("n");
        need("beta");
    } else if (exp == "combinatorics") {
        need("model");
        need("max_weight");
    } else {
        need("model");
        need("beta");
        if (exp == "decay_curve" || exp == "low_temperature_demo") need("distances");
        if (exp == "certificates" || exp == "pinned_certificates") need("max_weight");
    }
    if (cfg.contains("engine")) {
        try {
            parse_engine(cfg.at("engine").get<std::string>());
        } catch (const std::exception &e) {
            f.push_back(e.what());
        }
    }
    return f;
}

std::vector<double> betas_of(const json &cfg) {
    std::vector<double> out;
    const json &b = cfg.at("beta");
    if (b.is_array()) {
        for (const auto &v : b) out.push_back(json_to_beta(v));
    } else {
        out.push_back(json_to_beta(b));
    }
    if (out.empty()) throw Error("'beta' must list at least one value");
    return out;
}

std::vector<int> ints_of(const json &v, const char *name) {
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) throw Error(std::string("'") + name + "' must be an integer or a list of integers");
    return v.get<std::vector<int>>();
}

// Inlines a model file so that the resolved config is self-contained.
json resolve(json cfg, const fs::path &base) {
    const std::string exp = cfg.at("experiment").get<std::string>();
    if (cfg.contains("model") && cfg.at("model").is_string()) {
        const std::string m = cfg.at("model").get<std::string>();
        const bool family_ok = exp == "decay_curve" || exp == "low_temperature_demo";
        if (!is_builtin_id(m) && !(family_ok && kFamilies.count(m))) {
            fs::path p = fs::path(m).is_absolute() ? fs::path(m) : base / m;
            cfg["model"] = json::parse(read_file(p));
        }
    }
    if (!cfg.contains("output")) cfg["output"] = exp;
    if (!cfg.contains("engine") && exp != "theorem3_bound" && exp != "combinatorics") {
        cfg["engine"] = exp == "cluster_equivalence" ? "dense" : "classical";
    }
    if (!cfg.contains("channel")) cfg["channel"] = nullptr;
    return cfg;
}

std::optional<ChannelSpec> bulk_spec(const json &cfg) {
    const json &c = cfg.at("channel");
    if (c.is_null() || c.is_array()) return std::nullopt;
    return channel_spec_from_json(c);
}

ModelInstance instance_of(const json &cfg) {
    const json &m = cfg.at("model");
    ModelInstance inst;
    if (m.is_string()) {
        inst = builtin_instance(m.get<std::string>(), bulk_spec(cfg));
    } else {
        json model = m;
        json part;
        if (model.contains("partition")) {
            part = model.at("partition");
            model.erase("partition");
        } else if (cfg.contains("partition")) {
            part = cfg.at("partition");
        } else {
            throw Error("a model file needs a 'partition' with keys A, B, C");
        }
        inst.id = "custom";
        inst.h = model_from_json(model);
        inst.partition = Partition(part.at("A").get<SiteSet>(), part.value("B", SiteSet{}), part.at("C").get<SiteSet>(),
                                   inst.h.n_sites());
        if (auto spec = bulk_spec(cfg)) {
            inst.layer = make_layer(*spec, inst.partition.b, inst.h.local_dim());
        } else {
            inst.layer = ChannelLayer({}, inst.partition.b);
        }
        TermDistance d = graph_distance(inst.h, inst.partition);
        inst.distance = d.is_infinite() ? 0 : static_cast<int>(d.value());
    }
    if (cfg.at("channel").is_array()) {
        ChannelLayer layer;
        for (const auto &c : cfg.at("channel")) {
            ChannelSpec spec = channel_spec_from_json(c);
            if (!c.contains("site")) throw Error("channel lists need a 'site' on every entry");
            if (auto ch = make_channel(spec, c.at("site").get<int>(), inst.h.local_dim())) layer.set(*ch);
        }
        inst.layer = layer;
    }
    return inst;
}

json fits_json(const DecayCurve &curve, const std::vector<double> &betas) {
    json fits = json::array();
    for (double b : betas) {
        json f;
        f["beta"] = beta_to_json(b);
        try {
            MarkovLengthFit fit = fit_markov_length(curve.series(b));
            f["xi"] = fit.xi;
            f["slope"] = fit.slope;
            f["intercept"] = fit.intercept;
            f["r_squared"] = fit.r_squared;
            f["used"] = fit.used;
            f["censored"] = fit.censored;
            f["divergent"] = fit.divergent;
        } catch (const Error &e) {
            f["fit_error"] = e.what();
        }
        fits.push_back(f);
    }
    return fits;
}

json points_json(const DecayCurve &curve) {
    json pts = json::array();
    for (const auto &p : curve.points) {
        json j;
        j["beta"] = beta_to_json(p.beta);
        j["distance"] = p.distance;
        j["cmi_bits"] = p.cmi;
        pts.push_back(j);
    }
    return pts;
}

struct Result {
    json results;
    std::string csv;
    bool violation = false;
};

std::vector<std::vector<int>> all_outcomes(int count, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> y(count, 0);
    while (true) {
        out.push_back(y);
        int i = count - 1;
        while (i >= 0 && ++y[i] == q) y[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

Result execute(const json &cfg, int threads) {
    const std::string exp = cfg.at("experiment").get<std::string>();
    Result r;
    r.results["experiment"] = exp;
    if (exp == "decay_curve" || exp == "low_temperature_demo") {
        const std::string family = cfg.at("model").get<std::string>();
        if (!kFamilies.count(family)) throw Error("'" + exp + "' needs a chain family as 'model'");
        const auto betas = betas_of(cfg);
        const auto distances = ints_of(cfg.at("distances"), "distances");
        DecayCurve curve = exp == "decay_curve"
                               ? decay_curve(family, distances, betas, parse_engine(cfg.at("engine")), bulk_spec(cfg),
                                             threads)
                               : low_temperature_chain_demo(family, distances, betas, threads);
        r.results["family"] = family;
        r.results["engine"] = curve.engine;
        r.results["points"] = points_json(curve);
        r.results["fits"] = fits_json(curve, betas);
        r.csv = curve_to_csv(curve);
    } else if (exp == "cmi") {
        const ModelInstance inst = instance_of(cfg);
        const Engine engine = parse_engine(cfg.at("engine"));
        DecayCurve curve;
        curve.family = inst.id;
        curve.engine = engine_name(engine);
        for (double b : betas_of(cfg)) curve.points.push_back({b, inst.distance, instance_cmi(inst, b, engine)});
        r.results["model"] = inst.id;
        r.results["engine"] = curve.engine;
        r.results["points"] = points_json(curve);
        r.csv = curve_to_csv(curve);
    } else if (exp == "certificates" || exp == "pinned_certificates") {
        const ModelInstance inst = instance_of(cfg);
        const int w = cfg.at("max_weight").get<int>();
        json reports = json::array();
        for (double b : betas_of(cfg)) {
            if (exp == "certificates") {
                CertificateReport rep = derivative_norm_certificate(inst.h, b, inst.layer, w);
                r.violation = r.violation || !rep.passed();
                reports.push_back(certificate_json(rep));
            } else {
                const SiteSet y_sites = inst.layer.channel_sites();
                if (y_sites.size() > 8) throw CapError("pinned certificates enumerate at most 8 pinned sites");
                for (const auto &y : all_outcomes(static_cast<int>(y_sites.size()), inst.h.local_dim())) {
                    CertificateReport rep = pinned_series_check(inst.h, b, inst.layer, y, w);
                    r.violation = r.violation || !rep.passed();
                    json j = certificate_json(rep);
                    j["outcome"] = y;
                    reports.push_back(j);
                }
            }
        }
        r.results["model"] = inst.id;
        r.results["reports"] = reports;
    } else if (exp == "cluster_equivalence") {
        const Engine engine = parse_engine(cfg.at("engine"));
        json reports = json::array();
        for (int n : ints_of(cfg.at("n"), "n")) {
            for (double b : betas_of(cfg)) {
                EquivalenceReport rep = cluster_gibbs_equivalence(n, b, engine);
                r.violation = r.violation || !rep.pass;
                json j;
                j["n"] = rep.n;
                j["beta"] = beta_to_json(rep.beta);
                j["p"] = rep.p;
                j["engine"] = rep.engine;
                j["deviation"] = rep.deviation;
                j["pass"] = rep.pass;
                reports.push_back(j);
            }
        }
        r.results["reports"] = reports;
    } else if (exp == "theorem3_bound") {
        const int k = cfg.at("k").get<int>();
        json rows = json::array();
        std::vector<double> qs;
        if (cfg.at("q").is_array()) {
            qs = cfg.at("q").get<std::vector<double>>();
        } else {
            qs.push_back(cfg.at("q").get<double>());
        }
        for (double q : qs) {
            json j;
            j["k"] = k;
            j["q"] = q;
            j["bound_bits"] = theorem3_bound(k, q);
            j["label"] = "proof-constant bound";
            rows.push_back(j);
        }
        r.results["rows"] = rows;
    } else if (exp == "combinatorics") {
        const ModelInstance inst = instance_of(cfg);
        const int w = cfg.at("max_weight").get<int>();
        const DualInteractionGraph g = build_dual_graph(inst.h);
        json counts = json::array();
        for (const ClusterCount &c : anchored_cluster_counts(g, inst.h.n_sites(), w)) {
            r.violation = r.violation || !c.pass;
            json j;
            j["site"] = c.site;
            j["weight"] = c.weight;
            j["count"] = c.count;
            j["bound"] = c.bound;
            j["pass"] = c.pass;
            counts.push_back(j);
        }
        json chain = json::array();
        for (const Cluster &cl : enumerate_connected_clusters(g, std::min(w, 7))) {
            CombinatorialEstimate est = verify_combinatorial_estimate(cl, g);
            r.violation = r.violation || !est.pass;
            json j;
            j["cluster"] = cl.str();
            j["left"] = est.left.str();
            j["tree_term"] = est.tree_term.str();
            j["degree_term"] = est.degree_term.str();
            j["right"] = est.right;
            j["pass"] = est.pass;
            chain.push_back(j);
        }
        r.results["model"] = inst.id;
        r.results["degree"] = g.degree;
        r.results["anchored_counts"] = counts;
        r.results["estimate_chain"] = chain;
    }
    r.results["violation"] = r.violation;
    return r;
}

json caps_json() {
    json c;
    c["max_configs"] = classical_config_cap();
    c["max_dense_dim"] = dense_dim_cap();
    c["max_pauli_terms"] = pauli_term_cap();
    c["max_pauli_rank"] = pauli_rank_cap();
    return c;
}

}  // namespace

const char *artifact_version() { return "0.1.0"; }

RunOutcome run_experiment(const std::string &config_path, const RunOptions &options) {
    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double>(b - a).count();
    };
    const auto t0 = clock::now();
    Loaded loaded = load(config_path, options.overrides);
    auto findings = schema_findings(loaded.config);
    if (!findings.empty()) {
        std::string msg = "invalid config:";
        for (const auto &f : findings) msg += "\n  " + f;
        throw Error(msg);
    }
    json cfg = resolve(loaded.config, loaded.base_dir);
    const int threads = options.threads > 0 ? options.threads
                                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto t1 = clock::now();
    Result result = execute(cfg, threads);
    const auto t2 = clock::now();

    const fs::path prefix = fs::path(options.output_dir) / cfg.at("output").get<std::string>();
    RunOutcome out;
    if (!result.csv.empty()) {
        fs::path csv = prefix.string() + ".csv";
        write_file(csv, result.csv);
        out.written.push_back(csv.string());
    }
    fs::path res = prefix.string() + ".json";
    write_file(res, dump_json(result.results));
    out.written.push_back(res.string());

    json manifest;
    manifest["artifact"] = "cmilab";
    manifest["version"] = artifact_version();
    manifest["config"] = cfg;
    manifest["caps"] = caps_json();
    manifest["threads"] = threads;
    json timings;
    timings["resolve"] = seconds(t0, t1);
    timings["compute"] = seconds(t1, t2);
    manifest["timings_seconds"] = timings;
    fs::path man = prefix.string() + ".manifest.json";
    write_file(man, dump_json(manifest));
    out.written.push_back(man.string());

    out.exit_code = result.violation ? kExitViolation : kExitOk;
    out.summary = cfg.at("experiment").get<std::string>() + (result.violation ? ": violations found" : ": ok");
    return out;
}

std::vector<std::string> validate_config(const std::string &config_path, const std::vector<std::string> &overrides) {
    std::vector<std::string> findings;
    Loaded loaded;
    try {
        loaded = load(config_path, overrides);
    } catch (const std::exception &e) {
        return {e.what()};
    }
    findings = schema_findings(loaded.config);
    if (!findings.empty()) return findings;
    try {
        json cfg = resolve(loaded.config, loaded.base_dir);
        const std::string exp = cfg.at("experiment").get<std::string>();
        if (cfg.contains("beta")) betas_of(cfg);
        if (cfg.contains("channel") && !cfg.at("channel").is_null()) {
            if (cfg.at("channel").is_array()) {
                for (const auto &c : cfg.at("channel")) channel_spec_from_json(c);
            } else {
                channel_spec_from_json(cfg.at("channel"));
            }
        }
        std::vector<ModelInstance> instances;
        if (exp == "decay_curve" || exp == "low_temperature_demo") {
            const std::string family = cfg.at("model").get<std::string>();
            if (!kFamilies.count(family)) return {"'" + exp + "' needs a chain family as 'model'"};
            for (int d : ints_of(cfg.at("distances"), "distances")) instances.push_back(family_instance(family, d, bulk_spec(cfg)));
        } else if (cfg.contains("model")) {
            instances.push_back(instance_of(cfg));
        }
        const std::string engine = cfg.contains("engine") ? cfg.at("engine").get<std::string>() : "";
        for (const auto &inst : instances) {
            const auto &h = inst.h;
            if (!verify_commuting(h)) {
                if (engine == "pauli") findings.push_back(inst.id + ": non-commuting Hamiltonian with engine=pauli");
            }
            if (engine == "pauli") {
                if (!h.all_pauli()) findings.push_back(inst.id + ": engine=pauli needs Pauli terms");
                if (h.size() > pauli_term_cap()) findings.push_back(inst.id + ": term count exceeds the Pauli term cap");
            }
            if (engine == "classical" && !h.all_diagonal()) {
                findings.push_back(inst.id + ": engine=classical needs diagonal terms");
            }
            const double configs = std::pow(static_cast<double>(h.local_dim()), h.n_sites());
            if (engine == "classical" && configs > static_cast<double>(classical_config_cap())) {
                findings.push_back(inst.id + ": q^n exceeds CMILAB_MAX_CONFIGS");
            }
            if (engine == "dense" && configs > static_cast<double>(dense_dim_cap())) {
                findings.push_back(inst.id + ": q^n exceeds CMILAB_MAX_DENSE_DIM");
            }
        }
    } catch (const std::exception &e) {
        findings.push_back(e.what());
    }
    return findings;
}

}  // namespace cmilab
