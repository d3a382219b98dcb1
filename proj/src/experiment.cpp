// Copyright 2026 The utomo Authors
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

#include "utomo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace utomo {

using json = nlohmann::json;

namespace {

const std::vector<std::string> kConfigKeys = {
    "experiment", "dims",   "eps",        "eta",     "trials",   "seed",     "out",       "workers",
    "c_state",    "c_pe",   "c_cc",       "eps0_ratio", "boost_c", "base_eps", "power_base"};

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw InvariantError(std::string("config: ") + name + " must be positive");
    }
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"state-tomo", "base-tomo", "bootstrap",
                                                   "eigenphase", "identify",  "gadget-verify"};
    return names;
}

void ExperimentConfig::validate() const {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end()) {
        throw InvariantError("config: unknown experiment '" + experiment + "'");
    }
    if (dims.empty() || eps.empty()) {
        throw InvariantError("config: dims and eps must be nonempty");
    }
    for (int d : dims) {
        if (d < 1) {
            throw InvariantError("config: dimensions must be positive");
        }
    }
    for (double e : eps) {
        require_positive(e, "eps");
    }
    if (!(eta > 0) || !(eta < 1)) {
        throw InvariantError("config: eta must lie in (0, 1)");
    }
    if (trials < 1 || workers < 1) {
        throw InvariantError("config: trials and workers must be positive");
    }
    require_positive(c_state, "c_state");
    require_positive(c_pe, "c_pe");
    require_positive(c_cc, "c_cc");
    require_positive(eps0_ratio, "eps0_ratio");
    require_positive(boost_c, "boost_c");
    require_positive(base_eps, "base_eps");
    if (power_base < 2) {
        throw InvariantError("config: power_base must be at least 2");
    }
}

BaseConfig ExperimentConfig::base_config() const {
    BaseConfig bc;
    bc.c_state = c_state;
    bc.eps0_ratio = eps0_ratio;
    bc.boost_c = boost_c;
    return bc;
}

EigenphaseConfig ExperimentConfig::eigenphase_config() const {
    EigenphaseConfig ec;
    ec.c_pe = c_pe;
    ec.c_cc = c_cc;
    return ec;
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvariantError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvariantError("config: top level must be an object");
    }
    for (const auto& item : j.items()) {
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), item.key()) == kConfigKeys.end()) {
            throw InvariantError("config: unknown key '" + item.key() + "'");
        }
    }
    ExperimentConfig c;
    try {
        c.experiment = j.value("experiment", c.experiment);
        c.dims = j.value("dims", c.dims);
        c.eps = j.value("eps", c.eps);
        c.eta = j.value("eta", c.eta);
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", c.out);
        c.workers = j.value("workers", c.workers);
        c.c_state = j.value("c_state", c.c_state);
        c.c_pe = j.value("c_pe", c.c_pe);
        c.c_cc = j.value("c_cc", c.c_cc);
        c.eps0_ratio = j.value("eps0_ratio", c.eps0_ratio);
        c.boost_c = j.value("boost_c", c.boost_c);
        c.base_eps = j.value("base_eps", c.base_eps);
        c.power_base = j.value("power_base", c.power_base);
    } catch (const json::exception& e) {
        throw InvariantError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return config_from_json(ss.str());
    } catch (const Error& e) {
        throw InvariantError(path + ": " + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& c) {
    json j = {{"experiment", c.experiment}, {"dims", c.dims},       {"eps", c.eps},
              {"eta", c.eta},               {"trials", c.trials},   {"seed", c.seed},
              {"out", c.out},               {"workers", c.workers}, {"c_state", c.c_state},
              {"c_pe", c.c_pe},             {"c_cc", c.c_cc},       {"eps0_ratio", c.eps0_ratio},
              {"boost_c", c.boost_c},       {"base_eps", c.base_eps}, {"power_base", c.power_base}};
    return j.dump(2);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, int d, double eps, int trial) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ static_cast<std::uint64_t>(d));
    s = splitmix64(s ^ std::bit_cast<std::uint64_t>(eps));
    return splitmix64(s ^ static_cast<std::uint64_t>(trial));
}

namespace {

void fill_unitary_distances(ExperimentRecord& r, const UnitaryMatrix& truth, const UnitaryMatrix& estimate) {
    r.dist_diamond = diamond_norm(truth, estimate);
    r.dist_lie = lie_dist(truth, estimate);
    r.pudist = pudist(truth, estimate);
    r.ent_infid = ent_infidelity(truth, estimate);
}

void fill_failure(ExperimentRecord& r) {
    r.dist_diamond = 2.0;
    r.dist_lie = kPi;
    r.pudist = 2.0;
    r.ent_infid = 1.0;
    r.success = false;
}

void run_state_tomo(const ExperimentConfig& c, ExperimentRecord& r, QueryOracle& oracle, const UnitaryMatrix& z,
                    Rng& rng) {
    UnitaryAccess access(oracle);
    StatePrep prep{&access, UnitaryMatrix::identity(r.d), 0};
    StateEstimate est = estimate_state(prep, r.eps, rng, c.c_state);
    const double infid = state_infidelity(z.matrix().col(0), est.vector);
    r.ent_infid = infid;
    r.pudist = std::sqrt(infid);
    r.dist_lie = std::asin(std::min(1.0, std::sqrt(infid)));
    r.dist_diamond = 2.0 * std::sqrt(infid);
    r.success = infid <= r.eps;
}

void run_eigenphase(const ExperimentConfig& c, ExperimentRecord& r, const UnitaryMatrix& z, Rng& rng) {
    EigenphaseSimulator sim(z);
    EigenphaseResult res = estimate_eigenphases(sim, r.eps, rng, c.eigenphase_config());
    const double dh = hausdorff_phase_dist(PhaseSet(eig_unitary(z).phases), res.estimate);
    r.queries = res.queries;
    r.dist_lie = dh;
    r.success = dh <= r.eps;
}

void run_gadget(ExperimentRecord& r, Rng& rng) {
    UnitaryMatrix refl = sample_reflection(std::max(2, r.d), rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double alpha = 1.0 - unit(rng);
    const GadgetSign sign = unit(rng) < 0.5 ? GadgetSign::kPlus : GadgetSign::kMinus;
    Vector psi = haar_random_vector(refl.dim(), rng);
    GadgetResult g = gadget_apply(refl, alpha, sign, psi);
    const double a = sign == GadgetSign::kPlus ? alpha : -alpha;
    const double err = (g.postselected - g.nu * (frac_reflection(refl, a).matrix() * psi)).norm();
    r.queries = 1;
    r.dist_diamond = r.dist_lie = r.pudist = r.ent_infid = err;
    r.success = err <= 1e-10;
}

}  // namespace

ExperimentRecord run_trial(const ExperimentConfig& c, int d, double eps, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRecord r;
    r.experiment = c.experiment;
    r.d = d;
    r.eps = eps;
    r.eta = c.eta;
    r.seed = seed;

    Rng rng(seed);
    const std::uint64_t oracle_seed = rng();
    const BaseConfig bc = c.base_config();

    try {
        if (c.experiment == "gadget-verify") {
            run_gadget(r, rng);
        } else if (c.experiment == "identify") {
            ReflectionNet net = d == 2 ? build_net_from(pauli_reflections(), 0.25)
                                       : build_net(d, 0.25, 8, 10000, rng);
            std::uniform_int_distribution<size_t> pick(0, net.elements.size() - 1);
            const size_t hidden = pick(rng);
            const int n = identification_power(eps);
            const UnitaryMatrix& refl = net.elements[hidden];
            QueryOracle oracle(frac_reflection(refl, 1.0 / n), oracle_seed);
            try {
                IdentifyResult id = identify_via_powering(
                    oracle, net, eps, c.eta, bootstrap_estimator(tomography_base(c.base_eps, bc)), rng);
                fill_unitary_distances(r, refl, id.powered);
                r.success = id.nearest.index == hidden;
            } catch (const Error&) {
                fill_failure(r);
            }
            r.queries = oracle.queries_used();
        } else {
            UnitaryMatrix z = haar_random(d, rng);
            if (c.experiment == "eigenphase") {
                run_eigenphase(c, r, z, rng);
            } else {
                QueryOracle oracle(z, oracle_seed);
                try {
                    if (c.experiment == "state-tomo") {
                        run_state_tomo(c, r, oracle, z, rng);
                    } else if (c.experiment == "base-tomo") {
                        UnitaryAccess access(oracle);
                        BaseResult res = base_estimate(access, eps, c.eta, rng, bc);
                        fill_unitary_distances(r, z, res.estimate);
                        r.success = r.pudist <= eps;
                    } else {
                        BootstrapOptions opts;
                        opts.power_base = c.power_base;
                        BootstrapTrace trace = bootstrap(oracle, eps, c.eta, tomography_base(c.base_eps, bc), rng, opts);
                        fill_unitary_distances(r, z, trace.final_estimate);
                        r.success = r.dist_lie <= eps;
                    }
                } catch (const Error&) {
                    fill_failure(r);
                }
                r.queries = oracle.queries_used();
            }
        }
    } catch (const Error&) {
        fill_failure(r);
    }
    r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    struct Job {
        int d;
        double eps;
        int trial;
    };
    std::vector<Job> jobs;
    for (int d : config.dims) {
        for (double e : config.eps) {
            for (int t = 0; t < config.trials; ++t) {
                jobs.push_back({d, e, t});
            }
        }
    }
    std::vector<ExperimentRecord> records(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            records[i] = run_trial(config, job.d, job.eps, derive_seed(config.seed, job.d, job.eps, job.trial));
        }
    };
    const int n = std::min<int>(config.workers, static_cast<int>(jobs.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return records;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.experiment << ',' << r.d << ',' << fmt(r.eps) << ',' << fmt(r.eta) << ',' << r.seed << ','
           << r.queries << ',' << fmt(r.dist_diamond) << ',' << fmt(r.dist_lie) << ',' << fmt(r.pudist) << ','
           << fmt(r.ent_infid) << ',' << (r.success ? 1 : 0) << ',' << r.wall_ms << '\n';
    }
}

void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    write_csv(out, records);
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

std::vector<ExperimentRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw InvariantError(path + ": unexpected CSV header");
    }
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 12) {
            throw InvariantError(path + ": malformed row");
        }
        ExperimentRecord r;
        r.experiment = f[0];
        r.d = std::stoi(f[1]);
        r.eps = std::stod(f[2]);
        r.eta = std::stod(f[3]);
        r.seed = std::stoull(f[4]);
        r.queries = std::stoll(f[5]);
        r.dist_diamond = std::stod(f[6]);
        r.dist_lie = std::stod(f[7]);
        r.pudist = std::stod(f[8]);
        r.ent_infid = std::stod(f[9]);
        r.success = f[10] == "1";
        r.wall_ms = std::stoll(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string summarize(const std::vector<ExperimentRecord>& records) {
    if (records.empty()) {
        throw InsufficientData("summarize: no records");
    }
    std::map<std::pair<std::string, int>, std::map<double, std::vector<const ExperimentRecord*>>> groups;
    for (const auto& r : records) {
        groups[{r.experiment, r.d}][r.eps].push_back(&r);
    }
    json doc = json::array();
    for (const auto& [key, cells] : groups) {
        json g;
        g["experiment"] = key.first;
        g["d"] = key.second;
        json jc = json::array();
        std::vector<ScalingPoint> points;
        for (const auto& [eps, recs] : cells) {
            std::vector<double> q, lie, pu, dia;
            int ok = 0;
            for (const auto* r : recs) {
                q.push_back(static_cast<double>(r->queries));
                lie.push_back(r->dist_lie);
                pu.push_back(r->pudist);
                dia.push_back(r->dist_diamond);
                ok += r->success ? 1 : 0;
                points.push_back({eps, static_cast<double>(r->queries)});
            }
            jc.push_back({{"eps", eps},
                          {"trials", recs.size()},
                          {"successes", ok},
                          {"success_rate", static_cast<double>(ok) / static_cast<double>(recs.size())},
                          {"median_queries", median_of(q)},
                          {"median_dist_lie", median_of(lie)},
                          {"median_pudist", median_of(pu)},
                          {"median_dist_diamond", median_of(dia)}});
        }
        g["cells"] = jc;
        try {
            g["slope"] = heisenberg_slope(points);
        } catch (const Error&) {
            g["slope"] = nullptr;
        }
        doc.push_back(g);
    }
    return json({{"groups", doc}}).dump(2);
}

void write_outputs(const std::string& dir, const std::vector<ExperimentRecord>& records) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + dir + "': " + ec.message());
    }
    write_csv((std::filesystem::path(dir) / "results.csv").string(), records);
    std::ofstream js(std::filesystem::path(dir) / "summary.json");
    if (!js) {
        throw Error("cannot write '" + dir + "/summary.json'");
    }
    js << summarize(records) << '\n';
}

}  // namespace utomo
