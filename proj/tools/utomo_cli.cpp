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

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utomo/experiment.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::vector<int> dims;
    std::vector<double> eps;
    std::optional<double> eta;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> workers;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--dim", f.dims, "Dimensions (comma list)")->delimiter(',');
    app->add_option("--eps", f.eps, "Accuracies (comma list)")->delimiter(',');
    app->add_option("--eta", f.eta, "Failure probability");
    app->add_option("--trials", f.trials, "Trials per cell");
    app->add_option("--seed", f.seed, "Master seed");
    app->add_option("--out", f.out, "Output directory");
    app->add_option("--workers", f.workers, "Concurrent trials");
}

utomo::ExperimentConfig resolve(const CommonFlags& f, const std::string& experiment) {
    utomo::ExperimentConfig c = f.config.empty() ? utomo::ExperimentConfig{} : utomo::load_config(f.config);
    if (f.config.empty() || experiment != "scaling") {
        c.experiment = experiment;
    }
    if (!f.dims.empty()) c.dims = f.dims;
    if (!f.eps.empty()) c.eps = f.eps;
    if (f.eta) c.eta = *f.eta;
    if (f.trials) c.trials = *f.trials;
    if (f.seed) c.seed = *f.seed;
    if (f.out) c.out = *f.out;
    if (f.workers) c.workers = *f.workers;
    return c;
}

void report(const std::vector<utomo::ExperimentRecord>& records, const std::string& out) {
    int ok = 0;
    for (const auto& r : records) {
        ok += r.success ? 1 : 0;
    }
    std::printf("%zu records, %d successes -> %s/results.csv\n", records.size(), ok, out.c_str());
}

int run_metrics_selftest(const CommonFlags& f) {
    std::vector<int> dims = f.dims.empty() ? std::vector<int>{2, 3, 4, 8} : f.dims;
    const int pairs = f.trials.value_or(1000);
    utomo::Rng rng(f.seed.value_or(1));
    int failures = 0;
    for (int d : dims) {
        int bad = 0;
        for (int i = 0; i < pairs; ++i) {
            utomo::UnitaryMatrix u = utomo::haar_random(d, rng);
            utomo::UnitaryMatrix v = utomo::haar_random(d, rng);
            const double pu = utomo::pudist(u, v);
            const double lie = utomo::lie_dist(u, v);
            const double dia = utomo::diamond_norm(u, v);
            const double f_bar = utomo::ent_infidelity(u, v);
            const double s = 1e-9;
            bool ok = pu <= lie + s && lie <= utomo::kPi / 2 * pu + s && dia / 2 <= pu + s && pu <= dia + s &&
                      4 * f_bar <= dia * dia + s && dia * dia <= 2 * d * f_bar + s;
            bad += ok ? 0 : 1;
        }
        std::printf("d=%d pairs=%d violations=%d\n", d, pairs, bad);
        failures += bad;
    }
    return failures == 0 ? 0 : 1;
}

int run_net_build(const CommonFlags& f, double sep, int size, std::int64_t attempts) {
    std::vector<int> dims = f.dims.empty() ? std::vector<int>{2} : f.dims;
    utomo::Rng rng(f.seed.value_or(1));
    for (int d : dims) {
        utomo::ReflectionNet net = utomo::build_net(d, sep, size, attempts, rng);
        std::printf("d=%d size=%zu separation=%.6g min_pairwise=%.6g attempts=%lld partial=%d\n", d,
                    net.elements.size(), sep, net.min_pairwise(), static_cast<long long>(net.attempts),
                    net.partial ? 1 : 0);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Query-optimal unitary estimation laboratory"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::vector<std::pair<CLI::App*, std::string>> experiments;
    for (const char* name : {"state-tomo", "base-tomo", "bootstrap", "eigenphase", "identify", "gadget-verify"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
        add_common(sub, flags);
        experiments.emplace_back(sub, name);
    }
    CLI::App* scaling = app.add_subcommand("scaling", "Bootstrap and base-tomography control over the eps grid");
    add_common(scaling, flags);
    CLI::App* selftest = app.add_subcommand("metrics-selftest", "Check metric inequality chains on Haar pairs");
    add_common(selftest, flags);
    CLI::App* net = app.add_subcommand("net-build", "Greedy reflection net");
    add_common(net, flags);
    double sep = 0.25;
    int size = 20;
    std::int64_t attempts = 10000;
    net->add_option("--sep", sep, "Pairwise diamond-norm separation");
    net->add_option("--size", size, "Target number of elements");
    net->add_option("--attempts", attempts, "Maximum candidate draws");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) {
            return run_metrics_selftest(flags);
        }
        if (net->parsed()) {
            return run_net_build(flags, sep, size, attempts);
        }
        if (scaling->parsed()) {
            utomo::ExperimentConfig c = resolve(flags, "scaling");
            std::vector<utomo::ExperimentRecord> all;
            for (const char* name : {"bootstrap", "base-tomo"}) {
                c.experiment = name;
                auto recs = utomo::run_experiment(c);
                all.insert(all.end(), recs.begin(), recs.end());
            }
            utomo::write_outputs(c.out, all);
            report(all, c.out);
            return 0;
        }
        for (const auto& [sub, name] : experiments) {
            if (sub->parsed()) {
                utomo::ExperimentConfig c = resolve(flags, name);
                auto recs = utomo::run_experiment(c);
                utomo::write_outputs(c.out, recs);
                report(recs, c.out);
                return 0;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
