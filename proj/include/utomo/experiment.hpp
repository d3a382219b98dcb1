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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "utomo/eigenphase.hpp"
#include "utomo/hard_instances.hpp"

namespace utomo {

/// One trial. For state-tomo the distance columns hold pure-state distances;
/// for eigenphase dist_lie holds the shifted Hausdorff distance and the other
/// distances are 0; for gadget-verify every distance column holds the l2
/// error of the postselected branch.
struct ExperimentRecord {
    std::string experiment;
    int d = 0;
    double eps = 0.0;
    double eta = 0.0;
    std::uint64_t seed = 0;
    std::int64_t queries = 0;
    double dist_diamond = 0.0;
    double dist_lie = 0.0;
    double pudist = 0.0;
    double ent_infid = 0.0;
    bool success = false;
    std::int64_t wall_ms = 0;
};

inline constexpr const char* kCsvHeader =
    "experiment,d,eps,eta,seed,queries,dist_diamond,dist_lie,pudist,ent_infid,success,wall_ms";

struct ExperimentConfig {
    std::string experiment = "bootstrap";
    std::vector<int> dims{2};
    std::vector<double> eps{0.1};
    double eta = 0.1;
    int trials = 10;
    std::uint64_t seed = 1;
    std::string out = "results";
    int workers = 1;

    double c_state = kDefaultCState;
    double c_pe = kDefaultCPe;
    double c_cc = kDefaultCCc;
    double eps0_ratio = 1.0 / 64.0;
    double boost_c = 24.0;
    /// pudist accuracy requested from the base inside bootstrap and identify.
    double base_eps = default_base_eps();
    int power_base = 2;

    /// Throws InvariantError on empty lists, unknown experiments or
    /// nonpositive constants.
    void validate() const;

    BaseConfig base_config() const;
    EigenphaseConfig eigenphase_config() const;
};

/// Experiments accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Parses a JSON object; unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

/// splitmix64 chain over (master, d, eps bits, trial).
std::uint64_t derive_seed(std::uint64_t master, int d, double eps, int trial);

/// Runs one trial with the given seed. Algorithm failures become
/// success = false records.
ExperimentRecord run_trial(const ExperimentConfig& config, int d, double eps, std::uint64_t seed);

/// One record per (d, eps, trial), ordered by (d, eps, trial) in config order.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(const std::string& path);

/// Per (experiment, d): per-eps success rate, median queries and median
/// distances, plus the fitted slope of median queries against 1/eps when at
/// least three eps values are present.
std::string summarize(const std::vector<ExperimentRecord>& records);

/// Writes results.csv and summary.json into `dir`, creating it if needed.
void write_outputs(const std::string& dir, const std::vector<ExperimentRecord>& records);

}  // namespace utomo
