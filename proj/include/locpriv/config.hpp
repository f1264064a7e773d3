// Copyright 2026 The locpriv Authors
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

#include "locpriv/grid.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

// How the t=0 posterior is initialized before the first release.
enum class InitialPrior { training_cells, uniform, first_cell };

std::string initial_prior_name(InitialPrior p);
InitialPrior initial_prior_from_name(const std::string& name);

// Audit-specific knobs, read from the same config file under "audit." keys.
struct AuditConfig {
    std::string kind = "dp_ratio";  // dp_ratio | adversarial
    std::vector<CellIndex> cells;
    std::vector<double> prior;      // adversarial only; defaults to uniform
    std::uint64_t samples = 1'000'000;
    double slack = 0.15;
    std::uint64_t min_bin_count = 1000;
    int bins = 24;
    // Budget actually handed to the mechanism; defaults to the claimed
    // epsilon. Setting it differently deliberately sabotages the mechanism,
    // which the audit is expected to catch.
    double mechanism_epsilon = 0.0;
};

// Flat "key = value" experiment configuration. parse() and serialize() are
// exact inverses for a valid config.
struct ExperimentConfig {
    GridConfig grid;
    double epsilon = 1.0;
    double delta = 0.01;
    MechanismKind mechanism = MechanismKind::pim;

    std::vector<std::string> trajectories;       // input paths
    std::string trajectory_format = "cell-csv";  // cell-csv | latlon-csv
    double reference_latitude = 0.0;             // latlon projection reference

    std::string matrix_path;  // load M from here when set, else learn
    double smoothing = 0.0;   // additive-smoothing alpha when learning

    std::uint64_t seed = 0;
    int repetitions = 1;
    InitialPrior initial_prior = InitialPrior::training_cells;

    std::string poi_path;         // optional; enables kNN metrics
    std::vector<int> knn_k = {5};
    std::vector<int> knn_kprime = {5, 10, 15};

    AuditConfig audit;

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_file(const std::string& path);
    std::string serialize() const;
    void validate() const;
};

}  // namespace locpriv
