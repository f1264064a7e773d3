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

#include <iosfwd>
#include <string>
#include <vector>

#include "locpriv/config.hpp"
#include "locpriv/framework.hpp"
#include "locpriv/metrics.hpp"

namespace locpriv {

// One line of the release log: a StepRecord tagged with its work item.
struct LoggedStep {
    int trajectory = 0;
    int repetition = 0;
    StepRecord step;
};

struct ExperimentResult {
    MetricsReport metrics;
    std::vector<LoggedStep> log;
};

// Runs every trajectory x repetition through the release loop and aggregates
// the metrics. Work items draw from seeds derived from (cfg.seed, trajectory,
// repetition), so results are reproducible and independent of scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// As above, with trajectories already in memory (cfg paths are ignored).
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::vector<std::vector<CellIndex>>& trajectories,
                                const TransitionMatrix& model,
                                const std::vector<MapPoint>& pois);

// JSON-lines serialization of the release log, one step per line.
std::string release_log_to_jsonl(const std::vector<LoggedStep>& log);

// Recomputes the drift ratio from a serialized release log (consistency
// check against MetricsReport::drift_ratio).
double drift_ratio_from_jsonl(std::istream& in);

}  // namespace locpriv
