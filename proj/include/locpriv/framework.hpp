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

#include <optional>
#include <span>
#include <vector>

#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

// Minimal set of cells whose prior mass reaches 1 - delta, most probable
// first. Ties break toward the lower cell index.
struct DeltaLocationSet {
    std::vector<CellIndex> cells;  // descending prior order
    double covered_mass = 0.0;

    bool contains(CellIndex i) const;
};

DeltaLocationSet delta_location_set(const ProbVector& prior, double delta);

// Cell of the set closest to the true cell (the true cell itself when it is
// a member); equidistant ties break toward the lower index.
CellIndex surrogate(const DeltaLocationSet& set, CellIndex true_cell, const GridConfig& g);

// Log entry for one released timestamp.
struct StepRecord {
    int t = 0;
    std::vector<CellIndex> delta_set;
    double covered_mass = 0.0;
    bool drifted = false;                      // true cell fell outside the set
    std::optional<CellIndex> surrogate_cell;   // set only when drifted
    CellIndex true_cell = 0;
    Release release;
    double prior_sum = 0.0;
    double posterior_sum = 0.0;
    // Full distributions, kept only when StepOptions::keep_distributions.
    std::optional<std::vector<double>> prior;
    std::optional<std::vector<double>> posterior;
};

// Per-user filter state carried between timestamps.
struct UserState {
    ProbVector posterior;  // p_{t-1}^+
    int t = 0;
    const TransitionMatrix* model = nullptr;
    const GridConfig* grid = nullptr;
};

struct StepOptions {
    double epsilon = 1.0;
    double delta = 0.01;
    MechanismKind mechanism = MechanismKind::pim;
    bool keep_distributions = false;
};

// One timestamp of the release loop: propagate the prior, build the
// delta-location set, substitute the surrogate on drift, release, and update
// the posterior over the full prior support.
StepRecord release_step(UserState& state, CellIndex true_cell, const StepOptions& opts, Rng& rng);

// Folds release_step over a trajectory starting from the given posterior.
// epsilon_schedule may be empty (use opts.epsilon everywhere), a single value
// (broadcast), or one value per timestamp.
std::vector<StepRecord> run_trajectory(std::span<const CellIndex> trajectory,
                                       const ProbVector& initial_posterior,
                                       const TransitionMatrix& model, const GridConfig& g,
                                       const StepOptions& opts, Rng& rng,
                                       std::span<const double> epsilon_schedule = {});

}  // namespace locpriv
