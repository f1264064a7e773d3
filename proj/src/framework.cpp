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

#include "locpriv/framework.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace locpriv {

bool DeltaLocationSet::contains(CellIndex i) const {
    return std::find(cells.begin(), cells.end(), i) != cells.end();
}

DeltaLocationSet delta_location_set(const ProbVector& prior, double delta) {
    if (delta < 0.0 || delta >= 1.0) {
        throw std::invalid_argument("delta_location_set: delta must be in [0, 1)");
    }
    const int m = prior.size();
    std::vector<CellIndex> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    // Most probable first; equal probabilities resolve to the lower index so
    // the set is deterministic.
    std::stable_sort(order.begin(), order.end(),
                     [&](CellIndex a, CellIndex b) { return prior[a] > prior[b]; });

    DeltaLocationSet set;
    const double needed = 1.0 - delta;
    for (CellIndex c : order) {
        if (prior[c] <= 0.0) break;  // zero-probability cells never enter
        if (set.covered_mass + 1e-12 >= needed) break;
        set.cells.push_back(c);
        set.covered_mass += prior[c];
    }
    return set;
}

CellIndex surrogate(const DeltaLocationSet& set, CellIndex true_cell, const GridConfig& g) {
    if (set.cells.empty()) {
        throw std::invalid_argument("surrogate: empty delta-location set");
    }
    if (set.contains(true_cell)) {
        return true_cell;
    }
    CellIndex best = set.cells.front();
    double best_dist = cell_distance(best, true_cell, g);
    for (CellIndex c : set.cells) {
        const double d = cell_distance(c, true_cell, g);
        if (d < best_dist || (d == best_dist && c < best)) {
            best = c;
            best_dist = d;
        }
    }
    return best;
}

StepRecord release_step(UserState& state, CellIndex true_cell, const StepOptions& opts, Rng& rng) {
    if (state.model == nullptr || state.grid == nullptr) {
        throw std::invalid_argument("release_step: state is missing model or grid");
    }
    const TransitionMatrix& model = *state.model;
    const GridConfig& g = *state.grid;
    if (!g.valid_cell(true_cell)) {
        throw std::out_of_range("release_step: true cell out of range");
    }

    const ProbVector prior = propagate(state.posterior, model);
    const DeltaLocationSet set = delta_location_set(prior, opts.delta);

    StepRecord rec;
    rec.t = state.t;
    rec.delta_set = set.cells;
    rec.covered_mass = set.covered_mass;
    rec.true_cell = true_cell;
    rec.prior_sum = prior.sum();

    CellIndex x_used = true_cell;
    if (!set.contains(true_cell)) {
        x_used = surrogate(set, true_cell, g);
        rec.drifted = true;
        rec.surrogate_cell = x_used;
    }

    // The posterior update runs over the full prior support, not just the
    // delta-location set: zero-prior cells stay zero and every other cell
    // keeps its Bayes weight.
    std::vector<CellIndex> support;
    support.reserve(static_cast<std::size_t>(prior.size()));
    for (CellIndex i = 0; i < prior.size(); ++i) {
        if (prior[i] > 0.0) support.push_back(i);
    }

    EmissionVector emission;
    if (opts.mechanism == MechanismKind::pim) {
        const PimMechanism mech(opts.epsilon, set.cells, g);
        rec.release = Release{mech.sample(x_used, rng), mech.context()};
        emission = pim_emission(rec.release.z, support, rec.release.context, g);
    } else {
        const LaplaceMechanism mech(opts.epsilon, set.cells, g);
        rec.release = Release{mech.sample(x_used, rng), mech.context()};
        emission = lm_emission(rec.release.z, support, rec.release.context, g);
    }

    if (opts.keep_distributions) {
        rec.prior = prior.values();
    }
    const ProbVector posterior = posterior_update(prior, emission);
    rec.posterior_sum = posterior.sum();
    if (opts.keep_distributions) {
        rec.posterior = posterior.values();
    }

    state.posterior = posterior;
    state.t += 1;
    return rec;
}

std::vector<StepRecord> run_trajectory(std::span<const CellIndex> trajectory,
                                       const ProbVector& initial_posterior,
                                       const TransitionMatrix& model, const GridConfig& g,
                                       const StepOptions& opts, Rng& rng,
                                       std::span<const double> epsilon_schedule) {
    if (trajectory.empty()) {
        throw std::invalid_argument("run_trajectory: empty trajectory");
    }
    if (!epsilon_schedule.empty() && epsilon_schedule.size() != 1 &&
        epsilon_schedule.size() != trajectory.size()) {
        throw std::invalid_argument("run_trajectory: epsilon schedule length mismatch");
    }

    UserState state{initial_posterior, 0, &model, &g};
    std::vector<StepRecord> records;
    records.reserve(trajectory.size());
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        StepOptions step = opts;
        if (!epsilon_schedule.empty()) {
            step.epsilon = epsilon_schedule[epsilon_schedule.size() == 1 ? 0 : t];
        }
        records.push_back(release_step(state, trajectory[t], step, rng));
    }
    return records;
}

}  // namespace locpriv
