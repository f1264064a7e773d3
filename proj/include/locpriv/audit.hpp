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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "locpriv/geometry.hpp"
#include "locpriv/grid.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/random.hpp"

namespace locpriv {

// The audits treat the mechanism as a black box: a closure from the cell a
// release is generated from to a released point.
using ReleaseSampler = std::function<MapPoint(CellIndex, Rng&)>;

// Histogram over released locations. Releases outside the rectangle share a
// single overflow bucket, which participates in the ratio tests like any
// other event.
struct BinGrid {
    double min_x = 0.0;
    double min_y = 0.0;
    double bin_size = 1.0;
    int nx = 1;
    int ny = 1;

    int bin_count() const { return nx * ny + 1; }  // last bucket = overflow
    int overflow_bin() const { return nx * ny; }
    int bin_of(MapPoint p) const;
};

// Builds a bin grid centered on the candidate cells, wide enough to cover
// radius_multiplier times the mechanism's empirical mean release radius
// (estimated with pilot_samples draws from the first cell).
BinGrid make_release_bin_grid(const ReleaseSampler& sampler, std::span<const CellIndex> cells,
                              const GridConfig& g, Rng& rng, int resolution = 24,
                              double radius_multiplier = 6.0, int pilot_samples = 2000);

struct RatioObservation {
    int bin = -1;
    CellIndex numerator_cell = 0;
    CellIndex denominator_cell = 0;
    double ratio = 0.0;
    std::uint64_t numerator_count = 0;
    std::uint64_t denominator_count = 0;
};

struct AuditReport {
    std::string kind;  // "dp_ratio" or "adversarial"
    double epsilon_claimed = 0.0;
    double slack = 0.0;
    double threshold = 0.0;  // e^epsilon * (1 + slack)
    double max_ratio = 0.0;
    std::uint64_t samples = 0;         // per cell (dp) or total (adversarial)
    std::uint64_t min_bin_count = 0;
    std::uint64_t bins_evaluated = 0;
    bool pass = false;
    std::vector<RatioObservation> worst;  // highest observed ratios, descending
    std::string note;
};

struct DpAuditOptions {
    std::uint64_t samples_per_cell = 1'000'000;
    double slack = 0.15;
    // Bins enter the max only when both histograms hold at least this many
    // counts. At 10^6 samples the default keeps the three-sigma relative
    // Monte-Carlo error of a bin ratio below the slack.
    std::uint64_t min_bin_count = 1000;
    std::size_t keep_worst = 10;
};

// Empirical differential-privacy check: for every ordered pair of cells in
// the candidate set, draws samples_per_cell releases per cell, histograms
// them over bins, and compares the worst per-bin probability ratio against
// e^epsilon (1 + slack).
AuditReport dp_ratio_audit(const ReleaseSampler& sampler, double epsilon,
                           std::span<const CellIndex> cells, const GridConfig& g,
                           const BinGrid& bins, const DpAuditOptions& opts, Rng& rng);

struct AdversarialAuditOptions {
    std::uint64_t total_samples = 1'000'000;
    double slack = 0.15;
    std::uint64_t min_bin_count = 1000;
    std::size_t keep_worst = 10;
};

// Empirical adversarial-privacy check: simulates (true cell ~ prior, z),
// estimates the posterior Pr(cell | z in bin) per bin, and compares the
// worst posterior/prior ratio against e^epsilon (1 + slack).
AuditReport adversarial_audit(const ReleaseSampler& sampler, double epsilon,
                              std::span<const CellIndex> cells, const ProbVector& prior,
                              const GridConfig& g, const BinGrid& bins,
                              const AdversarialAuditOptions& opts, Rng& rng);

struct ErrorEstimate {
    double rms = 0.0;        // sqrt(mean squared released-to-true distance)
    double std_error = 0.0;  // standard error of the rms estimate
    std::uint64_t samples = 0;
};

ErrorEstimate error_estimate(const ReleaseSampler& sampler, CellIndex true_cell,
                             const GridConfig& g, std::uint64_t n_samples, Rng& rng);

std::string audit_report_to_json(const AuditReport& report);

// sqrt(Area(K)) / epsilon: the error lower bound up to its unstated constant,
// used for ratio-stability reporting. Throws on a degenerate hull.
double lower_bound_reference(const ConvexPolygon& k, double epsilon);

}  // namespace locpriv
