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

#include "locpriv/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace locpriv {

int BinGrid::bin_of(MapPoint p) const {
    const int ix = static_cast<int>(std::floor((p.x - min_x) / bin_size));
    const int iy = static_cast<int>(std::floor((p.y - min_y) / bin_size));
    if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) {
        return overflow_bin();
    }
    return iy * nx + ix;
}

BinGrid make_release_bin_grid(const ReleaseSampler& sampler, std::span<const CellIndex> cells,
                              const GridConfig& g, Rng& rng, int resolution,
                              double radius_multiplier, int pilot_samples) {
    if (cells.empty()) {
        throw std::invalid_argument("make_release_bin_grid: empty cell set");
    }
    if (resolution < 2) {
        throw std::invalid_argument("make_release_bin_grid: resolution must be >= 2");
    }
    double cx = 0.0, cy = 0.0;
    double spread = 0.0;
    std::vector<MapPoint> centers;
    for (CellIndex c : cells) {
        centers.push_back(cell_center(c, g));
        cx += centers.back().x;
        cy += centers.back().y;
    }
    cx /= static_cast<double>(centers.size());
    cy /= static_cast<double>(centers.size());
    for (const MapPoint& c : centers) {
        spread = std::max(spread, euclidean_distance(c, {cx, cy}));
    }

    // Pilot draws estimate the mechanism's mean release radius.
    const MapPoint origin = centers.front();
    double mean_radius = 0.0;
    for (int i = 0; i < pilot_samples; ++i) {
        mean_radius += euclidean_distance(sampler(cells.front(), rng), origin);
    }
    mean_radius /= std::max(1, pilot_samples);

    const double half = spread + radius_multiplier * std::max(mean_radius, g.cell_size * 0.5);
    BinGrid bins;
    bins.nx = resolution;
    bins.ny = resolution;
    bins.bin_size = 2.0 * half / resolution;
    bins.min_x = cx - half;
    bins.min_y = cy - half;
    return bins;
}

namespace {

void keep_worst_observations(std::vector<RatioObservation>& all, std::size_t keep) {
    std::sort(all.begin(), all.end(),
              [](const RatioObservation& a, const RatioObservation& b) { return a.ratio > b.ratio; });
    if (all.size() > keep) {
        all.resize(keep);
    }
}

}  // namespace

AuditReport dp_ratio_audit(const ReleaseSampler& sampler, double epsilon,
                           std::span<const CellIndex> cells, const GridConfig& g,
                           const BinGrid& bins, const DpAuditOptions& opts, Rng& rng) {
    if (cells.size() < 2) {
        throw std::invalid_argument("dp_ratio_audit: need at least two cells");
    }
    if (bins.nx < 1 || bins.ny < 1 || !(bins.bin_size > 0.0)) {
        throw std::invalid_argument("dp_ratio_audit: degenerate bin grid");
    }
    for (CellIndex c : cells) {
        if (!g.valid_cell(c)) throw std::out_of_range("dp_ratio_audit: bad cell");
    }

    const int n_bins = bins.bin_count();
    std::vector<std::vector<std::uint64_t>> hist(cells.size(),
                                                 std::vector<std::uint64_t>(n_bins, 0));
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        for (std::uint64_t s = 0; s < opts.samples_per_cell; ++s) {
            ++hist[ci][static_cast<std::size_t>(bins.bin_of(sampler(cells[ci], rng)))];
        }
    }

    AuditReport report;
    report.kind = "dp_ratio";
    report.epsilon_claimed = epsilon;
    report.slack = opts.slack;
    report.threshold = std::exp(epsilon) * (1.0 + opts.slack);
    report.samples = opts.samples_per_cell;
    report.min_bin_count = opts.min_bin_count;

    std::vector<RatioObservation> observations;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (i == j) continue;
            for (int b = 0; b < n_bins; ++b) {
                const std::uint64_t n1 = hist[i][static_cast<std::size_t>(b)];
                const std::uint64_t n2 = hist[j][static_cast<std::size_t>(b)];
                if (n1 < opts.min_bin_count || n2 < opts.min_bin_count) continue;
                ++report.bins_evaluated;
                const double ratio = static_cast<double>(n1) / static_cast<double>(n2);
                if (ratio > report.max_ratio) {
                    report.max_ratio = ratio;
                }
                if (ratio > report.threshold * 0.5) {
                    observations.push_back({b, cells[i], cells[j], ratio, n1, n2});
                }
            }
        }
    }
    keep_worst_observations(observations, opts.keep_worst);
    report.worst = std::move(observations);
    report.pass = report.max_ratio <= report.threshold;
    if (report.bins_evaluated == 0) {
        report.pass = false;
        report.note = "no bin reached the minimum count; increase samples or coarsen bins";
    }
    return report;
}

AuditReport adversarial_audit(const ReleaseSampler& sampler, double epsilon,
                              std::span<const CellIndex> cells, const ProbVector& prior,
                              const GridConfig& g, const BinGrid& bins,
                              const AdversarialAuditOptions& opts, Rng& rng) {
    if (cells.empty()) {
        throw std::invalid_argument("adversarial_audit: empty cell set");
    }
    if (bins.nx < 1 || bins.ny < 1 || !(bins.bin_size > 0.0)) {
        throw std::invalid_argument("adversarial_audit: degenerate bin grid");
    }
    // The prior must be supported on the candidate set.
    std::vector<double> weights;
    double total = 0.0;
    for (CellIndex c : cells) {
        if (!g.valid_cell(c)) throw std::out_of_range("adversarial_audit: bad cell");
        weights.push_back(prior[c]);
        total += prior[c];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("adversarial_audit: prior not supported on the cell set");
    }
    std::vector<double> cumulative(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cumulative[i] = acc;
    }

    const int n_bins = bins.bin_count();
    std::vector<std::vector<std::uint64_t>> joint(cells.size(),
                                                  std::vector<std::uint64_t>(n_bins, 0));
    for (std::uint64_t s = 0; s < opts.total_samples; ++s) {
        const double u = uniform_half_open01(rng) * acc;
        const std::size_t ci = std::min<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin(),
            cells.size() - 1);
        ++joint[ci][static_cast<std::size_t>(bins.bin_of(sampler(cells[ci], rng)))];
    }

    AuditReport report;
    report.kind = "adversarial";
    report.epsilon_claimed = epsilon;
    report.slack = opts.slack;
    report.threshold = std::exp(epsilon) * (1.0 + opts.slack);
    report.samples = opts.total_samples;
    report.min_bin_count = opts.min_bin_count;

    std::vector<RatioObservation> observations;
    for (int b = 0; b < n_bins; ++b) {
        std::uint64_t bin_total = 0;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            bin_total += joint[ci][static_cast<std::size_t>(b)];
        }
        if (bin_total < opts.min_bin_count) continue;
        ++report.bins_evaluated;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            if (weights[ci] <= 0.0) continue;
            const double posterior =
                static_cast<double>(joint[ci][static_cast<std::size_t>(b)]) /
                static_cast<double>(bin_total);
            const double ratio = posterior / weights[ci];
            if (ratio > report.max_ratio) {
                report.max_ratio = ratio;
            }
            if (ratio > report.threshold * 0.5) {
                observations.push_back(
                    {b, cells[ci], cells[ci], ratio, joint[ci][static_cast<std::size_t>(b)],
                     bin_total});
            }
        }
    }
    keep_worst_observations(observations, opts.keep_worst);
    report.worst = std::move(observations);
    report.pass = report.max_ratio <= report.threshold;
    if (report.bins_evaluated == 0) {
        report.pass = false;
        report.note = "no bin reached the minimum count; increase samples or coarsen bins";
    }
    return report;
}

ErrorEstimate error_estimate(const ReleaseSampler& sampler, CellIndex true_cell,
                             const GridConfig& g, std::uint64_t n_samples, Rng& rng) {
    if (n_samples == 0) {
        throw std::invalid_argument("error_estimate: need at least one sample");
    }
    const MapPoint truth = cell_center(true_cell, g);
    double sum_sq = 0.0;
    double sum_quad = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double d2 = squared_norm(sampler(true_cell, rng) - truth);
        sum_sq += d2;
        sum_quad += d2 * d2;
    }
    const double n = static_cast<double>(n_samples);
    const double mean_sq = sum_sq / n;
    const double var_sq = std::max(0.0, sum_quad / n - mean_sq * mean_sq);
    const double rms = std::sqrt(mean_sq);
    // Delta method: se(sqrt(X)) ~= se(X) / (2 sqrt(X)).
    const double se = rms > 0.0 ? std::sqrt(var_sq / n) / (2.0 * rms) : 0.0;
    return {rms, se, n_samples};
}

double lower_bound_reference(const ConvexPolygon& k, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("lower_bound_reference: epsilon must be > 0");
    }
    return std::sqrt(polygon_area(k)) / epsilon;
}

std::string audit_report_to_json(const AuditReport& report) {
    nlohmann::json j;
    j["kind"] = report.kind;
    j["epsilon_claimed"] = report.epsilon_claimed;
    j["slack"] = report.slack;
    j["threshold"] = report.threshold;
    j["max_ratio"] = report.max_ratio;
    j["samples"] = report.samples;
    j["min_bin_count"] = report.min_bin_count;
    j["bins_evaluated"] = report.bins_evaluated;
    j["pass"] = report.pass;
    if (!report.note.empty()) j["note"] = report.note;
    auto worst = nlohmann::json::array();
    for (const RatioObservation& obs : report.worst) {
        worst.push_back({{"bin", obs.bin},
                         {"numerator_cell", obs.numerator_cell},
                         {"denominator_cell", obs.denominator_cell},
                         {"ratio", obs.ratio},
                         {"numerator_count", obs.numerator_count},
                         {"denominator_count", obs.denominator_count}});
    }
    j["worst"] = worst;
    return j.dump(2) + "\n";
}

}  // namespace locpriv
