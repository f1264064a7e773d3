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

#include "locpriv/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locpriv {

std::string mechanism_name(MechanismKind kind) {
    return kind == MechanismKind::pim ? "pim" : "lm";
}

MechanismKind mechanism_from_name(const std::string& name) {
    if (name == "pim") return MechanismKind::pim;
    if (name == "lm" || name == "laplace") return MechanismKind::laplace;
    throw std::invalid_argument("unknown mechanism: " + name);
}

double sample_gamma3(double epsilon, Rng& rng) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("sample_gamma3: epsilon must be > 0");
    }
    return -(std::log(uniform_open01(rng)) + std::log(uniform_open01(rng)) +
             std::log(uniform_open01(rng))) /
           epsilon;
}

double sample_laplace(double scale, Rng& rng) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("sample_laplace: scale must be > 0");
    }
    const double u = uniform_half_open01(rng) - 0.5;  // in [-0.5, 0.5)
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

namespace {

std::vector<MapPoint> candidate_centers(std::span<const CellIndex> cells, const GridConfig& g) {
    if (cells.empty()) {
        throw std::invalid_argument("mechanism: candidate set is empty");
    }
    std::vector<MapPoint> centers;
    centers.reserve(cells.size());
    for (CellIndex c : cells) {
        centers.push_back(cell_center(c, g));
    }
    return centers;
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("mechanism: epsilon must be > 0");
    }
}

}  // namespace

namespace {

ReleaseContext build_pim_context(double epsilon, std::span<const CellIndex> candidate_cells,
                                 const GridConfig& g) {
    check_epsilon(epsilon);
    const auto centers = candidate_centers(candidate_cells, g);
    const ConvexHull candidate_hull = convex_hull(centers);
    const ConvexHull raw = sensitivity_hull(candidate_hull.vertices);
    ReleaseContext ctx;
    ctx.kind = MechanismKind::pim;
    ctx.epsilon = epsilon;
    // One cell is the finest resolvable uncertainty, so degenerate hulls are
    // inflated to cell width before the transform.
    const ConvexPolygon k = regularize_degenerate(raw, g.cell_size);
    ctx.hull = k;
    ctx.hull_area = polygon_area(k);
    ctx.transform = isotropic_transform(k);
    ctx.inverse_transform = ctx.transform.inverse();
    ctx.isotropic_hull = apply_transform(ctx.transform, k);
    ctx.isotropic_area = polygon_area(*ctx.isotropic_hull);
    return ctx;
}

}  // namespace

PimMechanism::PimMechanism(double epsilon, std::span<const CellIndex> candidate_cells,
                           const GridConfig& g)
    : grid_(g),
      ctx_(build_pim_context(epsilon, candidate_cells, g)),
      sampler_(*ctx_.isotropic_hull) {}

MapPoint PimMechanism::sample(CellIndex x_used, Rng& rng) const {
    const MapPoint center = cell_center(x_used, grid_);
    const MapPoint z_iso = sampler_(rng);
    const double r = sample_gamma3(ctx_.epsilon, rng);
    return center + ctx_.inverse_transform * (r * z_iso);
}

double PimMechanism::density(MapPoint z, CellIndex x_used) const {
    const MapPoint y = ctx_.transform * (z - cell_center(x_used, grid_));
    const double norm = minkowski_norm(*ctx_.isotropic_hull, y);
    // Map-space density: det(T) accounts for the change of variables from
    // the isotropic space.
    return ctx_.transform.det() * ctx_.epsilon * ctx_.epsilon / (2.0 * ctx_.isotropic_area) *
           std::exp(-ctx_.epsilon * norm);
}

LaplaceMechanism::LaplaceMechanism(double epsilon, std::span<const CellIndex> candidate_cells,
                                   const GridConfig& g)
    : grid_(g) {
    check_epsilon(epsilon);
    const auto centers = candidate_centers(candidate_cells, g);
    double min_x = centers[0].x, max_x = centers[0].x;
    double min_y = centers[0].y, max_y = centers[0].y;
    for (const MapPoint& c : centers) {
        min_x = std::min(min_x, c.x);
        max_x = std::max(max_x, c.x);
        min_y = std::min(min_y, c.y);
        max_y = std::max(max_y, c.y);
    }
    ctx_.kind = MechanismKind::laplace;
    ctx_.epsilon = epsilon;
    ctx_.delta1 = max_x - min_x;
    ctx_.delta2 = max_y - min_y;
    const double spread = ctx_.delta1 + ctx_.delta2;
    // A single-cell set would get zero noise; fall back to one cell width.
    ctx_.scale = (spread > 0.0 ? spread : g.cell_size) / epsilon;
    ctx_.hull_area = polygon_area(sensitivity_hull(convex_hull(centers).vertices));
}

MapPoint LaplaceMechanism::sample(CellIndex x_used, Rng& rng) const {
    const MapPoint center = cell_center(x_used, grid_);
    return {center.x + sample_laplace(ctx_.scale, rng), center.y + sample_laplace(ctx_.scale, rng)};
}

double LaplaceMechanism::density(MapPoint z, CellIndex x_used) const {
    const MapPoint center = cell_center(x_used, grid_);
    const double b = ctx_.scale;
    return std::exp(-(std::abs(z.x - center.x) + std::abs(z.y - center.y)) / b) / (4.0 * b * b);
}

Release pim_release(double epsilon, std::span<const CellIndex> candidate_cells, CellIndex x_used,
                    const GridConfig& g, Rng& rng) {
    const PimMechanism mech(epsilon, candidate_cells, g);
    return {mech.sample(x_used, rng), mech.context()};
}

Release lm_release(double epsilon, std::span<const CellIndex> candidate_cells, CellIndex x_used,
                   const GridConfig& g, Rng& rng) {
    const LaplaceMechanism mech(epsilon, candidate_cells, g);
    return {mech.sample(x_used, rng), mech.context()};
}

EmissionVector pim_emission(MapPoint z, std::span<const CellIndex> cells,
                            const ReleaseContext& ctx, const GridConfig& g) {
    if (ctx.kind != MechanismKind::pim || !ctx.isotropic_hull.has_value()) {
        throw std::invalid_argument("pim_emission: context is not a PIM context");
    }
    const double peak = ctx.epsilon * ctx.epsilon / (2.0 * ctx.isotropic_area);
    const MapPoint z_iso = ctx.transform * z;
    EmissionVector e(static_cast<std::size_t>(g.cell_count()), 0.0);
    for (CellIndex c : cells) {
        const MapPoint s_iso = ctx.transform * cell_center(c, g);
        const double norm = minkowski_norm(*ctx.isotropic_hull, z_iso - s_iso);
        e[static_cast<std::size_t>(c)] = peak * std::exp(-ctx.epsilon * norm);
    }
    return e;
}

EmissionVector lm_emission(MapPoint z, std::span<const CellIndex> cells,
                           const ReleaseContext& ctx, const GridConfig& g) {
    if (ctx.kind != MechanismKind::laplace || !(ctx.scale > 0.0)) {
        throw std::invalid_argument("lm_emission: context is not a Laplace context");
    }
    const double b = ctx.scale;
    const double peak = 1.0 / (4.0 * b * b);
    EmissionVector e(static_cast<std::size_t>(g.cell_count()), 0.0);
    for (CellIndex c : cells) {
        const MapPoint center = cell_center(c, g);
        e[static_cast<std::size_t>(c)] =
            peak * std::exp(-(std::abs(z.x - center.x) + std::abs(z.y - center.y)) / b);
    }
    return e;
}

}  // namespace locpriv
