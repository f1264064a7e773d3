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
#include <string>

#include "locpriv/geometry.hpp"
#include "locpriv/grid.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/random.hpp"

namespace locpriv {

enum class MechanismKind { pim, laplace };

std::string mechanism_name(MechanismKind kind);
MechanismKind mechanism_from_name(const std::string& name);

// Everything a posterior-inference step (or an audit replay) needs to know
// about one release: the geometry of the noise, not the true location.
struct ReleaseContext {
    MechanismKind kind = MechanismKind::pim;
    double epsilon = 0.0;
    double hull_area = 0.0;  // Area(K); zero when the raw hull is degenerate

    // Planar isotropic mechanism: sensitivity hull K (regularized to full
    // dimension when needed), its isotropic position K_I = T K, and T.
    std::optional<ConvexPolygon> hull;           // K
    std::optional<ConvexPolygon> isotropic_hull; // K_I
    Matrix2 transform;                           // T
    Matrix2 inverse_transform;                   // T^{-1}
    double isotropic_area = 0.0;                 // Area(K_I)

    // Laplace mechanism: per-axis spreads of the candidate centers and the
    // resulting noise scale b = (delta1 + delta2) / epsilon.
    double delta1 = 0.0;
    double delta2 = 0.0;
    double scale = 0.0;
};

struct Release {
    MapPoint z;
    ReleaseContext context;
};

// Gamma(shape 3, scale 1/epsilon) via the sum of three exponentials.
double sample_gamma3(double epsilon, Rng& rng);

// Zero-centered Laplace with the given scale via inverse-CDF sampling.
double sample_laplace(double scale, Rng& rng);

// Planar isotropic mechanism for a fixed candidate set: builds the convex
// hull of the candidate cell centers, its sensitivity hull K, and the
// isotropic transform once; individual releases then cost one uniform draw
// from K_I plus a Gamma radius.
class PimMechanism {
  public:
    PimMechanism(double epsilon, std::span<const CellIndex> candidate_cells, const GridConfig& g);

    const ReleaseContext& context() const { return ctx_; }

    // z = center(x_used) + r T^{-1} z' with z' uniform in K_I, r ~ Gamma(3, 1/eps).
    MapPoint sample(CellIndex x_used, Rng& rng) const;

    // Probability density of releasing z from x_used, in map space (includes
    // the det(T) change of variables).
    double density(MapPoint z, CellIndex x_used) const;

  private:
    GridConfig grid_;
    ReleaseContext ctx_;
    PolygonSampler sampler_;
};

// Baseline Laplace mechanism: independent per-axis noise with scale
// (delta1 + delta2) / epsilon, where delta1/delta2 are the coordinate spreads
// of the candidate centers. A single-cell candidate set uses cell_size/epsilon.
class LaplaceMechanism {
  public:
    LaplaceMechanism(double epsilon, std::span<const CellIndex> candidate_cells,
                     const GridConfig& g);

    const ReleaseContext& context() const { return ctx_; }
    MapPoint sample(CellIndex x_used, Rng& rng) const;
    double density(MapPoint z, CellIndex x_used) const;

  private:
    GridConfig grid_;
    ReleaseContext ctx_;
};

// One-shot releases (context built per call; prefer the mechanism classes
// when releasing repeatedly from the same candidate set).
Release pim_release(double epsilon, std::span<const CellIndex> candidate_cells, CellIndex x_used,
                    const GridConfig& g, Rng& rng);
Release lm_release(double epsilon, std::span<const CellIndex> candidate_cells, CellIndex x_used,
                   const GridConfig& g, Rng& rng);

// Emission likelihoods Pr(z | true cell) for the HMM posterior update,
// evaluated for the given cells into a length-m vector (other entries zero).
// pim_emission requires a PIM context, lm_emission a Laplace context.
EmissionVector pim_emission(MapPoint z, std::span<const CellIndex> cells,
                            const ReleaseContext& ctx, const GridConfig& g);
EmissionVector lm_emission(MapPoint z, std::span<const CellIndex> cells,
                           const ReleaseContext& ctx, const GridConfig& g);

}  // namespace locpriv
