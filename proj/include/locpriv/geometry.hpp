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

#include <span>
#include <vector>

#include "locpriv/point.hpp"
#include "locpriv/random.hpp"

namespace locpriv {

// Cross products below this magnitude (map-units^2) are treated as collinear
// when building hulls.
inline constexpr double kCollinearTolerance = 1e-9;

// 2x2 real matrix, row-major: [[a, b], [c, d]].
struct Matrix2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Matrix2 identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Matrix2 transpose() const { return {a, c, b, d}; }

    // Throws std::domain_error when |det| is below tolerance.
    Matrix2 inverse() const;

    Matrix2 operator*(const Matrix2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    MapPoint operator*(MapPoint p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
};

double frobenius_distance(const Matrix2& x, const Matrix2& y);

// Strictly convex polygon: >= 3 vertices in counter-clockwise order with no
// three consecutive collinear. The constructor validates and throws
// std::invalid_argument on violation.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<MapPoint> vertices);

    const std::vector<MapPoint>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

  private:
    std::vector<MapPoint> vertices_;
};

// Result of a hull construction. Collinear input collapses to a point or a
// segment; such results are kept degenerate rather than silently inflated.
struct ConvexHull {
    enum class Kind { point, segment, polygon };

    Kind kind = Kind::point;
    std::vector<MapPoint> vertices;  // 1, 2, or >= 3 CCW vertices

    bool degenerate() const { return kind != Kind::polygon; }
    // Throws std::domain_error when degenerate.
    ConvexPolygon polygon() const;
};

// Smallest convex set containing the points (Andrew's monotone chain).
// Output vertices are a subset of the input. Throws on empty input.
ConvexHull convex_hull(std::span<const MapPoint> points);

// Convex hull of all ordered pairwise differences v_i - v_j of the given hull
// vertices. The result is centrally symmetric and contains the origin. A
// single-vertex input yields a degenerate point at the origin.
ConvexHull sensitivity_hull(std::span<const MapPoint> hull_vertices);

// Inflates a degenerate hull to full dimension: a point becomes a width x
// width square centered on it, a segment becomes a rectangle of the given
// width around it. Non-degenerate hulls pass through unchanged. width > 0.
ConvexPolygon regularize_degenerate(const ConvexHull& hull, double width);

double polygon_area(const ConvexPolygon& p);
double polygon_area(const ConvexHull& h);  // 0 for degenerate hulls
MapPoint polygon_centroid(const ConvexPolygon& p);

// Second moment of the uniform distribution on p about the origin:
// (1/Area) * integral of y y^T over p, evaluated in closed form by fan
// triangulation from the centroid. Symmetric positive definite.
Matrix2 second_moment(const ConvexPolygon& p);

// Inverse square root of a symmetric positive definite matrix.
Matrix2 inverse_sqrt_spd(const Matrix2& m);

// T = Sigma^{-1/2} for Sigma = second_moment(p); the linear map that puts p
// into isotropic position (second_moment(T p) = Identity).
Matrix2 isotropic_transform(const ConvexPolygon& p);

// Monte-Carlo variant of isotropic_transform: estimates the second moment
// from uniform samples, doubling the sample count until two independent
// estimates of T agree in Frobenius norm.
struct SampledTransformOptions {
    int initial_samples = 4096;
    double frobenius_tol = 1e-3;
    int max_rounds = 12;
};
Matrix2 isotropic_transform_sampled(const ConvexPolygon& p, Rng& rng,
                                    const SampledTransformOptions& opts = {});

// Minkowski gauge of p at v: min{r >= 0 : v in r*p}. Requires the origin
// strictly interior to p; positively homogeneous, zero only at the origin.
double minkowski_norm(const ConvexPolygon& p, MapPoint v);

// Linear image of a polygon; vertex order is flipped when det(t) < 0 so the
// result stays counter-clockwise. Throws on singular t.
ConvexPolygon apply_transform(const Matrix2& t, const ConvexPolygon& p);

// Precomputed fan triangulation for repeated exact uniform sampling from a
// convex polygon (area-weighted triangle choice + barycentric coordinates).
class PolygonSampler {
  public:
    explicit PolygonSampler(const ConvexPolygon& p);
    MapPoint operator()(Rng& rng) const;

  private:
    MapPoint apex_;
    std::vector<MapPoint> edge_starts_;
    std::vector<MapPoint> edge_ends_;
    std::vector<double> cumulative_area_;
};

// One-shot uniform sample; build a PolygonSampler for repeated draws.
MapPoint sample_uniform(const ConvexPolygon& p, Rng& rng);

}  // namespace locpriv
