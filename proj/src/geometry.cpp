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

#include "locpriv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locpriv {

Matrix2 Matrix2::inverse() const {
    const double dt = det();
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
    if (std::abs(dt) <= 1e-24 * scale * scale) {
        throw std::domain_error("Matrix2::inverse: singular matrix");
    }
    return {d / dt, -b / dt, -c / dt, a / dt};
}

double frobenius_distance(const Matrix2& x, const Matrix2& y) {
    const double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

ConvexPolygon::ConvexPolygon(std::vector<MapPoint> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const MapPoint& prev = vertices_[(i + n - 1) % n];
        const MapPoint& cur = vertices_[i];
        const MapPoint& next = vertices_[(i + 1) % n];
        if (cross(cur - prev, next - cur) <= 0.0) {
            throw std::invalid_argument(
                "ConvexPolygon: vertices must be strictly convex in CCW order");
        }
    }
}

ConvexPolygon ConvexHull::polygon() const {
    if (degenerate()) {
        throw std::domain_error("ConvexHull: degenerate hull has no polygon");
    }
    return ConvexPolygon(vertices);
}

ConvexHull convex_hull(std::span<const MapPoint> points) {
    if (points.empty()) {
        throw std::invalid_argument("convex_hull: empty input");
    }
    std::vector<MapPoint> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
              [](MapPoint a, MapPoint b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](MapPoint a, MapPoint b) { return a.x == b.x && a.y == b.y; }),
              pts.end());

    if (pts.size() == 1) {
        return {ConvexHull::Kind::point, std::move(pts)};
    }

    // Andrew's monotone chain; popping on cross <= tolerance keeps the output
    // strictly convex (collinear middle points are dropped).
    const auto build = [](const std::vector<MapPoint>& in, std::vector<MapPoint>& out) {
        for (const MapPoint& p : in) {
            while (out.size() >= 2 &&
                   cross(out[out.size() - 1] - out[out.size() - 2], p - out[out.size() - 1]) <=
                       kCollinearTolerance) {
                out.pop_back();
            }
            out.push_back(p);
        }
    };

    std::vector<MapPoint> lower;
    build(pts, lower);
    std::vector<MapPoint> reversed(pts.rbegin(), pts.rend());
    std::vector<MapPoint> upper;
    build(reversed, upper);

    std::vector<MapPoint> hull(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.begin(), upper.end() - 1);

    if (hull.size() < 3) {
        // Entire input is collinear: keep the two extreme points.
        return {ConvexHull::Kind::segment, {pts.front(), pts.back()}};
    }
    return {ConvexHull::Kind::polygon, std::move(hull)};
}

ConvexHull sensitivity_hull(std::span<const MapPoint> hull_vertices) {
    if (hull_vertices.empty()) {
        throw std::invalid_argument("sensitivity_hull: empty input");
    }
    std::vector<MapPoint> diffs;
    diffs.reserve(hull_vertices.size() * hull_vertices.size());
    for (const MapPoint& a : hull_vertices) {
        for (const MapPoint& b : hull_vertices) {
            diffs.push_back(a - b);
        }
    }
    return convex_hull(diffs);
}

ConvexPolygon regularize_degenerate(const ConvexHull& hull, double width) {
    if (!(width > 0.0)) {
        throw std::invalid_argument("regularize_degenerate: width must be > 0");
    }
    const double h = width / 2.0;
    switch (hull.kind) {
        case ConvexHull::Kind::point: {
            const MapPoint p = hull.vertices.front();
            return ConvexPolygon({{p.x - h, p.y - h},
                                  {p.x + h, p.y - h},
                                  {p.x + h, p.y + h},
                                  {p.x - h, p.y + h}});
        }
        case ConvexHull::Kind::segment: {
            const MapPoint p = hull.vertices[0];
            const MapPoint q = hull.vertices[1];
            const double len = euclidean_distance(p, q);
            const MapPoint dir = (1.0 / len) * (q - p);
            const MapPoint n{-dir.y * h, dir.x * h};
            return ConvexPolygon({p - n, q - n, q + n, p + n});
        }
        case ConvexHull::Kind::polygon:
            return hull.polygon();
    }
    throw std::logic_error("regularize_degenerate: unreachable");
}

double polygon_area(const ConvexPolygon& p) {
    const auto& v = p.vertices();
    double twice = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        twice += cross(v[i], v[(i + 1) % n]);
    }
    return 0.5 * twice;
}

double polygon_area(const ConvexHull& h) {
    return h.degenerate() ? 0.0 : polygon_area(h.polygon());
}

MapPoint polygon_centroid(const ConvexPolygon& p) {
    const auto& v = p.vertices();
    double twice_area = 0.0;
    MapPoint acc{0.0, 0.0};
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const MapPoint& a = v[i];
        const MapPoint& b = v[(i + 1) % n];
        const double w = cross(a, b);
        twice_area += w;
        acc = acc + w * (a + b);
    }
    return (1.0 / (3.0 * twice_area)) * acc;
}

Matrix2 second_moment(const ConvexPolygon& p) {
    // Fan triangulation from the centroid; for a triangle with vertices
    // P1, P2, P3 the moment about the origin is
    //   (Area/12) [ sum_k Pk Pk^T + (sum_k Pk)(sum_k Pk)^T ].
    const auto& v = p.vertices();
    const MapPoint c = polygon_centroid(p);
    double area = 0.0;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const MapPoint& a = v[i];
        const MapPoint& b = v[(i + 1) % n];
        const double twice_tri = cross(a - c, b - c);
        const MapPoint s = c + a + b;
        const double w = twice_tri / 24.0;  // Area/12
        sxx += w * (c.x * c.x + a.x * a.x + b.x * b.x + s.x * s.x);
        sxy += w * (c.x * c.y + a.x * a.y + b.x * b.y + s.x * s.y);
        syy += w * (c.y * c.y + a.y * a.y + b.y * b.y + s.y * s.y);
        area += 0.5 * twice_tri;
    }
    return {sxx / area, sxy / area, sxy / area, syy / area};
}

Matrix2 inverse_sqrt_spd(const Matrix2& m) {
    const double off = 0.5 * (m.b + m.c);  // symmetrize
    const double det = m.a * m.d - off * off;
    const double tr = m.a + m.d;
    if (!(det > 0.0) || !(tr > 0.0) || det < 1e-12 * 0.25 * tr * tr) {
        throw std::domain_error("inverse_sqrt_spd: matrix not (safely) positive definite");
    }
    // Closed-form 2x2 principal square root: sqrt(M) = (M + sqrt(det) I) / t
    // with t = sqrt(trace + 2 sqrt(det)).
    const double s = std::sqrt(det);
    const double t = std::sqrt(tr + 2.0 * s);
    const Matrix2 root{(m.a + s) / t, off / t, off / t, (m.d + s) / t};
    return root.inverse();
}

Matrix2 isotropic_transform(const ConvexPolygon& p) {
    return inverse_sqrt_spd(second_moment(p));
}

Matrix2 isotropic_transform_sampled(const ConvexPolygon& p, Rng& rng,
                                    const SampledTransformOptions& opts) {
    const PolygonSampler sample(p);
    const auto estimate = [&](int l) {
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (int i = 0; i < l; ++i) {
            const MapPoint y = sample(rng);
            sxx += y.x * y.x;
            sxy += y.x * y.y;
            syy += y.y * y.y;
        }
        const double inv = 1.0 / l;
        return inverse_sqrt_spd({sxx * inv, sxy * inv, sxy * inv, syy * inv});
    };

    int l = opts.initial_samples;
    for (int round = 0; round < opts.max_rounds; ++round, l *= 2) {
        const Matrix2 t1 = estimate(l);
        const Matrix2 t2 = estimate(l);
        if (frobenius_distance(t1, t2) < opts.frobenius_tol) {
            return t1;
        }
    }
    throw std::runtime_error("isotropic_transform_sampled: estimate did not stabilize");
}

double minkowski_norm(const ConvexPolygon& p, MapPoint v) {
    // For each edge with outward normal n and offset h = <n, vertex> > 0, the
    // constraint v in r*P reads <n, v> <= r h; the gauge is the max ratio.
    const auto& vs = p.vertices();
    double best = 0.0;
    for (std::size_t i = 0, n = vs.size(); i < n; ++i) {
        const MapPoint e = vs[(i + 1) % n] - vs[i];
        const MapPoint normal{e.y, -e.x};
        const double h = dot(normal, vs[i]);
        if (h <= 1e-12 * euclidean_norm(normal)) {
            throw std::domain_error("minkowski_norm: origin not interior to polygon");
        }
        best = std::max(best, dot(normal, v) / h);
    }
    return best;
}

ConvexPolygon apply_transform(const Matrix2& t, const ConvexPolygon& p) {
    const double dt = t.det();
    const double scale =
        std::max({std::abs(t.a), std::abs(t.b), std::abs(t.c), std::abs(t.d), 1e-300});
    if (std::abs(dt) <= 1e-24 * scale * scale) {
        throw std::domain_error("apply_transform: singular matrix");
    }
    std::vector<MapPoint> mapped;
    mapped.reserve(p.size());
    for (const MapPoint& v : p.vertices()) {
        mapped.push_back(t * v);
    }
    if (dt < 0.0) {
        std::reverse(mapped.begin(), mapped.end());
    }
    return ConvexPolygon(std::move(mapped));
}

PolygonSampler::PolygonSampler(const ConvexPolygon& p) : apex_(polygon_centroid(p)) {
    const auto& v = p.vertices();
    double total = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const MapPoint& a = v[i];
        const MapPoint& b = v[(i + 1) % n];
        total += 0.5 * cross(a - apex_, b - apex_);
        edge_starts_.push_back(a);
        edge_ends_.push_back(b);
        cumulative_area_.push_back(total);
    }
}

MapPoint PolygonSampler::operator()(Rng& rng) const {
    const double target = uniform_half_open01(rng) * cumulative_area_.back();
    const auto it = std::upper_bound(cumulative_area_.begin(), cumulative_area_.end(), target);
    const std::size_t i = std::min<std::size_t>(it - cumulative_area_.begin(),
                                                cumulative_area_.size() - 1);
    double r1 = uniform_half_open01(rng);
    double r2 = uniform_half_open01(rng);
    if (r1 + r2 > 1.0) {
        r1 = 1.0 - r1;
        r2 = 1.0 - r2;
    }
    return apex_ + r1 * (edge_starts_[i] - apex_) + r2 * (edge_ends_[i] - apex_);
}

MapPoint sample_uniform(const ConvexPolygon& p, Rng& rng) {
    return PolygonSampler(p)(rng);
}

}  // namespace locpriv
