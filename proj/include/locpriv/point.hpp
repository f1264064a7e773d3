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

#include <cmath>

namespace locpriv {

// A location in continuous map coordinates (e.g. kilometers).
struct MapPoint {
    double x = 0.0;
    double y = 0.0;
};

inline MapPoint operator+(MapPoint a, MapPoint b) { return {a.x + b.x, a.y + b.y}; }
inline MapPoint operator-(MapPoint a, MapPoint b) { return {a.x - b.x, a.y - b.y}; }
inline MapPoint operator-(MapPoint p) { return {-p.x, -p.y}; }
inline MapPoint operator*(double s, MapPoint p) { return {s * p.x, s * p.y}; }

inline double dot(MapPoint a, MapPoint b) { return a.x * b.x + a.y * b.y; }

// z-component of the 2-d cross product; positive when b is counter-clockwise of a.
inline double cross(MapPoint a, MapPoint b) { return a.x * b.y - a.y * b.x; }

inline double squared_norm(MapPoint p) { return p.x * p.x + p.y * p.y; }
inline double euclidean_norm(MapPoint p) { return std::sqrt(squared_norm(p)); }
inline double euclidean_distance(MapPoint a, MapPoint b) { return euclidean_norm(a - b); }

}  // namespace locpriv
