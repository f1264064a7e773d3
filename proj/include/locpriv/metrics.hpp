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
#include <string>
#include <utility>
#include <vector>

#include "locpriv/point.hpp"

namespace locpriv {

// kNN utility of a released location: R = k nearest POIs to the true
// location, R' = kprime nearest to the released one. Returns
// (|R ∩ R'| / kprime, |R ∩ R'| / k). Distance ties break toward the lower
// POI index. Requires k <= kprime <= |pois|.
std::pair<double, double> knn_eval(MapPoint released, MapPoint truth,
                                   std::span<const MapPoint> pois, int k, int kprime);

struct KnnCell {
    int k = 0;
    int kprime = 0;
    double precision = 0.0;
    double recall = 0.0;
};

// Aggregated experiment metrics.
struct MetricsReport {
    // Aggregates over all trajectories, repetitions, and timestamps.
    double mean_set_size = 0.0;
    double drift_ratio = 0.0;     // drifted timestamps / total timestamps
    double mean_distance = 0.0;   // released to true location
    double rms_distance = 0.0;
    std::uint64_t total_steps = 0;

    // Per-timestamp means across trajectories x repetitions (index = t).
    std::vector<double> set_size_over_time;
    std::vector<double> drift_ratio_over_time;
    std::vector<double> distance_over_time;

    std::vector<KnnCell> knn;  // filled only when POIs were supplied

    std::string to_json() const;
    std::string to_csv() const;
};

}  // namespace locpriv
