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

#include "locpriv/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace locpriv {

namespace {

// Indices of the k POIs nearest to p; distance ties resolve to the lower index.
std::vector<int> nearest_pois(MapPoint p, std::span<const MapPoint> pois, int k) {
    std::vector<int> order(pois.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return squared_norm(pois[static_cast<std::size_t>(a)] - p) <
               squared_norm(pois[static_cast<std::size_t>(b)] - p);
    });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

}  // namespace

std::pair<double, double> knn_eval(MapPoint released, MapPoint truth,
                                   std::span<const MapPoint> pois, int k, int kprime) {
    if (k < 1 || kprime < k) {
        throw std::invalid_argument("knn_eval: need 1 <= k <= kprime");
    }
    if (static_cast<int>(pois.size()) < kprime) {
        throw std::invalid_argument("knn_eval: fewer POIs than kprime");
    }
    std::vector<int> truth_set = nearest_pois(truth, pois, k);
    std::vector<int> released_set = nearest_pois(released, pois, kprime);
    std::sort(truth_set.begin(), truth_set.end());
    std::sort(released_set.begin(), released_set.end());
    std::vector<int> common;
    std::set_intersection(truth_set.begin(), truth_set.end(), released_set.begin(),
                          released_set.end(), std::back_inserter(common));
    const double overlap = static_cast<double>(common.size());
    return {overlap / kprime, overlap / k};
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    j["mean_set_size"] = mean_set_size;
    j["drift_ratio"] = drift_ratio;
    j["mean_distance"] = mean_distance;
    j["rms_distance"] = rms_distance;
    j["total_steps"] = total_steps;
    j["set_size_over_time"] = set_size_over_time;
    j["drift_ratio_over_time"] = drift_ratio_over_time;
    j["distance_over_time"] = distance_over_time;
    auto knn_rows = nlohmann::json::array();
    for (const KnnCell& cell : knn) {
        knn_rows.push_back({{"k", cell.k},
                            {"kprime", cell.kprime},
                            {"precision", cell.precision},
                            {"recall", cell.recall}});
    }
    j["knn"] = knn_rows;
    return j.dump(2) + "\n";
}

std::string MetricsReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "metric,value\n";
    out << "mean_set_size," << mean_set_size << "\n";
    out << "drift_ratio," << drift_ratio << "\n";
    out << "mean_distance," << mean_distance << "\n";
    out << "rms_distance," << rms_distance << "\n";
    out << "total_steps," << total_steps << "\n";
    out << "\nt,mean_set_size,drift_ratio,mean_distance\n";
    for (std::size_t t = 0; t < set_size_over_time.size(); ++t) {
        out << t << ',' << set_size_over_time[t] << ',' << drift_ratio_over_time[t] << ','
            << distance_over_time[t] << "\n";
    }
    if (!knn.empty()) {
        out << "\nk,kprime,precision,recall\n";
        for (const KnnCell& cell : knn) {
            out << cell.k << ',' << cell.kprime << ',' << cell.precision << ',' << cell.recall
                << "\n";
        }
    }
    return out.str();
}

}  // namespace locpriv
