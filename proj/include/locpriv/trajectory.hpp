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

#include <iosfwd>
#include <string>
#include <vector>

#include "locpriv/grid.hpp"
#include "locpriv/point.hpp"

namespace locpriv {

enum class TrajectoryFormat { cell_csv, latlon_csv };

TrajectoryFormat trajectory_format_from_name(const std::string& name);

// Equirectangular projection of WGS-84 degrees to kilometers, with the x
// scale fixed at the given reference latitude. City-scale grids keep the
// distortion negligible.
MapPoint project_latlon(double lat_deg, double lon_deg, double reference_lat_deg);

struct ParsedTrajectories {
    std::vector<std::vector<CellIndex>> trajectories;
    int dropped_out_of_grid = 0;  // rows outside the grid, skipped with a count
};

// Reads trajectories from a CSV stream. cell-csv rows are "timestamp,cell";
// latlon-csv rows are "timestamp,lat,lon". Blank lines separate trajectories
// within one file. Timestamps must be strictly increasing within a
// trajectory; malformed rows throw with the line number.
ParsedTrajectories parse_trajectories(std::istream& in, TrajectoryFormat format,
                                      const GridConfig& g, double reference_lat_deg = 0.0);
ParsedTrajectories parse_trajectories_file(const std::string& path, TrajectoryFormat format,
                                           const GridConfig& g, double reference_lat_deg = 0.0);

// POI file: one "x,y" row per point of interest, map units.
std::vector<MapPoint> parse_pois(std::istream& in);
std::vector<MapPoint> parse_pois_file(const std::string& path);

}  // namespace locpriv
