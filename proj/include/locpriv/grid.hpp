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

#include "locpriv/point.hpp"

namespace locpriv {

// State coordinate: index of a grid cell in [0, rows*cols).
using CellIndex = int;

// Rectangular partition of the map into rows x cols square cells.
// Cells are indexed row-major: i = row * cols + col, row 0 at min_y.
struct GridConfig {
    double min_x = 0.0;
    double min_y = 0.0;
    double cell_size = 1.0;
    int rows = 1;
    int cols = 1;

    int cell_count() const { return rows * cols; }
    double max_x() const { return min_x + cell_size * cols; }
    double max_y() const { return min_y + cell_size * rows; }

    int row_of(CellIndex i) const { return i / cols; }
    int col_of(CellIndex i) const { return i % cols; }
    CellIndex cell_at(int row, int col) const { return row * cols + col; }
    bool valid_cell(CellIndex i) const { return i >= 0 && i < cell_count(); }

    // Throws std::invalid_argument when cell_size <= 0 or rows/cols < 1.
    void validate() const;
};

// Geometric center of cell i. Throws std::out_of_range for an invalid index.
MapPoint cell_center(CellIndex i, const GridConfig& g);

// Cell containing p, or nullopt when p lies outside the grid bounds.
// Interior boundary points resolve to the larger index along each axis; the
// max boundary resolves inward.
std::optional<CellIndex> coord_to_cell(MapPoint p, const GridConfig& g);

// Euclidean distance between cell centers.
double cell_distance(CellIndex a, CellIndex b, const GridConfig& g);

}  // namespace locpriv
