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

#include "locpriv/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace locpriv {

void GridConfig::validate() const {
    if (!(cell_size > 0.0)) {
        throw std::invalid_argument("GridConfig: cell_size must be > 0");
    }
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("GridConfig: rows and cols must be >= 1");
    }
}

MapPoint cell_center(CellIndex i, const GridConfig& g) {
    if (!g.valid_cell(i)) {
        throw std::out_of_range("cell_center: index " + std::to_string(i) + " not in [0, " +
                                std::to_string(g.cell_count()) + ")");
    }
    return {g.min_x + (g.col_of(i) + 0.5) * g.cell_size,
            g.min_y + (g.row_of(i) + 0.5) * g.cell_size};
}

std::optional<CellIndex> coord_to_cell(MapPoint p, const GridConfig& g) {
    if (p.x < g.min_x || p.y < g.min_y || p.x > g.max_x() || p.y > g.max_y()) {
        return std::nullopt;
    }
    // floor() puts interior boundary points in the higher-index cell; the max
    // boundary is pulled back inside.
    int col = static_cast<int>(std::floor((p.x - g.min_x) / g.cell_size));
    int row = static_cast<int>(std::floor((p.y - g.min_y) / g.cell_size));
    col = std::min(col, g.cols - 1);
    row = std::min(row, g.rows - 1);
    return g.cell_at(row, col);
}

double cell_distance(CellIndex a, CellIndex b, const GridConfig& g) {
    return euclidean_distance(cell_center(a, g), cell_center(b, g));
}

}  // namespace locpriv
