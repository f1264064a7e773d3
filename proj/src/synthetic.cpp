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

#include "locpriv/synthetic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace locpriv {

namespace {

std::vector<CellIndex> grid_neighbors(CellIndex c, const GridConfig& g) {
    std::vector<CellIndex> out;
    const int row = g.row_of(c);
    const int col = g.col_of(c);
    if (col > 0) out.push_back(g.cell_at(row, col - 1));
    if (col + 1 < g.cols) out.push_back(g.cell_at(row, col + 1));
    if (row > 0) out.push_back(g.cell_at(row - 1, col));
    if (row + 1 < g.rows) out.push_back(g.cell_at(row + 1, col));
    return out;
}

}  // namespace

TransitionMatrix random_walk_matrix(const GridConfig& g, double stay_prob) {
    g.validate();
    if (stay_prob < 0.0 || stay_prob >= 1.0) {
        throw std::invalid_argument("random_walk_matrix: stay_prob must be in [0, 1)");
    }
    // Assemble the chain through the triplet loader so rows are validated the
    // same way as user-provided matrices.
    std::ostringstream triplets;
    triplets.precision(17);
    const int m = g.cell_count();
    triplets << m << "\n";
    for (CellIndex c = 0; c < m; ++c) {
        const auto neighbors = grid_neighbors(c, g);
        if (neighbors.empty()) {
            triplets << c << ' ' << c << ' ' << 1.0 << "\n";
            continue;
        }
        const double move = (1.0 - stay_prob) / static_cast<double>(neighbors.size());
        triplets << c << ' ' << c << ' ' << stay_prob << "\n";
        for (CellIndex n : neighbors) {
            triplets << c << ' ' << n << ' ' << move << "\n";
        }
    }
    std::istringstream in(triplets.str());
    return TransitionMatrix::load(in);
}

std::vector<CellIndex> simulate_trajectory(const TransitionMatrix& m, CellIndex start, int length,
                                           Rng& rng) {
    if (length < 1) throw std::invalid_argument("simulate_trajectory: length must be >= 1");
    if (start < 0 || start >= m.size()) {
        throw std::invalid_argument("simulate_trajectory: bad start cell");
    }
    std::vector<CellIndex> traj;
    traj.reserve(static_cast<std::size_t>(length));
    CellIndex cur = start;
    traj.push_back(cur);
    for (int t = 1; t < length; ++t) {
        const auto& row = m.row(cur);
        const double u = uniform_half_open01(rng);
        double acc = 0.0;
        CellIndex next = cur;
        // Walk the explicit entries first, then spread the base mass.
        bool chosen = false;
        for (const auto& [j, v] : row.entries) {
            acc += v;
            if (u < acc) {
                next = j;
                chosen = true;
                break;
            }
        }
        if (!chosen && row.base > 0.0) {
            const double rest = (u - acc) / row.base;
            next = std::min<CellIndex>(static_cast<CellIndex>(rest), m.size() - 1);
        }
        cur = next;
        traj.push_back(cur);
    }
    return traj;
}

std::vector<CellIndex> diagonal_corridor_cells(const GridConfig& g, int length, int start_row,
                                               int start_col) {
    if (length < 1) throw std::invalid_argument("diagonal_corridor_cells: length must be >= 1");
    if (start_row + length >= g.rows || start_col + length - 1 >= g.cols) {
        throw std::invalid_argument("diagonal_corridor_cells: corridor does not fit the grid");
    }
    std::vector<CellIndex> cells;
    for (int i = 0; i < length; ++i) {
        cells.push_back(g.cell_at(start_row + i, start_col + i));
        cells.push_back(g.cell_at(start_row + i + 1, start_col + i));
    }
    return cells;
}

std::vector<CellIndex> random_blob_cells(const GridConfig& g, int size, Rng& rng) {
    if (size < 1 || size > g.cell_count()) {
        throw std::invalid_argument("random_blob_cells: bad size");
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<CellIndex> blob;
        std::vector<CellIndex> frontier;
        const CellIndex start = static_cast<CellIndex>(uniform_index(
            rng, static_cast<std::size_t>(g.cell_count())));
        blob.insert(start);
        for (CellIndex n : grid_neighbors(start, g)) frontier.push_back(n);
        while (static_cast<int>(blob.size()) < size && !frontier.empty()) {
            const std::size_t pick = uniform_index(rng, frontier.size());
            const CellIndex c = frontier[pick];
            frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
            if (blob.count(c)) continue;
            blob.insert(c);
            for (CellIndex n : grid_neighbors(c, g)) {
                if (!blob.count(n)) frontier.push_back(n);
            }
        }
        if (static_cast<int>(blob.size()) < size) continue;

        // Reject blobs whose cells are all in one row or one column; their
        // hull is degenerate and unrepresentative of a two-dimensional
        // candidate set.
        bool same_row = true, same_col = true;
        const int row0 = g.row_of(*blob.begin());
        const int col0 = g.col_of(*blob.begin());
        for (CellIndex c : blob) {
            same_row = same_row && g.row_of(c) == row0;
            same_col = same_col && g.col_of(c) == col0;
        }
        if (size >= 3 && (same_row || same_col)) continue;
        return {blob.begin(), blob.end()};
    }
    throw std::runtime_error("random_blob_cells: could not grow a blob");
}

}  // namespace locpriv
