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

#include <vector>

#include "locpriv/grid.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/random.hpp"

namespace locpriv {

// Lazy random walk on the grid: stay with probability stay_prob, otherwise
// move uniformly to an in-grid 4-neighbor.
TransitionMatrix random_walk_matrix(const GridConfig& g, double stay_prob = 0.2);

// Samples a trajectory of the given length from the chain.
std::vector<CellIndex> simulate_trajectory(const TransitionMatrix& m, CellIndex start, int length,
                                           Rng& rng);

// An elongated candidate set: `length` cells along the main diagonal plus a
// parallel off-diagonal row, starting at (start_row, start_col). Total
// 2 * length cells. Used to contrast mechanisms on anisotropic sets.
std::vector<CellIndex> diagonal_corridor_cells(const GridConfig& g, int length, int start_row = 0,
                                               int start_col = 0);

// Connected random cell blob of the given size, grown by repeatedly claiming
// a uniform cell adjacent to the blob. Fully collinear blobs are regrown, so
// the hull of the result is always two-dimensional for size >= 3.
std::vector<CellIndex> random_blob_cells(const GridConfig& g, int size, Rng& rng);

}  // namespace locpriv
