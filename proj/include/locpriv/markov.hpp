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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locpriv/grid.hpp"

namespace locpriv {

// Probability distribution over the m grid cells. Entries are non-negative
// and sum to 1; every operation renormalizes so 500-step chains do not
// accumulate floating-point drift.
class ProbVector {
  public:
    explicit ProbVector(std::vector<double> values);

    static ProbVector uniform(int m);
    static ProbVector point_mass(int m, CellIndex i);
    static ProbVector uniform_over(int m, std::span<const CellIndex> cells);

    const std::vector<double>& values() const { return values_; }
    double operator[](CellIndex i) const { return values_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(values_.size()); }
    double sum() const;

  private:
    std::vector<double> values_;
};

// Per-cell likelihoods Pr(z | true cell = s_i); non-negative with at least
// one positive entry.
using EmissionVector = std::vector<double>;

// Row-stochastic Markov transition matrix. Rows are stored sparsely as an
// implicit base value (the additive-smoothing floor, identical across the
// row) plus explicit entries, so smoothed matrices stay compact in memory.
class TransitionMatrix {
  public:
    // Count-based maximum-likelihood estimate with additive smoothing:
    // M[i][j] = (count(i->j) + alpha) / (sum_k count(i->k) + alpha * m).
    // With alpha = 0, unobserved rows fall back to a self-transition of 1.
    static TransitionMatrix learn(std::span<const std::vector<CellIndex>> trajectories, int m,
                                  double alpha = 0.0);

    static TransitionMatrix identity(int m);

    int size() const { return static_cast<int>(rows_.size()); }
    double at(CellIndex i, CellIndex j) const;
    double row_sum(CellIndex i) const;

    // Sparse triplet text format: header line "m", then lines "i j p" for
    // every positive entry.
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static TransitionMatrix load(std::istream& in);
    static TransitionMatrix load_file(const std::string& path);

    struct Row {
        double base = 0.0;  // implicit value for every column
        std::vector<std::pair<CellIndex, double>> entries;  // sorted by column
    };
    const Row& row(CellIndex i) const { return rows_[static_cast<std::size_t>(i)]; }

  private:
    explicit TransitionMatrix(std::vector<Row> rows) : rows_(std::move(rows)) {}
    std::vector<Row> rows_;
};

// Prior propagation p_t^- = p_{t-1}^+ M. Throws on dimension mismatch.
ProbVector propagate(const ProbVector& p, const TransitionMatrix& m);

// Bayes update p^+[i] = e[i] p[i] / sum_j e[j] p[j]. Invariant to positive
// rescaling of e; cells with zero prior stay zero. Throws std::domain_error
// when the total likelihood over the prior support is zero.
ProbVector posterior_update(const ProbVector& prior, const EmissionVector& emission);

}  // namespace locpriv
