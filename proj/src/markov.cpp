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

#include "locpriv/markov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace locpriv {

namespace {

void normalize_in_place(std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x;
    if (!(total > 0.0)) {
        throw std::domain_error("ProbVector: total probability is zero");
    }
    for (double& x : v) x /= total;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("ProbVector: empty");
    }
    double total = 0.0;
    for (double x : values_) {
        if (x < 0.0 || !std::isfinite(x)) {
            throw std::invalid_argument("ProbVector: entries must be finite and >= 0");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("ProbVector: entries must sum to 1");
    }
    normalize_in_place(values_);
}

ProbVector ProbVector::uniform(int m) {
    if (m < 1) throw std::invalid_argument("ProbVector::uniform: m must be >= 1");
    return ProbVector(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
}

ProbVector ProbVector::point_mass(int m, CellIndex i) {
    if (m < 1 || i < 0 || i >= m) {
        throw std::invalid_argument("ProbVector::point_mass: index out of range");
    }
    std::vector<double> v(static_cast<std::size_t>(m), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    return ProbVector(std::move(v));
}

ProbVector ProbVector::uniform_over(int m, std::span<const CellIndex> cells) {
    if (m < 1 || cells.empty()) {
        throw std::invalid_argument("ProbVector::uniform_over: need m >= 1 and cells");
    }
    std::vector<double> v(static_cast<std::size_t>(m), 0.0);
    for (CellIndex c : cells) {
        if (c < 0 || c >= m) throw std::invalid_argument("ProbVector::uniform_over: bad cell");
        v[static_cast<std::size_t>(c)] = 1.0;
    }
    normalize_in_place(v);
    return ProbVector(std::move(v));
}

double ProbVector::sum() const {
    double total = 0.0;
    for (double x : values_) total += x;
    return total;
}

TransitionMatrix TransitionMatrix::learn(std::span<const std::vector<CellIndex>> trajectories,
                                         int m, double alpha) {
    if (m < 1) throw std::invalid_argument("TransitionMatrix::learn: m must be >= 1");
    if (alpha < 0.0) throw std::invalid_argument("TransitionMatrix::learn: alpha must be >= 0");

    std::vector<std::map<CellIndex, double>> counts(static_cast<std::size_t>(m));
    std::vector<double> row_totals(static_cast<std::size_t>(m), 0.0);
    for (const auto& traj : trajectories) {
        for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
            const CellIndex from = traj[t];
            const CellIndex to = traj[t + 1];
            if (from < 0 || from >= m || to < 0 || to >= m) {
                throw std::invalid_argument("TransitionMatrix::learn: cell index out of range");
            }
            counts[static_cast<std::size_t>(from)][to] += 1.0;
            row_totals[static_cast<std::size_t>(from)] += 1.0;
        }
    }

    std::vector<Row> rows(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double denom = row_totals[idx] + alpha * m;
        Row& row = rows[idx];
        if (denom <= 0.0) {
            // No observations and no smoothing: least-assumptive self loop.
            row.base = 0.0;
            row.entries.emplace_back(i, 1.0);
            continue;
        }
        row.base = alpha / denom;
        for (const auto& [j, c] : counts[idx]) {
            row.entries.emplace_back(j, c / denom);
        }
    }
    return TransitionMatrix(std::move(rows));
}

TransitionMatrix TransitionMatrix::identity(int m) {
    return learn(std::span<const std::vector<CellIndex>>{}, m, 0.0);
}

double TransitionMatrix::at(CellIndex i, CellIndex j) const {
    const Row& r = rows_.at(static_cast<std::size_t>(i));
    const auto it = std::lower_bound(r.entries.begin(), r.entries.end(), j,
                                     [](const auto& e, CellIndex col) { return e.first < col; });
    double v = r.base;
    if (it != r.entries.end() && it->first == j) v += it->second;
    return v;
}

double TransitionMatrix::row_sum(CellIndex i) const {
    const Row& r = rows_.at(static_cast<std::size_t>(i));
    double total = r.base * size();
    for (const auto& [j, v] : r.entries) total += v;
    return total;
}

void TransitionMatrix::save(std::ostream& out) const {
    const int m = size();
    out << m << "\n";
    out.precision(17);
    for (int i = 0; i < m; ++i) {
        const Row& r = rows_[static_cast<std::size_t>(i)];
        if (r.base > 0.0) {
            // Smoothed rows are dense; write the effective probabilities.
            std::size_t k = 0;
            for (int j = 0; j < m; ++j) {
                double v = r.base;
                if (k < r.entries.size() && r.entries[k].first == j) v += r.entries[k++].second;
                out << i << ' ' << j << ' ' << v << "\n";
            }
        } else {
            for (const auto& [j, v] : r.entries) {
                out << i << ' ' << j << ' ' << v << "\n";
            }
        }
    }
}

void TransitionMatrix::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("TransitionMatrix: cannot open " + path + " for writing");
    save(out);
}

TransitionMatrix TransitionMatrix::load(std::istream& in) {
    int m = 0;
    if (!(in >> m) || m < 1) {
        throw std::runtime_error("TransitionMatrix: bad header");
    }
    std::vector<Row> rows(static_cast<std::size_t>(m));
    int i = 0, j = 0;
    double p = 0.0;
    while (in >> i >> j >> p) {
        if (i < 0 || i >= m || j < 0 || j >= m || p < 0.0) {
            throw std::runtime_error("TransitionMatrix: bad triplet " + std::to_string(i) + " " +
                                     std::to_string(j));
        }
        rows[static_cast<std::size_t>(i)].entries.emplace_back(j, p);
    }
    for (int r = 0; r < m; ++r) {
        auto& row = rows[static_cast<std::size_t>(r)];
        std::sort(row.entries.begin(), row.entries.end());
        double total = 0.0;
        for (const auto& [col, v] : row.entries) total += v;
        if (row.entries.empty()) {
            row.entries.emplace_back(r, 1.0);
        } else if (std::abs(total - 1.0) > 1e-6) {
            throw std::runtime_error("TransitionMatrix: row " + std::to_string(r) +
                                     " sums to " + std::to_string(total));
        } else {
            for (auto& [col, v] : row.entries) v /= total;
        }
    }
    return TransitionMatrix(std::move(rows));
}

TransitionMatrix TransitionMatrix::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("TransitionMatrix: cannot open " + path);
    return load(in);
}

ProbVector propagate(const ProbVector& p, const TransitionMatrix& m) {
    if (p.size() != m.size()) {
        throw std::invalid_argument("propagate: dimension mismatch");
    }
    const int n = p.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    double base_mass = 0.0;  // sum_i p[i] * base_i, spread over every column
    for (int i = 0; i < n; ++i) {
        const double pi = p[i];
        if (pi == 0.0) continue;
        const auto& row = m.row(i);
        base_mass += pi * row.base;
        for (const auto& [j, v] : row.entries) {
            out[static_cast<std::size_t>(j)] += pi * v;
        }
    }
    if (base_mass > 0.0) {
        for (double& x : out) x += base_mass;
    }
    normalize_in_place(out);
    return ProbVector(std::move(out));
}

ProbVector posterior_update(const ProbVector& prior, const EmissionVector& emission) {
    if (static_cast<int>(emission.size()) != prior.size()) {
        throw std::invalid_argument("posterior_update: dimension mismatch");
    }
    const int n = prior.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = emission[static_cast<std::size_t>(i)];
        if (e < 0.0) throw std::invalid_argument("posterior_update: negative emission");
        const double w = e * prior[i];
        out[static_cast<std::size_t>(i)] = w;
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::domain_error("posterior_update: zero total likelihood over prior support");
    }
    for (double& x : out) x /= total;
    return ProbVector(std::move(out));
}

}  // namespace locpriv
