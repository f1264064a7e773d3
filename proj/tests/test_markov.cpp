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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "locpriv/markov.hpp"
#include "locpriv/random.hpp"

using namespace locpriv;

namespace {

ProbVector random_prob(Rng& rng, int m) {
    std::vector<double> v(static_cast<std::size_t>(m));
    double total = 0.0;
    for (double& x : v) {
        x = uniform_open01(rng);
        total += x;
    }
    for (double& x : v) x /= total;
    return ProbVector(std::move(v));
}

TransitionMatrix random_chain(Rng& rng, int m) {
    std::vector<std::vector<CellIndex>> trajs;
    std::vector<CellIndex> t;
    for (int i = 0; i < 50 * m; ++i) {
        t.push_back(static_cast<CellIndex>(uniform_index(rng, static_cast<std::size_t>(m))));
    }
    trajs.push_back(std::move(t));
    return TransitionMatrix::learn(trajs, m, 0.1);
}

}  // namespace

TEST_CASE("ProbVector validation") {
    CHECK_THROWS_AS(ProbVector(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(ProbVector({0.5, -0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ProbVector({0.5, 0.6}), std::invalid_argument);
    CHECK_NOTHROW(ProbVector({0.25, 0.75}));
    CHECK(ProbVector::uniform(4)[2] == doctest::Approx(0.25));
    CHECK(ProbVector::point_mass(3, 1)[1] == 1.0);
    const std::vector<CellIndex> cells{0, 2};
    CHECK(ProbVector::uniform_over(4, cells)[2] == doctest::Approx(0.5));
    CHECK(ProbVector::uniform_over(4, cells)[1] == 0.0);
}

TEST_CASE("learn counts transitions") {
    const std::vector<std::vector<CellIndex>> trajs{{0, 1, 1}};
    const TransitionMatrix m = TransitionMatrix::learn(trajs, 2, 0.0);
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(0, 1) == 1.0);
    CHECK(m.at(1, 0) == 0.0);
    CHECK(m.at(1, 1) == 1.0);
}

TEST_CASE("learn with pure smoothing is uniform") {
    const TransitionMatrix m = TransitionMatrix::learn({}, 2, 1.0);
    CHECK(m.at(0, 0) == doctest::Approx(0.5));
    CHECK(m.at(0, 1) == doctest::Approx(0.5));
    CHECK(m.at(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("learn falls back to self loops for unseen rows") {
    const std::vector<std::vector<CellIndex>> trajs{{0, 1}};
    const TransitionMatrix m = TransitionMatrix::learn(trajs, 3, 0.0);
    CHECK(m.at(2, 2) == 1.0);
    CHECK(m.at(1, 1) == 1.0);  // row 1 saw no outgoing transition either
}

TEST_CASE("learn mixes counts and smoothing") {
    const std::vector<std::vector<CellIndex>> trajs{{0, 1, 0, 1}};
    const TransitionMatrix m = TransitionMatrix::learn(trajs, 2, 1.0);
    // Row 0: two observations of 0->1; (2 + 1) / (2 + 2) and (0 + 1) / 4.
    CHECK(m.at(0, 1) == doctest::Approx(0.75));
    CHECK(m.at(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("learned rows always sum to one") {
    Rng rng(201);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + static_cast<int>(uniform_index(rng, 20));
        const TransitionMatrix chain = random_chain(rng, m);
        for (CellIndex i = 0; i < m; ++i) {
            REQUIRE(chain.row_sum(i) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("learn rejects bad input") {
    const std::vector<std::vector<CellIndex>> bad{{0, 5}};
    CHECK_THROWS_AS(TransitionMatrix::learn(bad, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TransitionMatrix::learn({}, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TransitionMatrix::learn({}, 2, -1.0), std::invalid_argument);
}

TEST_CASE("propagate row extraction and absorbing state") {
    std::istringstream in("2\n0 0 0.5\n0 1 0.5\n1 1 1\n");
    const TransitionMatrix m = TransitionMatrix::load(in);
    const ProbVector from0 = propagate(ProbVector::point_mass(2, 0), m);
    CHECK(from0[0] == doctest::Approx(0.5));
    CHECK(from0[1] == doctest::Approx(0.5));
    const ProbVector from1 = propagate(ProbVector::point_mass(2, 1), m);
    CHECK(from1[0] == 0.0);
    CHECK(from1[1] == doctest::Approx(1.0));
}

TEST_CASE("propagate keeps a uniform vector stationary for doubly stochastic M") {
    std::istringstream in("2\n0 0 0.3\n0 1 0.7\n1 0 0.7\n1 1 0.3\n");
    const TransitionMatrix m = TransitionMatrix::load(in);
    const ProbVector p = propagate(ProbVector::uniform(2), m);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
}

TEST_CASE("propagate preserves total probability") {
    Rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(uniform_index(rng, 15));
        const TransitionMatrix chain = random_chain(rng, m);
        ProbVector p = random_prob(rng, m);
        for (int step = 0; step < 10; ++step) {
            p = propagate(p, chain);
            REQUIRE(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
            for (int i = 0; i < m; ++i) REQUIRE(p[i] >= 0.0);
        }
    }
}

TEST_CASE("propagate rejects dimension mismatch") {
    const TransitionMatrix m = TransitionMatrix::identity(3);
    CHECK_THROWS_AS(propagate(ProbVector::uniform(2), m), std::invalid_argument);
}

TEST_CASE("posterior_update basics") {
    const ProbVector half = ProbVector::uniform(2);
    const ProbVector same = posterior_update(half, {3.0, 3.0});
    CHECK(same[0] == doctest::Approx(0.5));

    const ProbVector bayes = posterior_update(half, {0.8, 0.2});
    CHECK(bayes[0] == doctest::Approx(0.8));
    CHECK(bayes[1] == doctest::Approx(0.2));

    const ProbVector degenerate = posterior_update(ProbVector::point_mass(2, 0), {0.1, 100.0});
    CHECK(degenerate[0] == 1.0);
    CHECK(degenerate[1] == 0.0);
}

TEST_CASE("posterior_update is invariant to emission rescaling") {
    Rng rng(203);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(uniform_index(rng, 10));
        const ProbVector prior = random_prob(rng, m);
        EmissionVector e(static_cast<std::size_t>(m));
        for (double& x : e) x = uniform_open01(rng);
        const double c = 0.01 + 50.0 * uniform_half_open01(rng);
        EmissionVector scaled = e;
        for (double& x : scaled) x *= c;

        const ProbVector a = posterior_update(prior, e);
        const ProbVector b = posterior_update(prior, scaled);
        REQUIRE(a.sum() == doctest::Approx(1.0).epsilon(1e-9));
        for (int i = 0; i < m; ++i) {
            REQUIRE(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("posterior_update error paths") {
    const ProbVector p = ProbVector::point_mass(2, 0);
    CHECK_THROWS_AS(posterior_update(p, {0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(posterior_update(p, {1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(posterior_update(p, {-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("triplet file round-trip") {
    Rng rng(204);
    const TransitionMatrix m = random_chain(rng, 7);
    std::ostringstream out;
    m.save(out);
    std::istringstream in(out.str());
    const TransitionMatrix loaded = TransitionMatrix::load(in);
    REQUIRE(loaded.size() == m.size());
    for (CellIndex i = 0; i < m.size(); ++i) {
        for (CellIndex j = 0; j < m.size(); ++j) {
            REQUIRE(loaded.at(i, j) == doctest::Approx(m.at(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("triplet loader validates") {
    std::istringstream bad_header("x\n");
    CHECK_THROWS_AS(TransitionMatrix::load(bad_header), std::runtime_error);
    std::istringstream bad_sum("2\n0 0 0.5\n0 1 0.2\n1 1 1\n");
    CHECK_THROWS_AS(TransitionMatrix::load(bad_sum), std::runtime_error);
    std::istringstream bad_index("2\n0 5 1\n");
    CHECK_THROWS_AS(TransitionMatrix::load(bad_index), std::runtime_error);
    // Missing rows fall back to a self loop.
    std::istringstream missing("2\n0 1 1\n");
    const TransitionMatrix m = TransitionMatrix::load(missing);
    CHECK(m.at(1, 1) == 1.0);
}
