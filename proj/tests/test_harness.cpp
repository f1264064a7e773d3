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

#include "locpriv/config.hpp"
#include "locpriv/experiment.hpp"
#include "locpriv/metrics.hpp"
#include "locpriv/synthetic.hpp"
#include "locpriv/trajectory.hpp"

using namespace locpriv;

TEST_CASE("config round-trips through serialize and parse") {
    ExperimentConfig cfg;
    cfg.grid = {1.5, -2.0, 0.34, 12, 9};
    cfg.epsilon = 0.8;
    cfg.delta = 0.02;
    cfg.mechanism = MechanismKind::laplace;
    cfg.trajectories = {"data/a.csv", "data/b.csv"};
    cfg.trajectory_format = "latlon-csv";
    cfg.reference_latitude = 39.9;
    cfg.matrix_path = "out/model.mtx";
    cfg.smoothing = 0.5;
    cfg.seed = 424242;
    cfg.repetitions = 20;
    cfg.initial_prior = InitialPrior::first_cell;
    cfg.poi_path = "data/pois.csv";
    cfg.knn_k = {3, 5};
    cfg.knn_kprime = {5, 9};
    cfg.audit.kind = "adversarial";
    cfg.audit.cells = {1, 2, 7};
    cfg.audit.prior = {0.5, 0.25, 0.25};
    cfg.audit.samples = 123456;
    cfg.audit.slack = 0.2;
    cfg.audit.min_bin_count = 512;
    cfg.audit.bins = 16;
    cfg.audit.mechanism_epsilon = 1.7;

    std::istringstream in(cfg.serialize());
    const ExperimentConfig back = ExperimentConfig::parse(in);
    CHECK(back.serialize() == cfg.serialize());
    CHECK(back.grid.cell_size == cfg.grid.cell_size);
    CHECK(back.grid.rows == cfg.grid.rows);
    CHECK(back.epsilon == cfg.epsilon);
    CHECK(back.mechanism == cfg.mechanism);
    CHECK(back.trajectories == cfg.trajectories);
    CHECK(back.seed == cfg.seed);
    CHECK(back.initial_prior == cfg.initial_prior);
    CHECK(back.knn_kprime == cfg.knn_kprime);
    CHECK(back.audit.cells == cfg.audit.cells);
    CHECK(back.audit.mechanism_epsilon == cfg.audit.mechanism_epsilon);
}

TEST_CASE("config parser reports bad lines and values") {
    std::istringstream missing_eq("epsilon 1.0\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(missing_eq), std::runtime_error);
    std::istringstream bad_value("epsilon = not-a-number\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(bad_value), std::runtime_error);
    std::istringstream comments("# comment only\n\nepsilon = 2.0 # trailing\n");
    CHECK(ExperimentConfig::parse(comments).epsilon == 2.0);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.epsilon = 1.0;
    cfg.delta = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.delta = 0.01;
    cfg.trajectory_format = "xml";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("cell-csv parsing") {
    const GridConfig g{0.0, 0.0, 1.0, 2, 2};
    std::istringstream in("0,0\n1,1\n2,2\n");
    const ParsedTrajectories parsed = parse_trajectories(in, TrajectoryFormat::cell_csv, g);
    REQUIRE(parsed.trajectories.size() == 1);
    CHECK(parsed.trajectories[0] == std::vector<CellIndex>{0, 1, 2});
    CHECK(parsed.dropped_out_of_grid == 0);
}

TEST_CASE("blank lines separate trajectories") {
    const GridConfig g{0.0, 0.0, 1.0, 2, 2};
    std::istringstream in("0,0\n1,1\n\n0,3\n1,2\n");
    const ParsedTrajectories parsed = parse_trajectories(in, TrajectoryFormat::cell_csv, g);
    REQUIRE(parsed.trajectories.size() == 2);
    CHECK(parsed.trajectories[1] == std::vector<CellIndex>{3, 2});
}

TEST_CASE("latlon rows outside the grid are dropped with a count") {
    // 0.01 degrees of latitude is ~1.11 km; grid covers ~2.2 x 2.2 km.
    const GridConfig g{0.0, 0.0, 1.112, 2, 2};
    std::ostringstream rows;
    rows << "0," << 0.005 << "," << 0.005 << "\n";   // inside
    rows << "1," << 0.5 << "," << 0.5 << "\n";       // far outside
    rows << "2," << 0.015 << "," << 0.005 << "\n";   // inside
    std::istringstream in(rows.str());
    const ParsedTrajectories parsed =
        parse_trajectories(in, TrajectoryFormat::latlon_csv, g, 0.0);
    REQUIRE(parsed.trajectories.size() == 1);
    CHECK(parsed.trajectories[0].size() == 2);
    CHECK(parsed.dropped_out_of_grid == 1);
}

TEST_CASE("trajectory parser rejects bad input") {
    const GridConfig g{0.0, 0.0, 1.0, 2, 2};

    std::istringstream non_monotone("0,0\n0,1\n");
    CHECK_THROWS_WITH_AS(parse_trajectories(non_monotone, TrajectoryFormat::cell_csv, g),
                         doctest::Contains("line 2"), std::runtime_error);

    std::istringstream decreasing("5,0\n3,1\n");
    CHECK_THROWS_AS(parse_trajectories(decreasing, TrajectoryFormat::cell_csv, g),
                    std::runtime_error);

    std::istringstream malformed("0,zero\n");
    CHECK_THROWS_WITH_AS(parse_trajectories(malformed, TrajectoryFormat::cell_csv, g),
                         doctest::Contains("line 1"), std::runtime_error);

    std::istringstream wrong_fields("0,1,2\n");
    CHECK_THROWS_AS(parse_trajectories(wrong_fields, TrajectoryFormat::cell_csv, g),
                    std::runtime_error);

    std::istringstream bad_cell("0,17\n");
    CHECK_THROWS_AS(parse_trajectories(bad_cell, TrajectoryFormat::cell_csv, g),
                    std::runtime_error);

    std::istringstream empty("\n\n");
    CHECK_THROWS_AS(parse_trajectories(empty, TrajectoryFormat::cell_csv, g), std::runtime_error);
}

TEST_CASE("equirectangular projection scale") {
    const MapPoint p = project_latlon(0.0, 1.0, 0.0);
    CHECK(p.x == doctest::Approx(111.19).epsilon(0.01));
    CHECK(p.y == 0.0);
    // At 60 degrees reference latitude the x scale halves.
    const MapPoint q = project_latlon(0.0, 1.0, 60.0);
    CHECK(q.x == doctest::Approx(111.19 / 2.0).epsilon(0.01));
}

TEST_CASE("poi parsing") {
    std::istringstream in("0.5,1.5\n2.0,3.0\n");
    const auto pois = parse_pois(in);
    REQUIRE(pois.size() == 2);
    CHECK(pois[1].x == 2.0);
    std::istringstream bad("1.0\n");
    CHECK_THROWS_AS(parse_pois(bad), std::runtime_error);
}

TEST_CASE("knn_eval identity and containment cases") {
    std::vector<MapPoint> pois;
    for (int i = 0; i < 10; ++i) {
        pois.push_back({static_cast<double>(i), 0.5 * i});
    }
    const MapPoint truth{3.1, 1.6};

    const auto [p_same, r_same] = knn_eval(truth, truth, pois, 4, 4);
    CHECK(p_same == 1.0);
    CHECK(r_same == 1.0);

    // kprime = |pois| forces R subset of R', so recall is 1.
    const auto [p_all, r_all] = knn_eval({9.0, 0.0}, truth, pois, 5, 10);
    CHECK(r_all == 1.0);
    CHECK(p_all == doctest::Approx(0.5));

    CHECK_THROWS_AS(knn_eval(truth, truth, pois, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(knn_eval(truth, truth, pois, 2, 11), std::invalid_argument);
}

TEST_CASE("knn_eval breaks distance ties by POI index") {
    // Two POIs equidistant from the query; the lower index wins the last slot.
    const std::vector<MapPoint> pois{{1.0, 0.0}, {-1.0, 0.0}, {5.0, 0.0}};
    const auto [precision, recall] = knn_eval({0.0, 0.0}, {0.0, 0.0}, pois, 1, 1);
    CHECK(precision == 1.0);
    CHECK(recall == 1.0);
    // k = 1 picks POI 0 for both queries by the tie rule; overlap is 1.
}

TEST_CASE("recall never decreases in kprime") {
    Rng rng(601);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<MapPoint> pois;
        const int n = 12 + static_cast<int>(uniform_index(rng, 20));
        for (int i = 0; i < n; ++i) {
            pois.push_back({10.0 * uniform_half_open01(rng), 10.0 * uniform_half_open01(rng)});
        }
        const MapPoint truth{10.0 * uniform_half_open01(rng), 10.0 * uniform_half_open01(rng)};
        const MapPoint released{10.0 * uniform_half_open01(rng),
                                10.0 * uniform_half_open01(rng)};
        const int k = 3;
        double prev_recall = 0.0;
        for (int kprime = k; kprime <= n; ++kprime) {
            const auto [precision, recall] = knn_eval(released, truth, pois, k, kprime);
            REQUIRE(precision >= 0.0);
            REQUIRE(precision <= 1.0);
            REQUIRE(recall >= prev_recall - 1e-12);
            prev_recall = recall;
        }
        REQUIRE(prev_recall == 1.0);  // kprime = |pois| contains everything
    }
}

TEST_CASE("run_experiment aggregates and is reproducible") {
    const GridConfig g{0.0, 0.0, 1.0, 6, 6};
    ExperimentConfig cfg;
    cfg.grid = g;
    cfg.epsilon = 1.0;
    cfg.delta = 0.0;
    cfg.mechanism = MechanismKind::pim;
    cfg.seed = 7;
    cfg.repetitions = 2;
    cfg.initial_prior = InitialPrior::first_cell;

    const TransitionMatrix m = random_walk_matrix(g, 0.3);
    Rng sim(602);
    std::vector<std::vector<CellIndex>> trajectories{simulate_trajectory(m, 14, 40, sim),
                                                     simulate_trajectory(m, 21, 25, sim)};
    std::vector<MapPoint> pois;
    for (int i = 0; i < 12; ++i) pois.push_back({0.7 * i, 0.5 * i});

    const ExperimentResult a = run_experiment(cfg, trajectories, m, pois);
    const ExperimentResult b = run_experiment(cfg, trajectories, m, pois);

    CHECK(a.metrics.to_json() == b.metrics.to_json());
    CHECK(release_log_to_jsonl(a.log) == release_log_to_jsonl(b.log));

    CHECK(a.metrics.total_steps == 2 * (40 + 25));
    CHECK(a.metrics.drift_ratio == 0.0);  // delta = 0 on an in-support walk
    CHECK(a.metrics.mean_set_size >= 1.0);
    CHECK(a.metrics.set_size_over_time.size() == 40);
    REQUIRE_FALSE(a.metrics.knn.empty());
    for (const KnnCell& cell : a.metrics.knn) {
        REQUIRE(cell.precision >= 0.0);
        REQUIRE(cell.precision <= 1.0);
        REQUIRE(cell.recall >= 0.0);
        REQUIRE(cell.recall <= 1.0);
    }

    // A different seed must change the releases.
    ExperimentConfig other = cfg;
    other.seed = 8;
    const ExperimentResult c = run_experiment(other, trajectories, m, pois);
    CHECK(release_log_to_jsonl(c.log) != release_log_to_jsonl(a.log));
}

TEST_CASE("drift ratio recomputed from the serialized log matches the report") {
    const GridConfig g{0.0, 0.0, 1.0, 5, 5};
    ExperimentConfig cfg;
    cfg.grid = g;
    cfg.epsilon = 1.0;
    cfg.delta = 0.2;  // aggressive truncation so drift actually happens
    cfg.mechanism = MechanismKind::laplace;
    cfg.seed = 11;
    cfg.repetitions = 3;
    cfg.initial_prior = InitialPrior::uniform;

    const TransitionMatrix m = random_walk_matrix(g, 0.2);
    Rng sim(603);
    std::vector<std::vector<CellIndex>> trajectories{simulate_trajectory(m, 7, 50, sim)};

    const ExperimentResult res = run_experiment(cfg, trajectories, m, {});
    std::istringstream log(release_log_to_jsonl(res.log));
    CHECK(drift_ratio_from_jsonl(log) == doctest::Approx(res.metrics.drift_ratio));
    CHECK(res.metrics.drift_ratio > 0.0);
}

TEST_CASE("PIM yields closer releases than LM on an elongated scenario") {
    // A chain that walks a diagonal corridor: the delta-location sets are
    // stretched along the diagonal, which is where the isotropic mechanism
    // pays off.
    const GridConfig g{0.0, 0.0, 1.0, 16, 16};
    const auto corridor = diagonal_corridor_cells(g, 10, 2, 2);  // 20 cells
    const int n = static_cast<int>(corridor.size());

    std::ostringstream triplets;
    triplets.precision(17);
    triplets << g.cell_count() << "\n";
    for (int k = 0; k < n; ++k) {
        const int lo = std::max(0, k - 2);
        const int hi = std::min(n - 1, k + 2);
        const double p = 1.0 / (hi - lo + 1);
        for (int j = lo; j <= hi; ++j) {
            triplets << corridor[static_cast<std::size_t>(k)] << ' '
                     << corridor[static_cast<std::size_t>(j)] << ' ' << p << "\n";
        }
    }
    std::istringstream in(triplets.str());
    const TransitionMatrix m = TransitionMatrix::load(in);

    Rng sim(606);
    std::vector<std::vector<CellIndex>> trajectories{
        simulate_trajectory(m, corridor[4], 100, sim)};

    ExperimentConfig cfg;
    cfg.grid = g;
    cfg.epsilon = 1.0;
    cfg.delta = 0.01;
    cfg.seed = 3;
    cfg.repetitions = 3;
    cfg.initial_prior = InitialPrior::first_cell;

    cfg.mechanism = MechanismKind::pim;
    const ExperimentResult pim = run_experiment(cfg, trajectories, m, {});
    cfg.mechanism = MechanismKind::laplace;
    const ExperimentResult lm = run_experiment(cfg, trajectories, m, {});

    CHECK(pim.metrics.mean_distance < lm.metrics.mean_distance);
}

TEST_CASE("metrics serialization shapes") {
    MetricsReport report;
    report.mean_set_size = 3.5;
    report.drift_ratio = 0.1;
    report.mean_distance = 1.25;
    report.rms_distance = 1.5;
    report.total_steps = 40;
    report.set_size_over_time = {3.0, 4.0};
    report.drift_ratio_over_time = {0.0, 0.2};
    report.distance_over_time = {1.0, 1.5};
    report.knn.push_back({5, 10, 0.4, 0.8});

    const std::string json = report.to_json();
    CHECK(json.find("\"drift_ratio\": 0.1") != std::string::npos);
    CHECK(json.find("\"knn\"") != std::string::npos);
    const std::string csv = report.to_csv();
    CHECK(csv.find("drift_ratio,0.1") != std::string::npos);
    CHECK(csv.find("\n5,10,0.4") != std::string::npos);  // full precision follows
}

TEST_CASE("random_walk_matrix rows are stochastic and local") {
    const GridConfig g{0.0, 0.0, 1.0, 4, 5};
    const TransitionMatrix m = random_walk_matrix(g, 0.25);
    for (CellIndex i = 0; i < m.size(); ++i) {
        REQUIRE(m.row_sum(i) == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(m.at(i, i) == doctest::Approx(0.25));
    }
    // Corner cell spreads the move mass over its two neighbors.
    CHECK(m.at(0, 1) == doctest::Approx(0.375));
    CHECK(m.at(0, g.cell_at(1, 0)) == doctest::Approx(0.375));
}

TEST_CASE("simulate_trajectory stays on the chain support") {
    const GridConfig g{0.0, 0.0, 1.0, 5, 5};
    const TransitionMatrix m = random_walk_matrix(g, 0.3);
    Rng rng(604);
    const auto traj = simulate_trajectory(m, 12, 200, rng);
    REQUIRE(traj.size() == 200);
    for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
        REQUIRE(m.at(traj[t], traj[t + 1]) > 0.0);
    }
}

TEST_CASE("diagonal_corridor_cells layout") {
    const GridConfig g{0.0, 0.0, 1.0, 8, 8};
    const auto cells = diagonal_corridor_cells(g, 5);
    CHECK(cells.size() == 10);
    for (CellIndex c : cells) REQUIRE(g.valid_cell(c));
    CHECK_THROWS_AS(diagonal_corridor_cells(g, 9), std::invalid_argument);
}

TEST_CASE("random_blob_cells are connected, sized, and two-dimensional") {
    const GridConfig g{0.0, 0.0, 1.0, 12, 12};
    Rng rng(605);
    for (int trial = 0; trial < 50; ++trial) {
        const int size = 3 + static_cast<int>(uniform_index(rng, 18));
        const auto blob = random_blob_cells(g, size, rng);
        REQUIRE(static_cast<int>(blob.size()) == size);
        bool same_row = true, same_col = true;
        for (CellIndex c : blob) {
            same_row = same_row && g.row_of(c) == g.row_of(blob[0]);
            same_col = same_col && g.col_of(c) == g.col_of(blob[0]);
        }
        REQUIRE_FALSE(same_row);
        REQUIRE_FALSE(same_col);
    }
}
