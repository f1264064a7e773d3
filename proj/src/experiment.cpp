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

#include "locpriv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "locpriv/trajectory.hpp"

namespace locpriv {

namespace {

ProbVector initial_posterior(const ExperimentConfig& cfg,
                             const std::vector<std::vector<CellIndex>>& trajectories,
                             const std::vector<CellIndex>& trajectory) {
    const int m = cfg.grid.cell_count();
    switch (cfg.initial_prior) {
        case InitialPrior::uniform:
            return ProbVector::uniform(m);
        case InitialPrior::first_cell:
            return ProbVector::point_mass(m, trajectory.front());
        case InitialPrior::training_cells: {
            std::set<CellIndex> visited;
            for (const auto& t : trajectories) {
                visited.insert(t.begin(), t.end());
            }
            if (visited.empty()) {
                return ProbVector::uniform(m);
            }
            const std::vector<CellIndex> cells(visited.begin(), visited.end());
            return ProbVector::uniform_over(m, cells);
        }
    }
    throw std::logic_error("initial_posterior: unreachable");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::vector<std::vector<CellIndex>>& trajectories,
                                const TransitionMatrix& model,
                                const std::vector<MapPoint>& pois) {
    cfg.validate();
    if (trajectories.empty()) {
        throw std::invalid_argument("run_experiment: no trajectories");
    }
    if (model.size() != cfg.grid.cell_count()) {
        throw std::invalid_argument("run_experiment: matrix size does not match grid");
    }

    StepOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.delta = cfg.delta;
    opts.mechanism = cfg.mechanism;

    ExperimentResult result;
    std::size_t max_len = 0;
    for (const auto& t : trajectories) max_len = std::max(max_len, t.size());
    std::vector<double> size_sum(max_len, 0.0);
    std::vector<double> drift_sum(max_len, 0.0);
    std::vector<double> dist_sum(max_len, 0.0);
    std::vector<std::uint64_t> step_count(max_len, 0);

    double total_size = 0.0, total_drift = 0.0, total_dist = 0.0, total_sq_dist = 0.0;
    std::uint64_t total_steps = 0;

    // kNN accumulators per (k, kprime) pair with kprime >= k.
    struct KnnAcc {
        int k, kprime;
        double precision_sum = 0.0, recall_sum = 0.0;
    };
    std::vector<KnnAcc> knn_acc;
    if (!pois.empty()) {
        for (int k : cfg.knn_k) {
            for (int kprime : cfg.knn_kprime) {
                if (kprime >= k && kprime <= static_cast<int>(pois.size())) {
                    knn_acc.push_back({k, kprime});
                }
            }
        }
    }

    for (std::size_t ti = 0; ti < trajectories.size(); ++ti) {
        const auto& traj = trajectories[ti];
        if (traj.empty()) {
            throw std::invalid_argument("run_experiment: trajectory " + std::to_string(ti) +
                                        " is empty");
        }
        const ProbVector start = initial_posterior(cfg, trajectories, traj);
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            Rng rng(derive_seed(cfg.seed, ti, static_cast<std::uint64_t>(rep)));
            std::vector<StepRecord> records;
            try {
                records = run_trajectory(traj, start, model, cfg.grid, opts, rng);
            } catch (const std::exception& e) {
                throw std::runtime_error("trajectory " + std::to_string(ti) + " repetition " +
                                         std::to_string(rep) + ": " + e.what());
            }
            for (const StepRecord& rec : records) {
                const auto t = static_cast<std::size_t>(rec.t);
                const double dist =
                    euclidean_distance(rec.release.z, cell_center(rec.true_cell, cfg.grid));
                size_sum[t] += static_cast<double>(rec.delta_set.size());
                drift_sum[t] += rec.drifted ? 1.0 : 0.0;
                dist_sum[t] += dist;
                step_count[t] += 1;
                total_size += static_cast<double>(rec.delta_set.size());
                total_drift += rec.drifted ? 1.0 : 0.0;
                total_dist += dist;
                total_sq_dist += dist * dist;
                ++total_steps;
                for (KnnAcc& acc : knn_acc) {
                    const auto [precision, recall] =
                        knn_eval(rec.release.z, cell_center(rec.true_cell, cfg.grid), pois, acc.k,
                                 acc.kprime);
                    acc.precision_sum += precision;
                    acc.recall_sum += recall;
                }
                result.log.push_back({static_cast<int>(ti), rep, rec});
            }
        }
    }

    MetricsReport& report = result.metrics;
    report.total_steps = total_steps;
    report.mean_set_size = total_size / static_cast<double>(total_steps);
    report.drift_ratio = total_drift / static_cast<double>(total_steps);
    report.mean_distance = total_dist / static_cast<double>(total_steps);
    report.rms_distance = std::sqrt(total_sq_dist / static_cast<double>(total_steps));
    for (std::size_t t = 0; t < max_len; ++t) {
        const double n = static_cast<double>(step_count[t]);
        report.set_size_over_time.push_back(size_sum[t] / n);
        report.drift_ratio_over_time.push_back(drift_sum[t] / n);
        report.distance_over_time.push_back(dist_sum[t] / n);
    }
    for (const KnnAcc& acc : knn_acc) {
        report.knn.push_back({acc.k, acc.kprime,
                              acc.precision_sum / static_cast<double>(total_steps),
                              acc.recall_sum / static_cast<double>(total_steps)});
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.trajectories.empty()) {
        throw std::invalid_argument("run_experiment: config lists no trajectory files");
    }
    const TrajectoryFormat format = trajectory_format_from_name(cfg.trajectory_format);
    std::vector<std::vector<CellIndex>> trajectories;
    for (const std::string& path : cfg.trajectories) {
        auto parsed = parse_trajectories_file(path, format, cfg.grid, cfg.reference_latitude);
        for (auto& t : parsed.trajectories) {
            trajectories.push_back(std::move(t));
        }
    }

    TransitionMatrix model = cfg.matrix_path.empty()
                                 ? TransitionMatrix::learn(trajectories, cfg.grid.cell_count(),
                                                           cfg.smoothing)
                                 : TransitionMatrix::load_file(cfg.matrix_path);

    std::vector<MapPoint> pois;
    if (!cfg.poi_path.empty()) {
        pois = parse_pois_file(cfg.poi_path);
    }
    return run_experiment(cfg, trajectories, model, pois);
}

std::string release_log_to_jsonl(const std::vector<LoggedStep>& log) {
    std::string out;
    for (const LoggedStep& entry : log) {
        nlohmann::json j;
        j["trajectory"] = entry.trajectory;
        j["repetition"] = entry.repetition;
        j["t"] = entry.step.t;
        j["delta_set"] = entry.step.delta_set;
        j["drifted"] = entry.step.drifted;
        j["z"] = {{"x", entry.step.release.z.x}, {"y", entry.step.release.z.y}};
        j["mechanism"] = mechanism_name(entry.step.release.context.kind);
        j["epsilon"] = entry.step.release.context.epsilon;
        j["hull_area"] = entry.step.release.context.hull_area;
        j["true_cell"] = entry.step.true_cell;
        if (entry.step.release.context.kind == MechanismKind::pim) {
            const Matrix2& t = entry.step.release.context.transform;
            j["transform"] = {t.a, t.b, t.c, t.d};
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

double drift_ratio_from_jsonl(std::istream& in) {
    std::string line;
    std::uint64_t steps = 0, drifted = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        ++steps;
        if (j.at("drifted").get<bool>()) ++drifted;
    }
    if (steps == 0) {
        throw std::runtime_error("drift_ratio_from_jsonl: empty log");
    }
    return static_cast<double>(drifted) / static_cast<double>(steps);
}

}  // namespace locpriv
