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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locpriv/audit.hpp"
#include "locpriv/config.hpp"
#include "locpriv/experiment.hpp"
#include "locpriv/metrics.hpp"
#include "locpriv/trajectory.hpp"

namespace {

namespace fs = std::filesystem;
using namespace locpriv;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file")->required();
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
}

ExperimentConfig load_config(const CommonArgs& args) {
    ExperimentConfig cfg = ExperimentConfig::parse_file(args.config_path);
    if (args.seed.has_value()) cfg.seed = *args.seed;
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
}

int run_learn(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args);
    cfg.grid.validate();
    if (cfg.trajectories.empty()) {
        throw std::runtime_error("learn: config lists no trajectory files");
    }
    const TrajectoryFormat format = trajectory_format_from_name(cfg.trajectory_format);
    std::vector<std::vector<CellIndex>> trajectories;
    int dropped = 0;
    for (const std::string& path : cfg.trajectories) {
        auto parsed = parse_trajectories_file(path, format, cfg.grid, cfg.reference_latitude);
        dropped += parsed.dropped_out_of_grid;
        for (auto& t : parsed.trajectories) trajectories.push_back(std::move(t));
    }
    if (dropped > 0) {
        std::fprintf(stderr, "warning: %d rows fell outside the grid and were dropped\n", dropped);
    }
    const TransitionMatrix m =
        TransitionMatrix::learn(trajectories, cfg.grid.cell_count(), cfg.smoothing);

    fs::create_directories(args.out_dir);
    const fs::path out = cfg.matrix_path.empty() ? fs::path(args.out_dir) / "model.mtx"
                                                 : fs::path(cfg.matrix_path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    m.save_file(out.string());
    std::printf("wrote %s (m = %d, %zu trajectories)\n", out.string().c_str(), m.size(),
                trajectories.size());
    return 0;
}

int run_run(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const ExperimentResult result = run_experiment(cfg);

    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);
    if (args.format == "csv") {
        write_file(out / "metrics.csv", result.metrics.to_csv());
    } else {
        write_file(out / "metrics.json", result.metrics.to_json());
    }
    write_file(out / "releases.jsonl", release_log_to_jsonl(result.log));

    std::printf("steps %llu | mean |dX| %.3f | drift %.4f | mean dist %.4f | rms %.4f\n",
                static_cast<unsigned long long>(result.metrics.total_steps),
                result.metrics.mean_set_size, result.metrics.drift_ratio,
                result.metrics.mean_distance, result.metrics.rms_distance);
    return 0;
}

int run_audit(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    cfg.grid.validate();
    const AuditConfig& audit = cfg.audit;
    if (audit.cells.size() < 2) {
        throw std::runtime_error("audit: audit.cells must list at least two cells");
    }
    const double claimed = cfg.epsilon;
    const double mech_eps = audit.mechanism_epsilon > 0.0 ? audit.mechanism_epsilon : claimed;

    // The audit sees the mechanism only as a sampling closure.
    ReleaseSampler sampler;
    std::optional<PimMechanism> pim;
    std::optional<LaplaceMechanism> lm;
    if (cfg.mechanism == MechanismKind::pim) {
        pim.emplace(mech_eps, audit.cells, cfg.grid);
        sampler = [&pim](CellIndex c, Rng& rng) { return pim->sample(c, rng); };
    } else {
        lm.emplace(mech_eps, audit.cells, cfg.grid);
        sampler = [&lm](CellIndex c, Rng& rng) { return lm->sample(c, rng); };
    }

    Rng rng(derive_seed(cfg.seed, 0xa0d17, 0));
    const BinGrid bins =
        make_release_bin_grid(sampler, audit.cells, cfg.grid, rng, audit.bins);

    AuditReport report;
    if (audit.kind == "dp_ratio") {
        DpAuditOptions opts;
        opts.samples_per_cell = audit.samples;
        opts.slack = audit.slack;
        opts.min_bin_count = audit.min_bin_count;
        report = dp_ratio_audit(sampler, claimed, audit.cells, cfg.grid, bins, opts, rng);
    } else if (audit.kind == "adversarial") {
        std::vector<double> weights = audit.prior;
        if (weights.empty()) {
            weights.assign(audit.cells.size(), 1.0 / static_cast<double>(audit.cells.size()));
        }
        if (weights.size() != audit.cells.size()) {
            throw std::runtime_error("audit: audit.prior length must match audit.cells");
        }
        std::vector<double> full(static_cast<std::size_t>(cfg.grid.cell_count()), 0.0);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            full[static_cast<std::size_t>(audit.cells[i])] = weights[i];
        }
        AdversarialAuditOptions opts;
        opts.total_samples = audit.samples;
        opts.slack = audit.slack;
        opts.min_bin_count = audit.min_bin_count;
        report = adversarial_audit(sampler, claimed, audit.cells, ProbVector(full), cfg.grid,
                                   bins, opts, rng);
    } else {
        throw std::runtime_error("audit: audit.kind must be dp_ratio or adversarial");
    }

    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / "audit.json", audit_report_to_json(report));
    std::printf("%s audit: max ratio %.4f vs threshold %.4f -> %s\n", report.kind.c_str(),
                report.max_ratio, report.threshold, report.pass ? "PASS" : "FAIL");
    return report.pass ? 0 : 1;
}

int run_knn(const CommonArgs& args, const std::string& log_path) {
    const ExperimentConfig cfg = load_config(args);
    cfg.grid.validate();
    if (cfg.poi_path.empty()) {
        throw std::runtime_error("knn: config sets no pois file");
    }
    const std::vector<MapPoint> pois = parse_pois_file(cfg.poi_path);

    std::ifstream log(log_path);
    if (!log) throw std::runtime_error("knn: cannot open " + log_path);

    struct Acc {
        int k, kprime;
        double precision = 0.0, recall = 0.0;
    };
    std::vector<Acc> table;
    for (int k : cfg.knn_k) {
        for (int kprime : cfg.knn_kprime) {
            if (kprime >= k && kprime <= static_cast<int>(pois.size())) {
                table.push_back({k, kprime});
            }
        }
    }
    if (table.empty()) {
        throw std::runtime_error("knn: no valid (k, kprime) pairs for this POI set");
    }

    std::string line;
    std::uint64_t steps = 0;
    while (std::getline(log, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const MapPoint released{j.at("z").at("x").get<double>(), j.at("z").at("y").get<double>()};
        const MapPoint truth = cell_center(j.at("true_cell").get<CellIndex>(), cfg.grid);
        for (Acc& acc : table) {
            const auto [precision, recall] = knn_eval(released, truth, pois, acc.k, acc.kprime);
            acc.precision += precision;
            acc.recall += recall;
        }
        ++steps;
    }
    if (steps == 0) throw std::runtime_error("knn: release log is empty");

    fs::create_directories(args.out_dir);
    if (args.format == "csv") {
        std::ostringstream out;
        out.precision(17);
        out << "k,kprime,precision,recall\n";
        for (const Acc& acc : table) {
            out << acc.k << ',' << acc.kprime << ',' << acc.precision / steps << ','
                << acc.recall / steps << "\n";
        }
        write_file(fs::path(args.out_dir) / "knn.csv", out.str());
    } else {
        auto rows = nlohmann::json::array();
        for (const Acc& acc : table) {
            rows.push_back({{"k", acc.k},
                            {"kprime", acc.kprime},
                            {"precision", acc.precision / steps},
                            {"recall", acc.recall / steps}});
        }
        write_file(fs::path(args.out_dir) / "knn.json", nlohmann::json(rows).dump(2) + "\n");
    }
    for (const Acc& acc : table) {
        std::printf("k=%d kprime=%d precision %.4f recall %.4f\n", acc.k, acc.kprime,
                    acc.precision / steps, acc.recall / steps);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentially private location release under temporal correlations"};
    app.require_subcommand(1);

    CommonArgs learn_args, run_args, audit_args, knn_args;
    std::string knn_log;

    CLI::App* learn = app.add_subcommand("learn", "learn a transition matrix from trajectories");
    add_common(learn, learn_args);
    CLI::App* run = app.add_subcommand("run", "run an experiment and write reports");
    add_common(run, run_args);
    CLI::App* audit = app.add_subcommand("audit", "empirical privacy audit (exit 0 pass, 1 fail)");
    add_common(audit, audit_args);
    CLI::App* knn = app.add_subcommand("knn", "kNN precision/recall from a release log");
    add_common(knn, knn_args);
    knn->add_option("--log", knn_log, "release log (JSON lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (learn->parsed()) return run_learn(learn_args);
        if (run->parsed()) return run_run(run_args);
        if (audit->parsed()) return run_audit(audit_args);
        if (knn->parsed()) return run_knn(knn_args, knn_log);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
