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

#include "locpriv/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace locpriv {

std::string initial_prior_name(InitialPrior p) {
    switch (p) {
        case InitialPrior::training_cells: return "training";
        case InitialPrior::uniform: return "uniform";
        case InitialPrior::first_cell: return "first-cell";
    }
    throw std::logic_error("initial_prior_name: unreachable");
}

InitialPrior initial_prior_from_name(const std::string& name) {
    if (name == "training") return InitialPrior::training_cells;
    if (name == "uniform") return InitialPrior::uniform;
    if (name == "first-cell") return InitialPrior::first_cell;
    throw std::invalid_argument("unknown initial_prior: " + name);
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

class KeyValues {
  public:
    explicit KeyValues(std::istream& in) {
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto comment = line.find('#');
            if (comment != std::string::npos) line.erase(comment);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": expected key = value");
            }
            values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("config key " + key + ": bad number '" + it->second + "'");
        }
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoll(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("config key " + key + ": bad integer '" + it->second + "'");
        }
    }

    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoull(it->second);
        } catch (const std::exception&) {
            throw std::runtime_error("config key " + key + ": bad integer '" + it->second + "'");
        }
    }

  private:
    std::map<std::string, std::string> values_;
};

template <typename T>
std::vector<T> parse_number_list(const std::string& s) {
    std::vector<T> out;
    for (const std::string& item : split_list(s)) {
        out.push_back(static_cast<T>(std::stod(item)));
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& items) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out << ", ";
        out << items[i];
    }
    return out.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    const KeyValues kv(in);
    ExperimentConfig cfg;
    cfg.grid.min_x = kv.get_double("grid.min_x", cfg.grid.min_x);
    cfg.grid.min_y = kv.get_double("grid.min_y", cfg.grid.min_y);
    cfg.grid.cell_size = kv.get_double("grid.cell_size", cfg.grid.cell_size);
    cfg.grid.rows = static_cast<int>(kv.get_int("grid.rows", cfg.grid.rows));
    cfg.grid.cols = static_cast<int>(kv.get_int("grid.cols", cfg.grid.cols));
    cfg.epsilon = kv.get_double("epsilon", cfg.epsilon);
    cfg.delta = kv.get_double("delta", cfg.delta);
    cfg.mechanism = mechanism_from_name(kv.get("mechanism", mechanism_name(cfg.mechanism)));
    cfg.trajectories = split_list(kv.get("trajectories", ""));
    cfg.trajectory_format = kv.get("trajectory_format", cfg.trajectory_format);
    cfg.reference_latitude = kv.get_double("reference_latitude", cfg.reference_latitude);
    cfg.matrix_path = kv.get("matrix", cfg.matrix_path);
    cfg.smoothing = kv.get_double("smoothing", cfg.smoothing);
    cfg.seed = kv.get_uint("seed", cfg.seed);
    cfg.repetitions = static_cast<int>(kv.get_int("repetitions", cfg.repetitions));
    cfg.initial_prior =
        initial_prior_from_name(kv.get("initial_prior", initial_prior_name(cfg.initial_prior)));
    cfg.poi_path = kv.get("pois", cfg.poi_path);
    if (kv.has("knn.k")) cfg.knn_k = parse_number_list<int>(kv.get("knn.k", ""));
    if (kv.has("knn.kprime")) cfg.knn_kprime = parse_number_list<int>(kv.get("knn.kprime", ""));

    cfg.audit.kind = kv.get("audit.kind", cfg.audit.kind);
    if (kv.has("audit.cells")) {
        cfg.audit.cells = parse_number_list<CellIndex>(kv.get("audit.cells", ""));
    }
    if (kv.has("audit.prior")) {
        cfg.audit.prior = parse_number_list<double>(kv.get("audit.prior", ""));
    }
    cfg.audit.samples = kv.get_uint("audit.samples", cfg.audit.samples);
    cfg.audit.slack = kv.get_double("audit.slack", cfg.audit.slack);
    cfg.audit.min_bin_count = kv.get_uint("audit.min_bin_count", cfg.audit.min_bin_count);
    cfg.audit.bins = static_cast<int>(kv.get_int("audit.bins", cfg.audit.bins));
    cfg.audit.mechanism_epsilon = kv.get_double("audit.mechanism_epsilon", 0.0);
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path);
    }
    return parse(in);
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "grid.min_x = " << grid.min_x << "\n";
    out << "grid.min_y = " << grid.min_y << "\n";
    out << "grid.cell_size = " << grid.cell_size << "\n";
    out << "grid.rows = " << grid.rows << "\n";
    out << "grid.cols = " << grid.cols << "\n";
    out << "epsilon = " << epsilon << "\n";
    out << "delta = " << delta << "\n";
    out << "mechanism = " << mechanism_name(mechanism) << "\n";
    if (!trajectories.empty()) out << "trajectories = " << join(trajectories) << "\n";
    out << "trajectory_format = " << trajectory_format << "\n";
    out << "reference_latitude = " << reference_latitude << "\n";
    if (!matrix_path.empty()) out << "matrix = " << matrix_path << "\n";
    out << "smoothing = " << smoothing << "\n";
    out << "seed = " << seed << "\n";
    out << "repetitions = " << repetitions << "\n";
    out << "initial_prior = " << initial_prior_name(initial_prior) << "\n";
    if (!poi_path.empty()) out << "pois = " << poi_path << "\n";
    out << "knn.k = " << join_numbers(knn_k) << "\n";
    out << "knn.kprime = " << join_numbers(knn_kprime) << "\n";
    out << "audit.kind = " << audit.kind << "\n";
    if (!audit.cells.empty()) out << "audit.cells = " << join_numbers(audit.cells) << "\n";
    if (!audit.prior.empty()) out << "audit.prior = " << join_numbers(audit.prior) << "\n";
    out << "audit.samples = " << audit.samples << "\n";
    out << "audit.slack = " << audit.slack << "\n";
    out << "audit.min_bin_count = " << audit.min_bin_count << "\n";
    out << "audit.bins = " << audit.bins << "\n";
    if (audit.mechanism_epsilon > 0.0) {
        out << "audit.mechanism_epsilon = " << audit.mechanism_epsilon << "\n";
    }
    return out.str();
}

void ExperimentConfig::validate() const {
    grid.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be > 0");
    if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("config: delta must be in [0,1)");
    if (repetitions < 1) throw std::invalid_argument("config: repetitions must be >= 1");
    if (trajectory_format != "cell-csv" && trajectory_format != "latlon-csv") {
        throw std::invalid_argument("config: trajectory_format must be cell-csv or latlon-csv");
    }
}

}  // namespace locpriv
