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

#include "locpriv/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace locpriv {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& s, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": bad number '"
                                 + s + "'");
    }
}

}  // namespace

TrajectoryFormat trajectory_format_from_name(const std::string& name) {
    if (name == "cell-csv") return TrajectoryFormat::cell_csv;
    if (name == "latlon-csv") return TrajectoryFormat::latlon_csv;
    throw std::invalid_argument("unknown trajectory format: " + name);
}

MapPoint project_latlon(double lat_deg, double lon_deg, double reference_lat_deg) {
    return {kEarthRadiusKm * lon_deg * kDegToRad * std::cos(reference_lat_deg * kDegToRad),
            kEarthRadiusKm * lat_deg * kDegToRad};
}

ParsedTrajectories parse_trajectories(std::istream& in, TrajectoryFormat format,
                                      const GridConfig& g, double reference_lat_deg) {
    ParsedTrajectories result;
    std::vector<CellIndex> current;
    double last_timestamp = -std::numeric_limits<double>::infinity();
    bool have_last = false;

    const auto flush = [&]() {
        if (!current.empty()) {
            result.trajectories.push_back(std::move(current));
            current.clear();
        }
        have_last = false;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) {
            flush();  // blank line separates trajectories
            continue;
        }
        const auto fields = split_csv(line);
        const std::size_t expected = format == TrajectoryFormat::cell_csv ? 2 : 3;
        if (fields.size() != expected) {
            throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(expected) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        const double timestamp = parse_double(fields[0], line_no);
        if (have_last && !(timestamp > last_timestamp)) {
            throw std::runtime_error("trajectory line " + std::to_string(line_no) +
                                     ": timestamps must be strictly increasing");
        }
        last_timestamp = timestamp;
        have_last = true;

        if (format == TrajectoryFormat::cell_csv) {
            const double raw = parse_double(fields[1], line_no);
            const auto cell = static_cast<CellIndex>(raw);
            if (static_cast<double>(cell) != raw || !g.valid_cell(cell)) {
                throw std::runtime_error("trajectory line " + std::to_string(line_no) +
                                         ": bad cell index '" + fields[1] + "'");
            }
            current.push_back(cell);
        } else {
            const double lat = parse_double(fields[1], line_no);
            const double lon = parse_double(fields[2], line_no);
            const auto cell = coord_to_cell(project_latlon(lat, lon, reference_lat_deg), g);
            if (cell.has_value()) {
                current.push_back(*cell);
            } else {
                ++result.dropped_out_of_grid;
            }
        }
    }
    flush();
    if (result.trajectories.empty()) {
        throw std::runtime_error("trajectory file contains no usable rows");
    }
    return result;
}

ParsedTrajectories parse_trajectories_file(const std::string& path, TrajectoryFormat format,
                                           const GridConfig& g, double reference_lat_deg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trajectory: cannot open " + path);
    return parse_trajectories(in, format, g, reference_lat_deg);
}

std::vector<MapPoint> parse_pois(std::istream& in) {
    std::vector<MapPoint> pois;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw std::runtime_error("poi line " + std::to_string(line_no) +
                                     ": expected 2 fields");
        }
        pois.push_back({parse_double(fields[0], line_no), parse_double(fields[1], line_no)});
    }
    if (pois.empty()) {
        throw std::runtime_error("poi file contains no rows");
    }
    return pois;
}

std::vector<MapPoint> parse_pois_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("poi: cannot open " + path);
    return parse_pois(in);
}

}  // namespace locpriv
