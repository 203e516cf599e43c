#pragma once

#include "merit/point.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace merit {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

struct EpochMissingError : std::runtime_error {
    explicit EpochMissingError(int epoch)
        : std::runtime_error("no altimetry cells for epoch " + std::to_string(epoch)) {}
};

struct NoValidEpochsError : std::runtime_error {
    NoValidEpochsError() : std::runtime_error("station has no valid epochs") {}
};

struct AntipodalPointError : std::runtime_error {
    AntipodalPointError() : std::runtime_error("point is antipodal to the projection anchor") {}
};

// Monthly series for one tide gauge. Values are stored in cm; epochs index
// months since 1993-01. A missing epoch is simply absent from the map, so
// invalid measurements can never masquerade as zeros.
struct StationSeries {
    std::string station_id;
    double lon = 0;
    double lat = 0;
    std::map<int, double> values;
};

struct AltimetryCell {
    double lon = 0;
    double lat = 0;
    double anomaly_cm = 0;
};

struct AltimetryGrid {
    int epoch = 0;
    std::vector<AltimetryCell> cells;
    int skipped = 0;
};

struct ProjectionAnchor {
    double lon0 = 0;
    double lat0 = 0;
};

// Inclusive epoch window; defaults cover everything.
struct TimeFrame {
    int start = std::numeric_limits<int>::min();
    int end = std::numeric_limits<int>::max();
    bool contains(int epoch) const { return start <= epoch && epoch <= end; }
};

struct StationLoadResult {
    std::vector<StationSeries> stations;
    int dropped = 0;
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : row) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

inline double parse_number(const std::string& s, const char* what, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("cannot parse ") + what + " '" + s + "'", line);
    }
}

inline void check_lon_lat(double lon, double lat) {
    if (lon < -180 || lon > 180) throw RangeError("longitude out of [-180, 180]");
    if (lat < -90 || lat > 90) throw RangeError("latitude out of [-90, 90]");
}

}  // namespace detail

// Stations CSV: header `station_id,lon,lat,epoch,value_mm`, one row per
// station-epoch. Values convert mm -> cm. Rows with an empty or NaN value
// mark the epoch invalid. Stations without any valid epoch in the frame
// are dropped and counted.
inline StationLoadResult load_stations(std::istream& in, TimeFrame frame = {}) {
    std::string row;
    int line = 0;
    if (!std::getline(in, row)) throw ParseError("empty stations file", 1);
    ++line;
    if (detail::split_csv_row(row) !=
        std::vector<std::string>{"station_id", "lon", "lat", "epoch", "value_mm"})
        throw ParseError("unexpected stations header", line);

    std::vector<StationSeries> order;
    std::map<std::string, std::size_t> index;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) continue;
        const auto f = detail::split_csv_row(row);
        if (f.size() != 5) throw ParseError("expected 5 fields", line);
        const double lon = detail::parse_number(f[1], "lon", line);
        const double lat = detail::parse_number(f[2], "lat", line);
        detail::check_lon_lat(lon, lat);
        const int epoch = static_cast<int>(detail::parse_number(f[3], "epoch", line));

        auto [it, fresh] = index.try_emplace(f[0], order.size());
        if (fresh) {
            StationSeries s;
            s.station_id = f[0];
            s.lon = lon;
            s.lat = lat;
            order.push_back(std::move(s));
        }
        if (!frame.contains(epoch)) continue;
        if (f[4].empty()) continue;
        const double mm = detail::parse_number(f[4], "value_mm", line);
        if (std::isnan(mm)) continue;
        order[it->second].values[epoch] = mm / 10.0;
    }

    StationLoadResult out;
    for (auto& s : order) {
        if (s.values.empty())
            ++out.dropped;
        else
            out.stations.push_back(std::move(s));
    }
    return out;
}

inline StationLoadResult load_stations_file(const std::string& path, TimeFrame frame = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stations file: " + path);
    return load_stations(in, frame);
}

// Altimetry CSV: header `epoch,lon,lat,anomaly_cm`; rows for all epochs may
// share one file. NaN anomalies are omitted and counted.
inline AltimetryGrid load_altimetry(std::istream& in, int epoch) {
    std::string row;
    int line = 0;
    if (!std::getline(in, row)) throw ParseError("empty altimetry file", 1);
    ++line;
    if (detail::split_csv_row(row) != std::vector<std::string>{"epoch", "lon", "lat", "anomaly_cm"})
        throw ParseError("unexpected altimetry header", line);

    AltimetryGrid grid;
    grid.epoch = epoch;
    bool epoch_seen = false;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) continue;
        const auto f = detail::split_csv_row(row);
        if (f.size() != 4) throw ParseError("expected 4 fields", line);
        const int e = static_cast<int>(detail::parse_number(f[0], "epoch", line));
        if (e != epoch) continue;
        epoch_seen = true;
        const double lon = detail::parse_number(f[1], "lon", line);
        const double lat = detail::parse_number(f[2], "lat", line);
        detail::check_lon_lat(lon, lat);
        if (f[3].empty()) {
            ++grid.skipped;
            continue;
        }
        const double v = detail::parse_number(f[3], "anomaly_cm", line);
        if (std::isnan(v)) {
            ++grid.skipped;
            continue;
        }
        grid.cells.push_back({lon, lat, v});
    }
    if (!epoch_seen) throw EpochMissingError(epoch);
    return grid;
}

inline AltimetryGrid load_altimetry_file(const std::string& path, int epoch) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open altimetry file: " + path);
    return load_altimetry(in, epoch);
}

// Subtracts the station's mean over its valid epochs.
inline StationSeries demean(const StationSeries& s) {
    if (s.values.empty()) throw NoValidEpochsError();
    double mean = 0;
    for (const auto& [e, v] : s.values) mean += v;
    mean /= static_cast<double>(s.values.size());
    StationSeries out = s;
    for (auto& [e, v] : out.values) v -= mean;
    return out;
}

// Lambert azimuthal equal-area forward projection on the unit sphere.
inline PointD lap_project(double lon, double lat, const ProjectionAnchor& anchor) {
    detail::check_lon_lat(lon, lat);
    detail::check_lon_lat(anchor.lon0, anchor.lat0);
    const double deg = 0.017453292519943295;
    const double phi = lat * deg, phi0 = anchor.lat0 * deg;
    const double dl = (lon - anchor.lon0) * deg;
    const double denom = 1 + std::sin(phi0) * std::sin(phi) + std::cos(phi0) * std::cos(phi) * std::cos(dl);
    if (denom < 1e-12) throw AntipodalPointError();
    const double kp = std::sqrt(2.0 / denom);
    return {kp * std::cos(phi) * std::sin(dl),
            kp * (std::cos(phi0) * std::sin(phi) - std::sin(phi0) * std::cos(phi) * std::cos(dl))};
}

// Cell centers of a uniform rows x cols grid over longitude x latitude.
inline std::vector<ProjectionAnchor> anchor_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("anchor_grid: rows, cols >= 1");
    std::vector<ProjectionAnchor> anchors;
    anchors.reserve(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            anchors.push_back({-180.0 + (i + 0.5) * 360.0 / rows, -90.0 + (j + 0.5) * 180.0 / cols});
    return anchors;
}

}  // namespace merit
