#pragma once

#include "merit/delaunay.hpp"
#include "merit/geo.hpp"
#include "merit/solver.hpp"
#include "merit/weights.hpp"

#include <chrono>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace merit {

struct TooFewStationsError : std::runtime_error {
    explicit TooFewStationsError(int n)
        : std::runtime_error("only " + std::to_string(n) + " stations shared by both epochs; need 3") {}
};

struct TooFewRefsError : std::runtime_error {
    explicit TooFewRefsError(int n)
        : std::runtime_error("only " + std::to_string(n) +
                             " altimetry points inside the station hull; need 2") {}
};

struct EmptyGroupError : std::runtime_error {
    explicit EmptyGroupError(int lag)
        : std::runtime_error("no reconstruction results with epoch lag " + std::to_string(lag)) {}
};

// Stations valid at both epochs, projected into the working plane. Stations
// whose projected coordinates collide with an earlier one are skipped so the
// point set stays duplicate free.
struct CommonStations {
    std::vector<int> station_idx;
    std::vector<PointD> xy;
    int duplicates_skipped = 0;
};

inline CommonStations common_stations(const std::vector<StationSeries>& stations, int epoch_i,
                                      int epoch_j, const ProjectionAnchor& anchor) {
    CommonStations out;
    for (std::size_t s = 0; s < stations.size(); ++s) {
        if (!stations[s].values.count(epoch_i) || !stations[s].values.count(epoch_j)) continue;
        const PointD p = lap_project(stations[s].lon, stations[s].lat, anchor);
        bool dup = false;
        for (const PointD& q : out.xy) dup = dup || (q.x == p.x && q.y == p.y);
        if (dup) {
            ++out.duplicates_skipped;
            continue;
        }
        out.station_idx.push_back(static_cast<int>(s));
        out.xy.push_back(p);
    }
    if (out.xy.size() < 3) throw TooFewStationsError(static_cast<int>(out.xy.size()));
    return out;
}

struct VarianceResult {
    Rat sigma2;
    int n_refs = 0;
};

// Empirical variance of a lifted triangulation against the instance refs:
// sum of squared residuals over the refs that land inside the triangulated
// region, divided by n - 1. Refs outside the region contribute nothing and
// do not count toward n; neither do refs coinciding with a site.
template <typename T>
VarianceResult empirical_variance(const Instance<T>& inst, const std::vector<Tri>& tris) {
    const WeightTable table = precompute_weights(inst, tris);
    VarianceResult out;
    out.sigma2 = Rat(0);
    for (const auto& [tri, tw] : table.entries) {
        out.sigma2 += tw.w;
        out.n_refs += static_cast<int>(tw.refs.size());
    }
    if (out.n_refs < 2) throw TooFewRefsError(out.n_refs);
    out.sigma2 /= Rat(out.n_refs - 1);
    return out;
}

struct ReconstructConfig {
    ProjectionAnchor anchor{-40, 16};
    SolveOptions solve;
};

struct ReconstructionResult {
    int epoch_i = 0;
    int epoch_j = 0;
    int k = 0;
    int n_stations = 0;
    Rat sigma2_min_error;  // candidate trained at epoch i, evaluated at epoch j
    Rat sigma2_delaunay;   // Delaunay baseline on the same stations
    Rat delta_sigma2;      // sigma2_min_error - sigma2_delaunay
    double preprocess_seconds = 0;
    double optimize_seconds = 0;
};

namespace detail {

inline Instance<double> lifted_instance(const std::vector<StationSeries>& stations,
                                        const CommonStations& cs, int epoch,
                                        const AltimetryGrid& alt, const ProjectionAnchor& anchor) {
    Instance<double> inst;
    inst.points = cs.xy;
    inst.f.reserve(cs.station_idx.size());
    for (int s : cs.station_idx) inst.f.push_back(to_rational(stations[s].values.at(epoch)));
    inst.refs.reserve(alt.cells.size());
    inst.h.reserve(alt.cells.size());
    for (const AltimetryCell& c : alt.cells) {
        inst.refs.push_back(lap_project(c.lon, c.lat, anchor));
        inst.h.push_back(to_rational(c.anomaly_cm));
    }
    return inst;
}

}  // namespace detail

// Trains a minimum-error k-order-Delaunay triangulation on epoch i (station
// values f_i against altimetry A_i), then re-lifts the fixed triangulation and
// the Delaunay baseline with epoch-j values and scores both against A_j.
inline ReconstructionResult reconstruct(const std::vector<StationSeries>& stations,
                                        const AltimetryGrid& alt_i, const AltimetryGrid& alt_j,
                                        int epoch_i, int epoch_j, int k,
                                        const ReconstructConfig& config = {}) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    const CommonStations cs = common_stations(stations, epoch_i, epoch_j, config.anchor);
    const Instance<double> train =
        detail::lifted_instance(stations, cs, epoch_i, alt_i, config.anchor);
    const Triangulation<double> baseline = delaunay_triangulation(train.points);

    const auto t1 = clock::now();
    const DpResult<double> solved = min_error_triangulation(train, k, config.solve);
    const auto t2 = clock::now();

    const Instance<double> eval =
        detail::lifted_instance(stations, cs, epoch_j, alt_j, config.anchor);

    ReconstructionResult out;
    out.epoch_i = epoch_i;
    out.epoch_j = epoch_j;
    out.k = k;
    out.n_stations = static_cast<int>(cs.xy.size());
    out.sigma2_min_error = empirical_variance(eval, solved.triangulation.triangles).sigma2;
    out.sigma2_delaunay = empirical_variance(eval, baseline.triangles).sigma2;
    out.delta_sigma2 = out.sigma2_min_error - out.sigma2_delaunay;

    const auto t3 = clock::now();
    const auto secs = [](auto d) { return std::chrono::duration<double>(d).count(); };
    out.preprocess_seconds = secs(t1 - t0) + secs(t3 - t2);
    out.optimize_seconds = secs(t2 - t1);
    return out;
}

// Mean delta sigma^2 over all results whose epoch lag |i - j| equals `lag`.
inline Rat average_variance_reduction(const std::vector<ReconstructionResult>& results, int lag) {
    Rat sum(0);
    int count = 0;
    for (const ReconstructionResult& r : results) {
        const int d = r.epoch_i >= r.epoch_j ? r.epoch_i - r.epoch_j : r.epoch_j - r.epoch_i;
        if (d != lag) continue;
        sum += r.delta_sigma2;
        ++count;
    }
    if (count == 0) throw EmptyGroupError(lag);
    return sum / Rat(count);
}

// Full evaluation grid: every ordered pair (i, j) with i >= j whose lag is a
// multiple of `stride` (stride 12 keeps comparisons in the same season).
inline std::vector<std::pair<int, int>> epoch_pairs(const std::vector<int>& epochs, int stride) {
    if (stride < 1) throw std::invalid_argument("epoch_pairs: stride >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (int i : epochs)
        for (int j : epochs)
            if (i >= j && (i - j) % stride == 0) pairs.emplace_back(i, j);
    return pairs;
}

}  // namespace merit
