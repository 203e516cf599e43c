#include "merit/reconstruct.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace merit {
namespace {

StationSeries station(std::string id, double lon, double lat,
                      std::vector<std::pair<int, double>> vals) {
    StationSeries s;
    s.station_id = std::move(id);
    s.lon = lon;
    s.lat = lat;
    for (auto [e, v] : vals) s.values[e] = v;
    return s;
}

// Jittered station grid over [-50,-30] x [6,26] with values from a surface
// callback evaluated in geographic coordinates.
template <typename F>
std::vector<StationSeries> synthetic_stations(const std::vector<int>& epochs, F&& surface) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> jit(-0.4, 0.4);
    std::vector<StationSeries> out;
    for (int gx = 0; gx < 5; ++gx)
        for (int gy = 0; gy < 4; ++gy) {
            const double lon = -50.0 + 5.0 * gx + jit(rng);
            const double lat = 6.0 + 6.5 * gy + jit(rng);
            StationSeries s;
            s.station_id = "S" + std::to_string(gx) + std::to_string(gy);
            s.lon = lon;
            s.lat = lat;
            for (int e : epochs) s.values[e] = surface(lon, lat, e);
            out.push_back(std::move(s));
        }
    return out;
}

template <typename F>
AltimetryGrid synthetic_altimetry(int epoch, F&& surface) {
    AltimetryGrid g;
    g.epoch = epoch;
    for (double lon = -47.0; lon <= -33.0; lon += 2.0)
        for (double lat = 9.0; lat <= 23.0; lat += 2.0)
            g.cells.push_back({lon, lat, surface(lon, lat, epoch)});
    return g;
}

double rough_surface(double lon, double lat, int epoch) {
    return 10.0 * std::sin(0.4 * lon + 0.1 * epoch) + 8.0 * std::cos(0.3 * lat) + 0.05 * epoch;
}

TEST(CommonStations, IntersectsValidEpochsAndProjects) {
    const ProjectionAnchor anchor{-40, 16};
    std::vector<StationSeries> st = {
        station("A", -44, 12, {{0, 1.0}, {12, 2.0}}), station("B", -42, 18, {{0, 3.0}}),
        station("C", -38, 14, {{0, 4.0}, {12, 5.0}}), station("D", -36, 20, {{12, 6.0}}),
        station("E", -40, 22, {{0, 7.0}, {12, 8.0}})};

    const auto both = common_stations(st, 0, 12, anchor);
    EXPECT_EQ(both.station_idx, (std::vector<int>{0, 2, 4}));
    EXPECT_EQ(both.duplicates_skipped, 0);
    for (std::size_t s = 0; s < both.xy.size(); ++s) {
        const auto p = lap_project(st[both.station_idx[s]].lon, st[both.station_idx[s]].lat, anchor);
        EXPECT_DOUBLE_EQ(both.xy[s].x, p.x);
        EXPECT_DOUBLE_EQ(both.xy[s].y, p.y);
    }

    EXPECT_EQ(common_stations(st, 0, 0, anchor).station_idx, (std::vector<int>{0, 1, 2, 4}));

    st.push_back(station("A2", -44, 12, {{0, 9.0}, {12, 9.0}}));  // co-located with A
    const auto dedup = common_stations(st, 0, 12, anchor);
    EXPECT_EQ(dedup.station_idx, (std::vector<int>{0, 2, 4}));
    EXPECT_EQ(dedup.duplicates_skipped, 1);

    EXPECT_THROW(common_stations(st, 7, 7, anchor), TooFewStationsError);
}

TEST(EmpiricalVariance, ThreeUnitResidualsGiveThreeHalves) {
    Instance<double> inst;
    inst.points = {{0, 0}, {10, 0}, {0, 10}};
    inst.f = {Rat(0), Rat(0), Rat(0)};
    inst.refs = {{1, 1}, {2, 1}, {1, 2}};
    inst.h = {Rat(-1), Rat(-1), Rat(-1)};
    const auto v = empirical_variance(inst, {Tri{0, 1, 2}});
    EXPECT_EQ(v.n_refs, 3);
    EXPECT_EQ(v.sigma2, Rat(3, 2));
}

TEST(EmpiricalVariance, AgreesWithDirectResidualSum) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-8, 8), uval(-3, 3);
    std::vector<PointD> pts;
    while (pts.size() < 14u) {
        PointD p{u(rng), u(rng)};
        bool dup = false;
        for (const auto& q : pts) dup = dup || (q.x == p.x && q.y == p.y);
        if (!dup) pts.push_back(p);
    }
    const auto dt = delaunay_triangulation(pts);

    Instance<double> inst;
    inst.points = pts;
    for (std::size_t i = 0; i < pts.size(); ++i) inst.f.push_back(to_rational(uval(rng)));

    // interior refs by rejection against the Delaunay cover, then obvious
    // outsiders and one ref sitting exactly on a site
    const auto covered = [&](const PointD& r) {
        for (const Tri& t : dt.triangles)
            if (point_in_triangle(r, pts[t[0]], pts[t[1]], pts[t[2]]).where != TriLocation::Outside)
                return true;
        return false;
    };
    std::vector<PointD> inside;
    while (inside.size() < 50u) {
        PointD r{u(rng), u(rng)};
        if (covered(r)) inside.push_back(r);
    }
    for (const auto& r : inside) {
        inst.refs.push_back(r);
        inst.h.push_back(to_rational(uval(rng)));
    }
    for (int s = 0; s < 8; ++s) {
        inst.refs.push_back({30.0 + s, -40.0});
        inst.h.push_back(Rat(1000));
    }
    inst.refs.push_back(pts[0]);
    inst.h.push_back(Rat(777));

    const auto v = empirical_variance(inst, dt.triangles);
    EXPECT_EQ(v.n_refs, 50);

    Instance<double> filtered;
    filtered.points = pts;
    filtered.f = inst.f;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        filtered.refs.push_back(inside[i]);
        filtered.h.push_back(inst.h[i]);
    }
    const Rat direct = triangulation_error(filtered, dt.triangles);
    EXPECT_EQ(v.sigma2, direct / Rat(49));
}

TEST(EmpiricalVariance, RequiresTwoCoveredRefs) {
    Instance<double> inst;
    inst.points = {{0, 0}, {4, 0}, {0, 4}};
    inst.f = {Rat(0), Rat(0), Rat(0)};
    inst.refs = {{1, 1}, {50, 50}, {60, -60}, {70, 0}};  // one covered, three outside
    inst.h = {Rat(1), Rat(1), Rat(1), Rat(1)};
    EXPECT_THROW(empirical_variance(inst, {Tri{0, 1, 2}}), TooFewRefsError);
}

TEST(Reconstruct, OrderZeroKeepsBothVariancesEqual) {
    const auto st = synthetic_stations({0, 12}, rough_surface);
    const auto a0 = synthetic_altimetry(0, rough_surface);
    const auto a12 = synthetic_altimetry(12, rough_surface);
    const auto r = reconstruct(st, a0, a12, 0, 12, 0);
    EXPECT_EQ(r.k, 0);
    EXPECT_EQ(r.epoch_i, 0);
    EXPECT_EQ(r.epoch_j, 12);
    EXPECT_EQ(r.n_stations, 20);
    EXPECT_EQ(r.sigma2_min_error, r.sigma2_delaunay);
    EXPECT_EQ(r.delta_sigma2, Rat(0));
    EXPECT_GE(r.preprocess_seconds, 0.0);
    EXPECT_GE(r.optimize_seconds, 0.0);
}

TEST(Reconstruct, TrainingEpochDominatesDelaunayAndImprovesWithK) {
    const auto st = synthetic_stations({0}, rough_surface);
    const auto a0 = synthetic_altimetry(0, rough_surface);
    Rat prev;
    for (int k = 0; k <= 3; ++k) {
        const auto r = reconstruct(st, a0, a0, 0, 0, k);
        EXPECT_LE(r.delta_sigma2, Rat(0)) << "k=" << k;
        EXPECT_EQ(r.delta_sigma2, r.sigma2_min_error - r.sigma2_delaunay);
        if (k > 0) EXPECT_LE(r.sigma2_min_error, prev) << "k=" << k;
        prev = r.sigma2_min_error;
    }
}

TEST(Reconstruct, PlanarSeaSurfaceFitsExactly) {
    const ProjectionAnchor anchor{-40, 16};
    const auto plane = [&](double lon, double lat, int) {
        const auto p = lap_project(lon, lat, anchor);
        return 3.0 * p.x - 2.0 * p.y + 0.5;
    };
    const auto st = synthetic_stations({0, 12}, plane);
    const auto a0 = synthetic_altimetry(0, plane);
    const auto a12 = synthetic_altimetry(12, plane);
    const auto r = reconstruct(st, a0, a12, 0, 12, 2);
    EXPECT_LT(to_double(r.sigma2_min_error), 1e-24);
    EXPECT_LT(to_double(r.sigma2_delaunay), 1e-24);
}

TEST(AverageVarianceReduction, GroupsByLagAndRejectsEmptyGroups) {
    std::vector<ReconstructionResult> rs(5);
    const int is[] = {12, 24, 24, 36, 12};
    const int js[] = {12, 24, 12, 24, 0};
    const int deltas[] = {-2, -4, -6, 0, 3};
    for (int t = 0; t < 5; ++t) {
        rs[t].epoch_i = is[t];
        rs[t].epoch_j = js[t];
        rs[t].delta_sigma2 = Rat(deltas[t]);
    }
    EXPECT_EQ(average_variance_reduction(rs, 0), Rat(-3));
    EXPECT_EQ(average_variance_reduction(rs, 12), Rat(-1));
    EXPECT_THROW(average_variance_reduction(rs, 7), EmptyGroupError);
}

TEST(EpochPairs, FullGridFilteredByStride) {
    const std::vector<int> epochs{0, 12, 24, 30};
    const auto p12 = epoch_pairs(epochs, 12);
    const std::vector<std::pair<int, int>> want{{0, 0},   {12, 0},  {12, 12}, {24, 0},
                                                {24, 12}, {24, 24}, {30, 30}};
    EXPECT_EQ(p12, want);
    EXPECT_EQ(epoch_pairs(epochs, 1).size(), 10u);
    EXPECT_THROW(epoch_pairs(epochs, 0), std::invalid_argument);
}

}  // namespace
}  // namespace merit
