#include "merit/randgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace merit;

namespace {

double dist(const PointD& a, const PointD& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

}  // namespace

TEST(Type1, InsideRadiusDistinctAndSeedDeterministic) {
    const auto pts = gen_type1(2000, 50.0, 7u);
    ASSERT_EQ(pts.size(), 2000u);
    std::set<std::pair<double, double>> uniq;
    for (const auto& p : pts) {
        EXPECT_LE(dist(p, {0, 0}), 50.0);
        uniq.insert({p.x, p.y});
    }
    EXPECT_EQ(uniq.size(), pts.size());
    EXPECT_EQ(gen_type1(2000, 50.0, 7u), pts);
    EXPECT_NE(gen_type1(2000, 50.0, 8u), pts);
}

TEST(Type1, MeanDistanceMatchesUniformDiskExpectation) {
    const double radius = 30.0;
    const auto pts = gen_type1(10000, radius, 123u);
    double mean = 0;
    for (const auto& p : pts) mean += dist(p, {0, 0});
    mean /= static_cast<double>(pts.size());
    EXPECT_NEAR(mean / radius, 2.0 / 3.0, 2.0 / 3.0 * 0.05);
}

TEST(Type2, FourDisjointDisksWithEvenSplit) {
    const double radius = 10.0;
    const auto pts = gen_type2(103, radius, 99u);
    ASSERT_EQ(pts.size(), 103u);
    const double c = 2 * radius;
    const std::vector<PointD> centers = {{-c, -c}, {-c, c}, {c, -c}, {c, c}};
    std::vector<int> count(4, 0);
    for (const auto& p : pts) {
        int inside = -1;
        for (int i = 0; i < 4; ++i)
            if (dist(p, centers[i]) <= radius) {
                EXPECT_EQ(inside, -1) << "point belongs to two disks";
                inside = i;
            }
        ASSERT_NE(inside, -1);
        ++count[inside];
    }
    std::sort(count.begin(), count.end());
    EXPECT_EQ(count, (std::vector<int>{25, 26, 26, 26}));
}

TEST(Type2, DiskStreamsIndependentOfOtherDiskCounts) {
    // Growing n extends each disk's block without reshuffling its prefix.
    const auto small = gen_type2(40, 5.0, 3u);
    const auto big = gen_type2(44, 5.0, 3u);
    for (int disk = 0; disk < 4; ++disk) {
        for (int i = 0; i < 10; ++i)
            EXPECT_EQ(small[static_cast<std::size_t>(disk) * 10 + i],
                      big[static_cast<std::size_t>(disk) * 11 + i]);
    }
}

TEST(Type3, AnnulusBoundsAndDegenerationToType1) {
    const auto pts = gen_type3(1500, 40.0, 25.0, 11u);
    for (const auto& p : pts) {
        const double d = dist(p, {0, 0});
        EXPECT_GT(d, 25.0);
        EXPECT_LE(d, 40.0);
    }
    EXPECT_EQ(gen_type3(800, 40.0, 0.0, 5u), gen_type1(800, 40.0, 5u));
    EXPECT_THROW(gen_type3(10, 5.0, 5.0, 1u), InvalidRadiiError);
    EXPECT_THROW(gen_type3(10, 5.0, 7.0, 1u), InvalidRadiiError);
    EXPECT_THROW(gen_type3(10, 5.0, -1.0, 1u), InvalidRadiiError);
}

TEST(Cmax, ZeroForKUpToOneAcrossAllTypes) {
    for (const SampleType type : {SampleType::Type1, SampleType::Type2, SampleType::Type3}) {
        GeneratorSpec gen;
        gen.type = type;
        gen.radius = 100.0;
        gen.r2 = 40.0;
        const auto rows = cmax_experiment(gen, 60, {.kmin = 0, .kmax = 1, .samples = 8, .seed = 5});
        ASSERT_EQ(rows.size(), 2u);
        for (const auto& row : rows) {
            EXPECT_EQ(row.avg_cmax, 0.0) << to_string(type) << " k=" << row.k;
            EXPECT_EQ(row.max_cmax, 0);
            EXPECT_EQ(row.avg_components, 0.0);
        }
    }
}

TEST(Cmax, NoIsolatedVertexInFTwoSamples) {
    for (unsigned s = 0; s < 10; ++s) {
        const auto pts = gen_type1(60, 100.0, 1000 + s);
        const auto dec = decompose_faces(pts, fixed_edge_graph(pts, 2));
        for (const Face& f : dec.faces)
            EXPECT_TRUE(f.isolated_vertices.empty())
                << "isolated vertex in F_2 face, sample " << s;
    }
}

TEST(Cmax, PerSampleCmaxMonotoneInK) {
    for (unsigned s = 0; s < 6; ++s) {
        const auto pts = gen_type1(70, 100.0, 500 + s);
        const auto analysis = analyze_fixed_edges(pts, {.kmax = 6});
        int prev = 0;
        for (int k = 0; k <= 6; ++k) {
            const int cm = decompose_faces(pts, analysis.fixed_edges(k)).c_max;
            EXPECT_GE(cm, prev);
            prev = cm;
        }
    }
}

TEST(Cmax, RowInvariantsAndReproducibility) {
    GeneratorSpec gen;
    gen.type = SampleType::Type2;
    gen.radius = 80.0;
    const CmaxOptions opts{.kmin = 0, .kmax = 4, .samples = 6, .seed = 77};
    const auto rows = cmax_experiment(gen, 48, opts);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& row : rows) {
        EXPECT_EQ(row.n, 48);
        EXPECT_EQ(row.samples, 6);
        EXPECT_LE(row.min_cmax, row.avg_cmax);
        EXPECT_LE(row.avg_cmax, row.max_cmax);
    }
    const auto again = cmax_experiment(gen, 48, opts);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].avg_cmax, again[i].avg_cmax);
        EXPECT_EQ(rows[i].avg_components, again[i].avg_components);
        EXPECT_EQ(rows[i].min_cmax, again[i].min_cmax);
        EXPECT_EQ(rows[i].max_cmax, again[i].max_cmax);
    }
}

TEST(Projected, FixedPointSetPassesThrough) {
    GeneratorSpec gen;
    gen.type = SampleType::Projected;
    gen.projected = gen_type1(40, 10.0, 2u);
    const auto rows = cmax_experiment(gen, 40, {.kmin = 2, .kmax = 2, .samples = 1, .seed = 9});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].min_cmax, rows[0].max_cmax);
    EXPECT_EQ(rows[0].avg_cmax, static_cast<double>(rows[0].max_cmax));
}
