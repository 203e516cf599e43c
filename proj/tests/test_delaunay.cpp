#include "merit/delaunay.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace merit {
namespace {

std::vector<PointD> random_points(int n, std::uint64_t seed, bool snap_to_grid = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::vector<PointD> pts;
    while (static_cast<int>(pts.size()) < n) {
        PointD p{coord(rng), coord(rng)};
        if (snap_to_grid) p = {std::round(p.x), std::round(p.y)};
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    return pts;
}

TEST(Delaunay, DegenerateInputs) {
    EXPECT_THROW(delaunay_mesh(std::vector<PointD>{{0, 0}, {1, 1}}), AllCollinearError);
    EXPECT_THROW(delaunay_mesh(std::vector<PointD>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                 AllCollinearError);
    EXPECT_THROW(delaunay_mesh(std::vector<PointD>{{0, 0}, {1, 1}, {0, 0}, {2, 0}}),
                 DuplicatePointsError);
}

TEST(Delaunay, FanAroundInteriorPoint) {
    const std::vector<PointD> pts{{0, 0}, {4, 0}, {2, 3}, {2, 1}};
    const auto tri = delaunay_triangulation(pts);
    const std::vector<Tri> want{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    EXPECT_EQ(tri.canonical_triangles(), want);
    EXPECT_EQ(tri.edges.size(), 6u);
    EXPECT_TRUE(check_triangulation(tri).valid);
}

TEST(Delaunay, CocircularSquareIsStable) {
    const std::vector<PointD> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto tri = delaunay_triangulation(pts);
    // The tie is left to insertion order: the scan diagonal survives.
    const std::vector<Tri> want{{0, 1, 3}, {1, 2, 3}};
    EXPECT_EQ(tri.canonical_triangles(), want);
    const auto again = delaunay_triangulation(pts);
    EXPECT_EQ(again.canonical_triangles(), tri.canonical_triangles());
}

TEST(Delaunay, CollinearBoundaryPointsKept) {
    const std::vector<PointD> pts{{0, 0}, {1, 0}, {2, 0}, {1, 1}};
    const auto tri = delaunay_triangulation(pts);
    EXPECT_EQ(tri.triangles.size(), 2u);
    EXPECT_EQ(tri.edges.size(), 5u);
    EXPECT_TRUE(check_triangulation(tri).valid);
}

TEST(Delaunay, GridHandlesMassDegeneracy) {
    std::vector<PointD> pts;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) pts.push_back({double(x), double(y)});
    const TriMesh mesh = delaunay_mesh(pts);
    EXPECT_TRUE(mesh_is_consistent(mesh));
    EXPECT_TRUE(is_delaunay(mesh, pts));
    const auto tri = mesh_to_triangulation(mesh, pts);
    EXPECT_EQ(tri.triangles.size(), 18u);
    EXPECT_EQ(tri.edges.size(), 33u);
    EXPECT_TRUE(check_triangulation(tri).valid);
}

TEST(Delaunay, HullCycleOnSquareWithCenter) {
    const std::vector<PointD> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const TriMesh mesh = delaunay_mesh(pts);
    int len = 0, v = mesh.hull_start;
    do {
        ++len;
        v = mesh.hull_next[v];
    } while (v != mesh.hull_start && len <= 10);
    EXPECT_EQ(len, 4);
    EXPECT_EQ(mesh.hull_next[4], -1);
}

TEST(Delaunay, RandomSetsAreValidAndDelaunay) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const bool grid = seed % 3 == 0;
        const auto pts = random_points(grid ? 25 : 40, seed, grid);
        TriMesh mesh;
        try {
            mesh = delaunay_mesh(pts);
        } catch (const AllCollinearError&) {
            continue;
        }
        EXPECT_TRUE(mesh_is_consistent(mesh)) << "seed " << seed;
        EXPECT_TRUE(is_delaunay(mesh, pts)) << "seed " << seed;
        const auto tri = mesh_to_triangulation(mesh, pts);
        const auto check = check_triangulation(tri);
        EXPECT_TRUE(check.valid) << "seed " << seed << ": " << check.reason;
    }
}

TEST(Delaunay, IndependentOfInputOrderInGeneralPosition) {
    const auto pts = random_points(30, 99);
    const auto base = delaunay_triangulation(pts).canonical_triangles();
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<int> perm(pts.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<PointD> shuffled(pts.size());
        std::vector<int> inv(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            shuffled[i] = pts[perm[i]];
            inv[perm[i]] = static_cast<int>(i);
        }
        auto tri = delaunay_triangulation(shuffled);
        for (Tri& t : tri.triangles)
            t = make_tri(perm[t[0]], perm[t[1]], perm[t[2]]);
        std::sort(tri.triangles.begin(), tri.triangles.end());
        EXPECT_EQ(tri.triangles, base);
    }
}

TEST(Delaunay, ScanWithoutFlipsIsValidTriangulation) {
    const auto pts = random_points(25, 17);
    const TriMesh mesh = scan_mesh(pts);
    EXPECT_TRUE(mesh_is_consistent(mesh));
    const auto tri = mesh_to_triangulation(mesh, pts);
    EXPECT_TRUE(check_triangulation(tri).valid);
}

TEST(Delaunay, RationalCoordinates) {
    std::vector<PointQ> pts{{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(2), Rat(3)},
                            {Rat(2), Rat(1)}, {Rat(1, 2), Rat(1, 3)}};
    const auto tri = delaunay_triangulation(pts);
    EXPECT_EQ(tri.triangles.size(), 2u * 5 - 2 - 3);
    EXPECT_TRUE(check_triangulation(tri).valid);
}

}  // namespace
}  // namespace merit
