#include "merit/faces.hpp"

#include "merit/delaunay.hpp"
#include "merit/hod.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace merit;

namespace {

std::vector<PointD> random_points(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    std::vector<PointD> pts;
    std::set<std::pair<double, double>> used;
    while (static_cast<int>(pts.size()) < n) {
        PointD p{d(rng), d(rng)};
        if (used.insert({p.x, p.y}).second) pts.push_back(p);
    }
    return pts;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

Tri walk_as_tri(const std::vector<int>& walk) {
    EXPECT_EQ(walk.size(), 3u);
    return make_tri(walk[0], walk[1], walk[2]);
}

}  // namespace

TEST(Faces, DelaunayEdgesYieldTrianglesAsFaces) {
    for (unsigned seed : {11u, 12u, 13u}) {
        const auto pts = random_points(40, seed);
        const auto tri = delaunay_triangulation(pts);
        const auto dec = decompose_faces(pts, tri.edges);

        ASSERT_EQ(dec.faces.size(), tri.triangles.size());
        std::set<Tri> expect(tri.triangles.begin(), tri.triangles.end());
        std::set<Tri> got;
        for (const Face& f : dec.faces) {
            EXPECT_TRUE(f.hole_walks.empty());
            EXPECT_TRUE(f.isolated_vertices.empty());
            got.insert(walk_as_tri(f.boundary));
        }
        EXPECT_EQ(got, expect);
        EXPECT_EQ(dec.c_max, 0);
    }
}

TEST(Faces, BoundaryWalksAreCcw) {
    const auto pts = random_points(30, 77u);
    const auto tri = delaunay_triangulation(pts);
    const auto dec = decompose_faces(pts, tri.edges);
    for (const Face& f : dec.faces) {
        Rat area2 = 0;
        const int m = static_cast<int>(f.boundary.size());
        for (int i = 0; i < m; ++i) {
            const PointD& a = pts[f.boundary[i]];
            const PointD& b = pts[f.boundary[(i + 1) % m]];
            area2 += to_rational(a.x) * to_rational(b.y) - to_rational(b.x) * to_rational(a.y);
        }
        EXPECT_GT(area2, 0);
    }
}

TEST(Faces, FloatingTriangleBecomesHole) {
    const std::vector<PointD> pts = {{0, 0}, {10, 0}, {10, 10}, {0, 10},
                                     {4, 4}, {6, 4},  {5, 6}};
    const std::vector<Edge> edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                                     make_edge(3, 0), make_edge(4, 5), make_edge(5, 6),
                                     make_edge(6, 4)};
    const auto dec = decompose_faces(pts, edges);
    ASSERT_EQ(dec.faces.size(), 2u);
    const Face* outer_face = nullptr;
    const Face* inner_face = nullptr;
    for (const Face& f : dec.faces)
        (f.boundary.size() == 4 ? outer_face : inner_face) = &f;
    ASSERT_NE(outer_face, nullptr);
    ASSERT_NE(inner_face, nullptr);
    ASSERT_EQ(outer_face->hole_walks.size(), 1u);
    std::vector<int> hole = outer_face->hole_walks[0];
    std::sort(hole.begin(), hole.end());
    EXPECT_EQ(hole, (std::vector<int>{4, 5, 6}));
    EXPECT_TRUE(inner_face->hole_walks.empty());
    EXPECT_EQ(dec.c_max, 1);
}

TEST(Faces, AntennaStaysOnBoundaryWalk) {
    const std::vector<PointD> pts = {{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}};
    const std::vector<Edge> edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                                     make_edge(3, 0), make_edge(0, 4)};
    const auto dec = decompose_faces(pts, edges);
    ASSERT_EQ(dec.faces.size(), 1u);
    const Face& f = dec.faces[0];
    EXPECT_EQ(f.boundary.size(), 6u);
    EXPECT_EQ(std::count(f.boundary.begin(), f.boundary.end(), 0), 2);
    EXPECT_EQ(std::count(f.boundary.begin(), f.boundary.end(), 4), 1);
    EXPECT_TRUE(f.hole_walks.empty());
    EXPECT_EQ(dec.c_max, 0);
}

TEST(Faces, IsolatedVertexIsAnInteriorComponent) {
    const std::vector<PointD> pts = {{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}};
    const std::vector<Edge> edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                                     make_edge(3, 0)};
    const auto dec = decompose_faces(pts, edges);
    ASSERT_EQ(dec.faces.size(), 1u);
    EXPECT_EQ(dec.faces[0].isolated_vertices, (std::vector<int>{4}));
    EXPECT_EQ(dec.c_max, 1);
}

TEST(Faces, NestedComponentsAssignToSmallestEnclosingFace) {
    // Outer square, floating middle square, a lone vertex inside the middle
    // square. The vertex must land in the middle face, not the outer one.
    const std::vector<PointD> pts = {{0, 0}, {20, 0}, {20, 20}, {0, 20},
                                     {5, 5}, {15, 5}, {15, 15}, {5, 15},
                                     {10, 10}};
    const std::vector<Edge> edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                                     make_edge(3, 0), make_edge(4, 5), make_edge(5, 6),
                                     make_edge(6, 7), make_edge(7, 4)};
    const auto dec = decompose_faces(pts, edges);
    ASSERT_EQ(dec.faces.size(), 2u);
    const Face* big = nullptr;
    const Face* mid = nullptr;
    for (const Face& f : dec.faces)
        (std::count(f.boundary.begin(), f.boundary.end(), 0) ? big : mid) = &f;
    ASSERT_NE(big, nullptr);
    ASSERT_NE(mid, nullptr);
    EXPECT_EQ(big->hole_walks.size(), 1u);
    EXPECT_TRUE(big->isolated_vertices.empty());
    EXPECT_TRUE(mid->hole_walks.empty());
    EXPECT_EQ(mid->isolated_vertices, (std::vector<int>{8}));
    EXPECT_EQ(dec.c_max, 1);
}

TEST(Faces, TreeComponentsCountTowardCmax) {
    // Two disjoint trees (a path and a single edge) floating in a square.
    const std::vector<PointD> pts = {{0, 0},  {20, 0}, {20, 20}, {0, 20}, {4, 4},
                                     {8, 4},  {6, 8},  {14, 12}, {16, 16}};
    const std::vector<Edge> edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3),
                                     make_edge(3, 0), make_edge(4, 5), make_edge(5, 6),
                                     make_edge(7, 8)};
    const auto dec = decompose_faces(pts, edges);
    ASSERT_EQ(dec.faces.size(), 1u);
    const Face& f = dec.faces[0];
    ASSERT_EQ(f.hole_walks.size(), 2u);
    for (const auto& hw : f.hole_walks) {
        // A tree walk traverses every edge twice.
        if (hw.size() == 4u) {
            EXPECT_EQ(std::count(hw.begin(), hw.end(), 5), 2);
        } else {
            EXPECT_EQ(hw.size(), 2u);
        }
    }
    EXPECT_EQ(dec.c_max, 2);
}

TEST(Faces, EulerCountsOnFixedEdgeGraphs) {
    for (unsigned seed : {5u, 6u, 7u}) {
        const auto pts = random_points(70, seed);
        const auto analysis = analyze_fixed_edges(pts, {.kmax = 6});
        for (int k : {0, 2, 4, 6}) {
            const auto edges = analysis.fixed_edges(k);
            const auto dec = decompose_faces(pts, edges);

            const int n = static_cast<int>(pts.size());
            UnionFind uf(n);
            std::vector<char> touched(n, 0);
            for (const Edge& e : edges) {
                uf.unite(e[0], e[1]);
                touched[e[0]] = touched[e[1]] = 1;
            }
            std::set<int> roots;
            int loose = 0;
            for (int v = 0; v < n; ++v) {
                if (touched[v])
                    roots.insert(uf.find(v));
                else
                    ++loose;
            }
            const int comps = static_cast<int>(roots.size());
            const int bounded_faces =
                static_cast<int>(edges.size()) - (n - loose) + comps;
            EXPECT_EQ(static_cast<int>(dec.faces.size()), bounded_faces);

            int holes = 0, isolated = 0;
            for (const Face& f : dec.faces) {
                holes += static_cast<int>(f.hole_walks.size());
                isolated += static_cast<int>(f.isolated_vertices.size());
            }
            EXPECT_EQ(holes, comps - 1);
            EXPECT_EQ(isolated, loose);
        }
    }
}

TEST(Faces, EveryVertexIsReachableAndIsolationIsExclusive) {
    // Each vertex shows up on some walk or as an isolated vertex; a vertex
    // reported isolated must appear nowhere else. (Cycle-component vertices
    // legitimately sit on both a hole walk and their own face's boundary.)
    const auto pts = random_points(60, 9u);
    const auto analysis = analyze_fixed_edges(pts, {.kmax = 5});
    const auto edges = analysis.fixed_edges(5);
    const auto dec = decompose_faces(pts, edges);
    std::vector<int> owner(pts.size(), 0);
    for (const Face& f : dec.faces) {
        for (int v : f.boundary) owner[v] |= 1;
        for (const auto& hw : f.hole_walks)
            for (int v : hw) owner[v] |= 2;
        for (int v : f.isolated_vertices) owner[v] |= 4;
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        EXPECT_NE(owner[v], 0) << "vertex " << v << " not reachable in any face";
        EXPECT_TRUE(owner[v] < 4 || owner[v] == 4)
            << "vertex " << v << " both isolated and on a walk";
    }
}

TEST(Faces, RejectsEdgeSetWithoutOuterCycle) {
    const std::vector<PointD> pts = {{0, 0}, {4, 0}, {2, 3}};
    const std::vector<Edge> edges = {make_edge(0, 1)};
    EXPECT_THROW(decompose_faces(pts, edges), GeometryError);
}
