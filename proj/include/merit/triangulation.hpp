#pragma once

#include "merit/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace merit {

using Edge = std::array<int, 2>;
using Tri = std::array<int, 3>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline Tri make_tri(int a, int b, int c) {
    Tri t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

// A triangulation of a planar point set: a maximal set of pairwise
// non-crossing edges. Triangles are stored with sorted vertex indices,
// edges as sorted pairs; both lists are kept sorted for canonical compare.
template <typename T>
struct Triangulation {
    std::vector<Point2<T>> points;
    std::vector<Edge> edges;
    std::vector<Tri> triangles;
    T error{};

    void normalize() {
        for (Tri& t : triangles) std::sort(t.begin(), t.end());
        std::sort(triangles.begin(), triangles.end());
        if (edges.empty()) derive_edges();
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    void derive_edges() {
        std::set<Edge> es;
        for (const Tri& t : triangles) {
            es.insert(make_edge(t[0], t[1]));
            es.insert(make_edge(t[1], t[2]));
            es.insert(make_edge(t[0], t[2]));
        }
        edges.assign(es.begin(), es.end());
    }

    std::vector<Tri> canonical_triangles() const {
        std::vector<Tri> ts = triangles;
        for (Tri& t : ts) std::sort(t.begin(), t.end());
        std::sort(ts.begin(), ts.end());
        return ts;
    }
};

using TriangulationD = Triangulation<double>;
using TriangulationQ = Triangulation<Rat>;

struct TriangulationCheck {
    bool valid = true;
    std::string reason;
};

// Structural validation: every point used, edges non-crossing, no point
// interior to an edge, and the triangle count matches Euler's bound for a
// maximal planar subdivision. Quadratic; meant for tests and small outputs.
template <typename T>
TriangulationCheck check_triangulation(const Triangulation<T>& tri) {
    const auto& pts = tri.points;
    const int n = static_cast<int>(pts.size());
    auto fail = [](std::string why) { return TriangulationCheck{false, std::move(why)}; };

    std::vector<Edge> edges = tri.edges;
    if (edges.empty()) {
        Triangulation<T> copy = tri;
        copy.derive_edges();
        edges = copy.edges;
    }
    std::vector<char> used(n, 0);
    for (const Edge& e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n || e[0] == e[1])
            return fail("edge index out of range");
        used[e[0]] = used[e[1]] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!used[i]) return fail("point " + std::to_string(i) + " unused");

    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (segments_properly_intersect(pts[edges[i][0]], pts[edges[i][1]],
                                            pts[edges[j][0]], pts[edges[j][1]]))
                return fail("edges cross");
    for (const Edge& e : edges)
        for (int p = 0; p < n; ++p)
            if (p != e[0] && p != e[1] && strictly_on_segment(pts[p], pts[e[0]], pts[e[1]]))
                return fail("point interior to an edge");

    // Maximality via Euler: 3n - 3 - h edges and 2n - 2 - h triangles,
    // where h counts hull boundary vertices (collinear ones included).
    const std::vector<int> hull = convex_hull(pts);
    std::size_t boundary = hull.size();
    for (int p = 0; p < n; ++p) {
        bool corner = false;
        for (int h : hull) corner |= (h == p);
        if (corner) continue;
        for (std::size_t i = 0; i < hull.size() && !corner; ++i) {
            const auto& a = pts[hull[i]];
            const auto& b = pts[hull[(i + 1) % hull.size()]];
            corner = strictly_on_segment(pts[p], a, b);
        }
        if (corner) ++boundary;
    }
    if (edges.size() != 3u * n - 3u - boundary)
        return fail("edge count " + std::to_string(edges.size()) + " != maximal " +
                    std::to_string(3 * n - 3 - boundary));
    if (!tri.triangles.empty() && tri.triangles.size() != 2u * n - 2u - boundary)
        return fail("triangle count mismatch");
    return {};
}

}  // namespace merit
