#pragma once

#include "merit/triangulation.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace merit {

// One bounded region of the plane subdivision induced by a non-crossing
// edge set. The boundary is a closed CCW walk; edges whose both sides face
// this region (antennas) appear twice. Components floating inside the
// region are reported by their boundary walk, single vertices separately.
struct Face {
    std::vector<int> boundary;
    std::vector<std::vector<int>> hole_walks;
    std::vector<int> isolated_vertices;

    int interior_components() const {
        return static_cast<int>(hole_walks.size() + isolated_vertices.size());
    }
};

struct FaceDecomposition {
    std::vector<Face> faces;
    int c_max = 0;
};

namespace detail {

template <typename T>
int angle_half(const Point2<T>& d) {
    if (d.y > T(0)) return 0;
    if (d.y == T(0) && d.x > T(0)) return 0;
    return 1;
}

}  // namespace detail

// Decomposes the subdivision induced by `edges` into faces. Preconditions:
// edges are pairwise non-crossing, contain no vertex in their interiors,
// and include the hull cycle (true for every fixed-edge graph, which keeps
// all hull Delaunay edges).
template <typename T>
FaceDecomposition decompose_faces(const std::vector<Point2<T>>& pts,
                                  const std::vector<Edge>& edges) {
    const int n = static_cast<int>(pts.size());
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n || e[0] == e[1])
            throw GeometryError("decompose_faces: bad edge");
        es.push_back(make_edge(e[0], e[1]));
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    std::vector<std::vector<int>> out(n);
    for (const Edge& e : es) {
        out[e[0]].push_back(e[1]);
        out[e[1]].push_back(e[0]);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(out[v].begin(), out[v].end(), [&](int a, int b) {
            const auto da = pts[a] - pts[v];
            const auto db = pts[b] - pts[v];
            const int ha = detail::angle_half(da), hb = detail::angle_half(db);
            if (ha != hb) return ha < hb;
            return orient2d(pts[v], pts[a], pts[b]) > 0;
        });
    }
    std::vector<int> base(n + 1, 0);
    for (int v = 0; v < n; ++v) base[v + 1] = base[v] + static_cast<int>(out[v].size());
    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(base[n]);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < static_cast<int>(out[v].size()); ++i)
            pos.emplace((static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(out[v][i]),
                        i);

    // Trace every directed edge's walk: the successor of a->b is the
    // rotational predecessor of b->a around b, which keeps the region on
    // the left of the walk.
    struct Walk {
        std::vector<int> verts;
        Rat area2;
    };
    std::vector<Walk> walks;
    std::vector<char> seen(base[n], 0);
    for (int v0 = 0; v0 < n; ++v0) {
        for (int i0 = 0; i0 < static_cast<int>(out[v0].size()); ++i0) {
            if (seen[base[v0] + i0]) continue;
            Walk walk;
            walk.area2 = 0;
            int a = v0, i = i0;
            while (!seen[base[a] + i]) {
                seen[base[a] + i] = 1;
                const int b = out[a][i];
                walk.verts.push_back(a);
                walk.area2 += to_rational(pts[a].x) * to_rational(pts[b].y) -
                              to_rational(pts[b].x) * to_rational(pts[a].y);
                const int back =
                    pos.at((static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint32_t>(a));
                const int deg = static_cast<int>(out[b].size());
                a = b;
                i = (back - 1 + deg) % deg;
            }
            walks.push_back(std::move(walk));
        }
    }
    if (walks.empty()) throw GeometryError("decompose_faces: no edges");

    int outer = -1;
    for (std::size_t w = 0; w < walks.size(); ++w)
        if (outer < 0 || walks[w].area2 < walks[outer].area2) outer = static_cast<int>(w);
    if (!(walks[outer].area2 < 0))
        throw GeometryError("decompose_faces: no outer walk; hull cycle missing?");

    FaceDecomposition out_faces;
    std::vector<int> face_of_walk(walks.size(), -1);
    for (std::size_t w = 0; w < walks.size(); ++w) {
        if (static_cast<int>(w) == outer || !(walks[w].area2 > 0)) continue;
        face_of_walk[w] = static_cast<int>(out_faces.faces.size());
        Face f;
        f.boundary = walks[w].verts;
        out_faces.faces.push_back(std::move(f));
    }

    // Assign each floating component walk and isolated vertex to the
    // smallest positive walk strictly containing it.
    const auto enclosing_face = [&](int rep) -> int {
        int best = -1;
        for (std::size_t w = 0; w < walks.size(); ++w) {
            if (face_of_walk[w] < 0) continue;
            const auto& verts = walks[w].verts;
            if (std::find(verts.begin(), verts.end(), rep) != verts.end()) continue;
            std::vector<Point2<T>> poly;
            poly.reserve(verts.size());
            for (int q : verts) poly.push_back(pts[q]);
            if (!point_in_polygon(pts[rep], poly)) continue;
            if (best < 0 || walks[w].area2 < walks[best].area2) best = static_cast<int>(w);
        }
        return best < 0 ? -1 : face_of_walk[best];
    };

    for (std::size_t w = 0; w < walks.size(); ++w) {
        if (static_cast<int>(w) == outer || walks[w].area2 > 0) continue;
        const int f = enclosing_face(walks[w].verts.front());
        if (f < 0) throw GeometryError("decompose_faces: unassignable component");
        out_faces.faces[f].hole_walks.push_back(walks[w].verts);
    }
    for (int v = 0; v < n; ++v) {
        if (!out[v].empty()) continue;
        const int f = enclosing_face(v);
        if (f < 0) throw GeometryError("decompose_faces: unassignable vertex");
        out_faces.faces[f].isolated_vertices.push_back(v);
    }

    for (const Face& f : out_faces.faces)
        out_faces.c_max = std::max(out_faces.c_max, f.interior_components());
    return out_faces;
}

}  // namespace merit
