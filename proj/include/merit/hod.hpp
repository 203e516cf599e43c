#pragma once

#include "merit/delaunay.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace merit {

inline constexpr int kNeverUseful = std::numeric_limits<int>::max();

// The circles through an edge (u, v) form a pencil, totally ordered by the
// signed offset of their centers along the edge bisector. A point w off the
// line joins the pencil at parameter t_w (the circle through u, v, w); the
// circle at parameter s strictly contains exactly the left points with
// t < s and the right points with t > s. Points strictly inside the open
// segment uv lie inside every circle of the pencil ("blocked" count);
// points on the line outside the segment lie inside none.
//
// left/right are sorted by t ascending; *_order[i] is the number of points
// strictly inside the circumcircle of (u, v, side[i]), i.e. the order of
// that triangle.
struct EdgePencil {
    int u = -1, v = -1;
    std::vector<int> left, right;
    std::vector<int> left_order, right_order;
    int blocked = 0;
    // Orders of the defining triangles: the left defining point is the left
    // point whose circle contains no other left point (minimal t), and
    // symmetrically the right defining point has maximal t.
    int def_left = kNeverUseful, def_right = kNeverUseful;
};

template <typename T>
EdgePencil build_pencil(const std::vector<Point2<T>>& pts, int u, int v) {
    const int n = static_cast<int>(pts.size());
    EdgePencil p;
    p.u = u;
    p.v = v;
    for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        const Sign s = orient2d(pts[u], pts[v], pts[w]);
        if (s > 0)
            p.left.push_back(w);
        else if (s < 0)
            p.right.push_back(w);
        else if (strictly_on_segment(pts[w], pts[u], pts[v]))
            ++p.blocked;
    }
    // Within one side, t_a < t_b iff b is strictly outside the circle
    // through (u, v, a); the in_circle sign works out identically for the
    // left and the right list.
    const auto less_t = [&](int a, int b) { return in_circle(pts[u], pts[v], pts[a], pts[b]) < 0; };
    std::sort(p.left.begin(), p.left.end(), less_t);
    std::sort(p.right.begin(), p.right.end(), less_t);

    const int L = static_cast<int>(p.left.size());
    const int R = static_cast<int>(p.right.size());
    std::vector<int> left_rank(L, 0), right_after(R, 0);
    for (int i = 1; i < L; ++i)
        left_rank[i] = less_t(p.left[i - 1], p.left[i]) ? i : left_rank[i - 1];
    for (int j = R - 2; j >= 0; --j)
        right_after[j] = less_t(p.right[j], p.right[j + 1]) ? R - 1 - j : right_after[j + 1];

    p.left_order.resize(L);
    p.right_order.resize(R);
    // Two-pointer merges; the boundaries are monotone because both lists
    // are sorted by t.
    int j = 0;
    for (int i = 0; i < L; ++i) {
        while (j < R && in_circle(pts[u], pts[v], pts[p.left[i]], pts[p.right[j]]) <= 0) ++j;
        p.left_order[i] = left_rank[i] + (R - j) + p.blocked;
    }
    int i = 0;
    for (int jj = 0; jj < R; ++jj) {
        while (i < L && in_circle(pts[u], pts[v], pts[p.right[jj]], pts[p.left[i]]) < 0) ++i;
        p.right_order[jj] = i + right_after[jj] + p.blocked;
    }
    if (L > 0) p.def_left = p.left_order.front();
    if (R > 0) p.def_right = p.right_order.back();
    return p;
}

// Smallest k at which the edge is useful: both defining triangles must be
// k-order, i.e. both defining circles contain at most k points. A hull
// edge only has one side; an edge with a point strictly inside the open
// segment can complete to no triangulation at all and is never useful.
inline int pencil_useful_order(const EdgePencil& p) {
    if (p.blocked > 0) return kNeverUseful;
    if (p.left.empty() && p.right.empty()) return kNeverUseful;
    if (p.left.empty()) return p.def_right;
    if (p.right.empty()) return p.def_left;
    return std::max(p.def_left, p.def_right);
}

// Number of points strictly inside the circumcircle of (a, b, c), counting
// stops once it exceeds cap (the return value is then cap + 1).
template <typename T>
int triangle_order(const std::vector<Point2<T>>& pts, int a, int b, int c,
                   int cap = std::numeric_limits<int>::max() - 1) {
    const Sign s = orient2d(pts[a], pts[b], pts[c]);
    if (s == 0) throw GeometryError("triangle_order: degenerate triangle");
    if (s < 0) std::swap(b, c);
    int count = 0;
    for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (p == a || p == b || p == c) continue;
        if (in_circle(pts[a], pts[b], pts[c], pts[p]) > 0) {
            if (++count > cap) return count;
        }
    }
    return count;
}

// Direct evaluation of pencil_useful_order(build_pencil(...)) without the
// per-side sorts: only the extremal-t points matter, and their triangle
// orders are plain in-circle counts. Results above cap are truncated (any
// value > cap may come back); the default cap keeps the exact semantics.
template <typename T>
int edge_useful_order(const std::vector<Point2<T>>& pts, int u, int v,
                      int cap = std::numeric_limits<int>::max() - 1) {
    const int n = static_cast<int>(pts.size());
    // t grows with less_t below; the left defining point minimizes t, the
    // right defining point maximizes it.
    const auto less_t = [&](int a, int b) { return in_circle(pts[u], pts[v], pts[a], pts[b]) < 0; };
    int s_l = -1, s_r = -1;
    for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        const Sign s = orient2d(pts[u], pts[v], pts[w]);
        if (s > 0) {
            if (s_l < 0 || less_t(w, s_l)) s_l = w;
        } else if (s < 0) {
            if (s_r < 0 || less_t(s_r, w)) s_r = w;
        } else if (strictly_on_segment(pts[w], pts[u], pts[v])) {
            return kNeverUseful;
        }
    }
    if (s_l < 0 && s_r < 0) return kNeverUseful;
    if (s_l < 0) return triangle_order(pts, u, v, s_r, cap);
    if (s_r < 0) return triangle_order(pts, u, v, s_l, cap);
    const int left = triangle_order(pts, u, v, s_l, cap);
    if (left > cap) return left;
    return std::max(left, triangle_order(pts, u, v, s_r, cap));
}

// All edges usable in some k-OD triangulation attempt: useful order <= k.
// Blocked edges never qualify, so members contain no site in their interior.
template <typename T>
std::set<Edge> useful_edges(const std::vector<Point2<T>>& pts, int k) {
    std::set<Edge> out;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge_useful_order(pts, i, j, k) <= k) out.insert(make_edge(i, j));
    return out;
}

struct KodTriangle {
    Tri tri;
    int order = 0;
};

inline bool operator<(const KodTriangle& a, const KodTriangle& b) { return a.tri < b.tri; }

// Full: every triangle whose circumcircle strictly contains at most k
// points, including triangles that cannot appear in any triangulation.
// UsableOnly additionally requires all three edges useful at k and no
// point strictly inside the triangle.
enum class KodCatalogMode { Full, UsableOnly };

template <typename T>
std::vector<KodTriangle> enumerate_kod_triangles(const std::vector<Point2<T>>& pts, int k,
                                                 KodCatalogMode mode = KodCatalogMode::Full) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> edge_useful;
    if (mode == KodCatalogMode::UsableOnly)
        edge_useful.assign(static_cast<std::size_t>(n) * n, kNeverUseful);
    std::vector<KodTriangle> cands;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const EdgePencil pencil = build_pencil(pts, i, j);
            if (mode == KodCatalogMode::UsableOnly)
                edge_useful[static_cast<std::size_t>(i) * n + j] = pencil_useful_order(pencil);
            for (std::size_t s = 0; s < pencil.left.size(); ++s)
                if (pencil.left[s] > j && pencil.left_order[s] <= k)
                    cands.push_back({make_tri(i, j, pencil.left[s]), pencil.left_order[s]});
            for (std::size_t s = 0; s < pencil.right.size(); ++s)
                if (pencil.right[s] > j && pencil.right_order[s] <= k)
                    cands.push_back({make_tri(i, j, pencil.right[s]), pencil.right_order[s]});
        }
    }
    std::sort(cands.begin(), cands.end());
    if (mode == KodCatalogMode::Full) return cands;

    const auto useful = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return edge_useful[static_cast<std::size_t>(a) * n + b] <= k;
    };
    std::vector<KodTriangle> out;
    for (const KodTriangle& cand : cands) {
        const auto [a, b, c] = cand.tri;
        if (!useful(a, b) || !useful(b, c) || !useful(a, c)) continue;
        bool empty = true;
        for (int p = 0; p < n && empty; ++p) {
            if (p == a || p == b || p == c) continue;
            empty = point_in_triangle(pts[p], pts[a], pts[b], pts[c]).where != TriLocation::Interior;
        }
        if (empty) out.push_back(cand);
    }
    return out;
}

namespace detail {

// Incident triangles in rotational order (clockwise-most first for hull
// vertices, arbitrary phase for interior ones).
inline std::vector<int> triangles_around_vertex(const TriMesh& mesh, int u) {
    std::vector<int> out;
    const int start = mesh.vert_tri[u];
    int t = start;
    while (true) {
        const int i = TriMesh::slot_of(mesh.tris[t], u);
        const int cw = mesh.tris[t].nbr[(i + 2) % 3];
        if (cw < 0) break;
        t = cw;
        if (t == start) break;
    }
    const int first = t;
    while (true) {
        out.push_back(t);
        const int i = TriMesh::slot_of(mesh.tris[t], u);
        const int ccw = mesh.tris[t].nbr[(i + 1) % 3];
        if (ccw < 0 || ccw == first) break;
        t = ccw;
    }
    return out;
}

}  // namespace detail

struct SegmentWalkResult {
    bool blocked = false;  // the open segment passes through a vertex
    bool dt_edge = false;  // (u, v) is itself a Delaunay edge
    std::vector<int> crossed_edge_ids;
    int distinct_left = 0;   // endpoints of crossed edges left of u->v
    int distinct_right = 0;
};

// Walks the Delaunay mesh along the open segment u->v, collecting every
// properly crossed mesh edge. The distinct endpoint counts per side give a
// lower bound on the usefulness order of (u, v): each defining circle of
// the edge must reach across every crossed Delaunay edge.
template <typename T>
SegmentWalkResult walk_dt_segment(const TriMesh& mesh, const std::vector<Point2<T>>& pts, int u,
                                  int v,
                                  const std::unordered_map<std::uint64_t, int>& edge_ids) {
    const auto key = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    };
    SegmentWalkResult res;
    std::vector<int> left_pts, right_pts;
    const auto record = [&](int a, int b) {
        const auto it = edge_ids.find(key(a, b));
        res.crossed_edge_ids.push_back(it->second);
        for (int w : {a, b}) {
            if (orient2d(pts[u], pts[v], pts[w]) > 0)
                left_pts.push_back(w);
            else
                right_pts.push_back(w);
        }
    };

    int cur = -1, ex = -1, ey = -1;
    for (int t : detail::triangles_around_vertex(mesh, u)) {
        const int i = TriMesh::slot_of(mesh.tris[t], u);
        const int a = mesh.tris[t].v[(i + 1) % 3];
        const int b = mesh.tris[t].v[(i + 2) % 3];
        if (a == v || b == v) {
            res.dt_edge = true;
            return res;
        }
        if (orient2d(pts[u], pts[a], pts[v]) == 0 && strictly_on_segment(pts[a], pts[u], pts[v])) {
            res.blocked = true;
            return res;
        }
        if (orient2d(pts[u], pts[b], pts[v]) == 0 && strictly_on_segment(pts[b], pts[u], pts[v])) {
            res.blocked = true;
            return res;
        }
        if (orient2d(pts[u], pts[a], pts[v]) > 0 && orient2d(pts[u], pts[b], pts[v]) < 0) {
            cur = t;
            ex = a;
            ey = b;
            break;
        }
    }
    if (cur < 0) {
        // Defensive: every direction from u is covered by a wedge, an
        // incident edge, or a blocked ray.
        res.blocked = true;
        return res;
    }

    record(ex, ey);
    Sign sx = orient2d(pts[u], pts[v], pts[ex]);
    const int guard = static_cast<int>(mesh.tris.size()) + 2;
    for (int step = 0; step < guard; ++step) {
        const MeshTri& t = mesh.tris[cur];
        int opp_slot = -1;
        for (int s = 0; s < 3; ++s)
            if (t.v[s] != ex && t.v[s] != ey) opp_slot = s;
        const int nxt = t.nbr[opp_slot];
        if (nxt < 0) {
            res.blocked = true;  // cannot happen for v inside the hull
            return res;
        }
        cur = nxt;
        int c = -1;
        for (int s = 0; s < 3; ++s)
            if (mesh.tris[cur].v[s] != ex && mesh.tris[cur].v[s] != ey) c = mesh.tris[cur].v[s];
        if (c == v) break;
        const Sign sc = orient2d(pts[u], pts[v], pts[c]);
        if (sc == 0) {
            res.blocked = true;
            return res;
        }
        if (sc == sx)
            ex = c;
        else
            ey = c;
        sx = orient2d(pts[u], pts[v], pts[ex]);
        record(ex, ey);
    }

    const auto distinct = [](std::vector<int>& xs) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return static_cast<int>(xs.size());
    };
    res.distinct_left = distinct(left_pts);
    res.distinct_right = distinct(right_pts);
    return res;
}

struct FixedEdgeOptions {
    int kmax = 7;
    bool prune = true;
    // The walk bound assumes general position; cocircular ties can inflate
    // it by the number of coincidences, so keep a small safety margin.
    int prune_slack = 2;
};

// For each Delaunay edge, the smallest usefulness order among the useful
// edges that properly cross it (capped at kmax). The fixed-edge graph F_k
// keeps the Delaunay edges not crossed by any useful k-order edge; only
// Delaunay edges are candidates because every other segment is either
// blocked or properly crossed by a Delaunay edge, which is useful at every
// order.
struct FixedEdgeAnalysis {
    std::vector<Edge> dt_edges;
    std::vector<int> crossed_at;
    int kmax = 0;
    TriMesh mesh;

    std::vector<Edge> fixed_edges(int k) const {
        if (k < 0 || k > kmax) throw std::invalid_argument("fixed_edges: k out of analyzed range");
        std::vector<Edge> out;
        for (std::size_t i = 0; i < dt_edges.size(); ++i)
            if (crossed_at[i] > k) out.push_back(dt_edges[i]);
        return out;
    }
};

template <typename T>
FixedEdgeAnalysis analyze_fixed_edges(const std::vector<Point2<T>>& pts,
                                      FixedEdgeOptions opts = {}) {
    FixedEdgeAnalysis out;
    out.kmax = opts.kmax;
    out.mesh = delaunay_mesh(pts);

    std::unordered_map<std::uint64_t, int> edge_ids;
    for (const MeshTri& t : out.mesh.tris)
        for (int s = 0; s < 3; ++s) {
            const Edge e = make_edge(t.v[s], t.v[(s + 1) % 3]);
            const std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e[0]))
                                     << 32) |
                                    static_cast<std::uint32_t>(e[1]);
            if (!edge_ids.count(k)) {
                edge_ids.emplace(k, static_cast<int>(out.dt_edges.size()));
                out.dt_edges.push_back(e);
            }
        }
    // Canonical order with ids remapped.
    {
        std::vector<int> perm(out.dt_edges.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(),
                  [&](int a, int b) { return out.dt_edges[a] < out.dt_edges[b]; });
        std::vector<Edge> sorted(out.dt_edges.size());
        std::vector<int> newpos(out.dt_edges.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            sorted[i] = out.dt_edges[perm[i]];
            newpos[perm[i]] = static_cast<int>(i);
        }
        out.dt_edges = std::move(sorted);
        for (auto& [k, id] : edge_ids) id = newpos[id];
    }
    out.crossed_at.assign(out.dt_edges.size(), kNeverUseful);

    const int n = static_cast<int>(pts.size());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const std::uint64_t k =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
                static_cast<std::uint32_t>(v);
            if (edge_ids.count(k)) continue;
            const SegmentWalkResult walk = walk_dt_segment(out.mesh, pts, u, v, edge_ids);
            if (walk.blocked || walk.dt_edge) continue;
            if (opts.prune &&
                std::max(walk.distinct_left, walk.distinct_right) > opts.kmax + opts.prune_slack)
                continue;
            const int order = edge_useful_order(pts, u, v, opts.kmax);
            if (order > opts.kmax) continue;
            for (int id : walk.crossed_edge_ids)
                out.crossed_at[id] = std::min(out.crossed_at[id], order);
        }
    }
    return out;
}

template <typename T>
std::vector<Edge> fixed_edge_graph(const std::vector<Point2<T>>& pts, int k) {
    FixedEdgeOptions opts;
    opts.kmax = k;
    return analyze_fixed_edges(pts, opts).fixed_edges(k);
}

}  // namespace merit
