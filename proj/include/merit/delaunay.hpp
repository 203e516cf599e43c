#pragma once

#include "merit/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

namespace merit {

struct AllCollinearError : GeometryError {
    AllCollinearError() : GeometryError("AllCollinear: no three input points span a triangle") {}
};

struct DuplicatePointsError : GeometryError {
    DuplicatePointsError() : GeometryError("DuplicatePoints: input contains repeated points") {}
};

// Triangle with CCW vertices; nbr[i] is the triangle across the edge
// opposite v[i], i.e. sharing (v[i+1], v[i+2]). -1 on the hull.
struct MeshTri {
    std::array<int, 3> v;
    std::array<int, 3> nbr;
};

struct TriMesh {
    std::vector<MeshTri> tris;
    std::vector<int> vert_tri;   // some incident triangle per vertex
    std::vector<int> hull_next;  // CCW hull cycle; -1 for interior vertices
    std::vector<int> hull_prev;
    int hull_start = -1;

    int vertex_count() const { return static_cast<int>(vert_tri.size()); }

    static int slot_of(const MeshTri& t, int w) {
        for (int i = 0; i < 3; ++i)
            if (t.v[i] == w) return i;
        return -1;
    }
};

namespace detail {

// Plane sweep in lexicographic order: each new point is connected to the
// strictly visible chain of the current hull. Handles collinear runs at the
// front and keeps collinear vertices on the hull cycle so the result is a
// maximal triangulation of the full set.
template <typename T>
class ScanBuilder {
public:
    explicit ScanBuilder(const std::vector<Point2<T>>& pts) : pts_(pts) {}

    TriMesh build() {
        const int n = static_cast<int>(pts_.size());
        if (n < 3) throw AllCollinearError();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(),
                  [&](int a, int b) { return pts_[a] < pts_[b]; });
        for (int i = 0; i + 1 < n; ++i)
            if (pts_[order_[i]] == pts_[order_[i + 1]]) throw DuplicatePointsError();

        mesh_.vert_tri.assign(n, -1);
        mesh_.hull_next.assign(n, -1);
        mesh_.hull_prev.assign(n, -1);

        int k = 2;
        while (k < n && orient2d(at(0), at(1), at(k)) == 0) ++k;
        if (k == n) throw AllCollinearError();

        const int q = order_[k];
        const Sign side = orient2d(at(0), at(1), pts_[q]);
        for (int i = 0; i + 1 < k; ++i) {
            if (side > 0)
                add_tri(order_[i], order_[i + 1], q);
            else
                add_tri(order_[i + 1], order_[i], q);
        }
        if (side > 0) {
            for (int i = 0; i + 1 < k; ++i) link(order_[i], order_[i + 1]);
            link(order_[k - 1], q);
            link(q, order_[0]);
        } else {
            for (int i = k - 1; i > 0; --i) link(order_[i], order_[i - 1]);
            link(order_[0], q);
            link(q, order_[k - 1]);
        }
        mesh_.hull_start = order_[0];
        last_ = q;

        for (int j = k + 1; j < n; ++j) insert(order_[j]);
        return std::move(mesh_);
    }

private:
    const Point2<T>& at(int sorted_idx) const { return pts_[order_[sorted_idx]]; }

    void link(int u, int v) {
        mesh_.hull_next[u] = v;
        mesh_.hull_prev[v] = u;
    }

    static std::uint64_t edge_key(int a, int b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    void add_tri(int a, int b, int c) {
        assert(orient2d(pts_[a], pts_[b], pts_[c]) > 0);
        const int t = static_cast<int>(mesh_.tris.size());
        mesh_.tris.push_back({{a, b, c}, {-1, -1, -1}});
        MeshTri& tri = mesh_.tris.back();
        for (int i = 0; i < 3; ++i) {
            const int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
            auto it = open_.find(edge_key(w, u));
            if (it != open_.end()) {
                tri.nbr[i] = it->second.first;
                mesh_.tris[it->second.first].nbr[it->second.second] = t;
                open_.erase(it);
            } else {
                open_.emplace(edge_key(u, w), std::make_pair(t, i));
            }
            mesh_.vert_tri[tri.v[i]] = t;
        }
    }

    // Hull edge (u, next[u]) is strictly visible from p.
    bool visible(int u, int p) const {
        return orient2d(pts_[u], pts_[mesh_.hull_next[u]], pts_[p]) < 0;
    }

    void insert(int p) {
        // The previously inserted point is the lex-max hull vertex and always
        // touches the strictly visible arc.
        int fwd = last_;
        while (visible(fwd, p)) fwd = mesh_.hull_next[fwd];
        int back = last_;
        while (visible(mesh_.hull_prev[back], p)) back = mesh_.hull_prev[back];
        assert(back != fwd);

        for (int u = back; u != fwd; u = mesh_.hull_next[u])
            add_tri(mesh_.hull_next[u], u, p);
        for (int u = mesh_.hull_next[back]; u != fwd;) {
            const int nxt = mesh_.hull_next[u];
            mesh_.hull_next[u] = mesh_.hull_prev[u] = -1;
            u = nxt;
        }
        link(back, p);
        link(p, fwd);
        mesh_.hull_start = p;
        last_ = p;
    }

    const std::vector<Point2<T>>& pts_;
    std::vector<int> order_;
    TriMesh mesh_;
    std::unordered_map<std::uint64_t, std::pair<int, int>> open_;
    int last_ = -1;
};

// Lawson flips until every interior edge is locally Delaunay. Cocircular
// ties (in_circle == 0) are legal and never flipped, so the result is
// deterministic for a fixed input.
template <typename T>
void legalize(TriMesh& mesh, const std::vector<Point2<T>>& pts) {
    std::queue<std::pair<int, int>> work;
    for (int t = 0; t < static_cast<int>(mesh.tris.size()); ++t)
        for (int i = 0; i < 3; ++i)
            if (mesh.tris[t].nbr[i] >= 0) work.emplace(t, i);

    while (!work.empty()) {
        const auto [ti, i] = work.front();
        work.pop();
        MeshTri& t = mesh.tris[ti];
        const int oi = t.nbr[i];
        if (oi < 0) continue;
        MeshTri& o = mesh.tris[oi];
        const int a = t.v[i], b = t.v[(i + 1) % 3], c = t.v[(i + 2) % 3];
        int j = -1;
        for (int s = 0; s < 3; ++s)
            if (o.v[s] != b && o.v[s] != c) j = s;
        const int d = o.v[j];
        if (in_circle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[d]) <= 0) continue;

        // d strictly inside the circumcircle implies the quad (a,b,d,c) is
        // strictly convex, so the flip is valid.
        const int n_ca = t.nbr[(i + 1) % 3];
        const int n_ab = t.nbr[(i + 2) % 3];
        const int n_bd = o.nbr[(j + 1) % 3];
        const int n_dc = o.nbr[(j + 2) % 3];
        t.v = {a, b, d};
        t.nbr = {n_bd, oi, n_ab};
        o.v = {a, d, c};
        o.nbr = {n_dc, n_ca, ti};
        assert(orient2d(pts[a], pts[b], pts[d]) > 0);
        assert(orient2d(pts[a], pts[d], pts[c]) > 0);
        if (n_bd >= 0)
            for (int s = 0; s < 3; ++s)
                if (mesh.tris[n_bd].nbr[s] == oi) mesh.tris[n_bd].nbr[s] = ti;
        if (n_ca >= 0)
            for (int s = 0; s < 3; ++s)
                if (mesh.tris[n_ca].nbr[s] == ti) mesh.tris[n_ca].nbr[s] = oi;
        mesh.vert_tri[a] = ti;
        mesh.vert_tri[b] = ti;
        mesh.vert_tri[d] = ti;
        mesh.vert_tri[c] = oi;
        work.emplace(ti, 0);
        work.emplace(ti, 2);
        work.emplace(oi, 0);
        work.emplace(oi, 1);
    }
}

}  // namespace detail

template <typename T>
TriMesh scan_mesh(const std::vector<Point2<T>>& pts) {
    return detail::ScanBuilder<T>(pts).build();
}

template <typename T>
TriMesh delaunay_mesh(const std::vector<Point2<T>>& pts) {
    TriMesh mesh = detail::ScanBuilder<T>(pts).build();
    detail::legalize(mesh, pts);
    return mesh;
}

template <typename T>
Triangulation<T> mesh_to_triangulation(const TriMesh& mesh, const std::vector<Point2<T>>& pts) {
    Triangulation<T> out;
    out.points = pts;
    out.triangles.reserve(mesh.tris.size());
    for (const MeshTri& t : mesh.tris) out.triangles.push_back(make_tri(t.v[0], t.v[1], t.v[2]));
    out.normalize();
    return out;
}

template <typename T>
Triangulation<T> delaunay_triangulation(const std::vector<Point2<T>>& pts) {
    return mesh_to_triangulation(delaunay_mesh(pts), pts);
}

// Adjacency invariants: neighbor back-links agree and shared edges are
// reversed between the two incident triangles.
inline bool mesh_is_consistent(const TriMesh& mesh) {
    for (int t = 0; t < static_cast<int>(mesh.tris.size()); ++t) {
        const MeshTri& tri = mesh.tris[t];
        for (int i = 0; i < 3; ++i) {
            const int o = tri.nbr[i];
            if (o < 0) continue;
            if (o >= static_cast<int>(mesh.tris.size())) return false;
            const MeshTri& other = mesh.tris[o];
            const int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
            int j = -1;
            for (int s = 0; s < 3; ++s)
                if (other.v[(s + 1) % 3] == w && other.v[(s + 2) % 3] == u) j = s;
            if (j < 0 || other.nbr[j] != t) return false;
        }
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const int t = mesh.vert_tri[v];
        if (t < 0 || TriMesh::slot_of(mesh.tris[t], v) < 0) return false;
    }
    return true;
}

// Brute-force Delaunay property: no input point strictly inside any
// triangle circumcircle. Test helper, O(T n).
template <typename T>
bool is_delaunay(const TriMesh& mesh, const std::vector<Point2<T>>& pts) {
    for (const MeshTri& t : mesh.tris) {
        for (std::size_t p = 0; p < pts.size(); ++p) {
            if (static_cast<int>(p) == t.v[0] || static_cast<int>(p) == t.v[1] ||
                static_cast<int>(p) == t.v[2])
                continue;
            if (in_circle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[p]) > 0) return false;
        }
    }
    return true;
}

}  // namespace merit
