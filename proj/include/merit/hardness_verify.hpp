#pragma once

#include "merit/delaunay.hpp"
#include "merit/enumerate.hpp"
#include "merit/hardness.hpp"
#include "merit/solver.hpp"
#include "merit/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace merit {

// Checking side of the reduction: exact error evaluation of assembled
// gadget instances, plus an exhaustive zero-error search oracle for the
// small building blocks.

// Flattens a gadget into a measured-surface instance: points in ascending
// order with paraboloid heights, one (ref, h) pair per coupled ref.
inline Instance<Rat> gadget_instance(const Gadget& g) {
    Instance<Rat> inst;
    for (const auto& p : g.points) {
        inst.points.push_back(to_rational(p));
        inst.f.push_back(Rat(paraboloid_f(p)));
    }
    for (const auto& ref : g.refs) {
        inst.refs.push_back(ref.r);
        inst.h.push_back(ref.h);
    }
    return inst;
}

struct ZeroErrorReport {
    bool found = false;
    std::vector<Tri> witness;        // first zero-error triangulation, if any
    std::uint64_t searched = 0;      // triangulations examined
    std::vector<PointI> points;      // index order used by witness and vetoes
    std::vector<Rat> min_ref_error;  // per ref: smallest squared residual seen
};

// Enumerates every triangulation of the gadget's points (subject to the
// option vetoes) and evaluates the coupled refs exactly. Stops at the first
// zero-error triangulation; otherwise min_ref_error reports how close each
// ref came. Guarded by the brute-force cap.
inline ZeroErrorReport exhaustive_zero_error(const Gadget& g, EnumOptions opts = {}) {
    ZeroErrorReport rep;
    rep.points.assign(g.points.begin(), g.points.end());
    if (static_cast<int>(rep.points.size()) > opts.max_points) throw CapExceededError();

    const Instance<Rat> inst = gadget_instance(g);
    const std::size_t nref = inst.refs.size();

    // Residuals depend only on the covering triangle, so they are cached
    // per triangle across all enumerated triangulations.
    std::map<Tri, std::vector<std::pair<int, Rat>>> cache;
    const auto residuals = [&](const Tri& t) -> const std::vector<std::pair<int, Rat>>& {
        const auto it = cache.find(t);
        if (it != cache.end()) return it->second;
        auto& entry = cache[t];
        const PointQ& a = inst.points[t[0]];
        const PointQ& b = inst.points[t[1]];
        const PointQ& c = inst.points[t[2]];
        for (std::size_t i = 0; i < nref; ++i) {
            if (point_in_triangle(inst.refs[i], a, b, c).where == TriLocation::Outside) continue;
            const Rat d = interpolate(inst, t, inst.refs[i]) - inst.h[i];
            entry.emplace_back(static_cast<int>(i), d * d);
        }
        return entry;
    };

    TriangulationEnumerator<std::int64_t> enumerator(rep.points, opts);
    std::vector<char> counted(nref);
    std::vector<Rat> per_ref(nref, Rat(0));
    rep.searched = enumerator.run([&](const std::vector<Tri>& tris) {
        std::fill(counted.begin(), counted.end(), 0);
        std::size_t covered = 0;
        Rat total{0};
        for (const Tri& raw : tris) {
            const Tri t = make_tri(raw[0], raw[1], raw[2]);
            for (const auto& [i, r2] : residuals(t)) {
                if (counted[i]) continue;  // on-edge refs repeat with equal residuals
                counted[i] = 1;
                ++covered;
                total += r2;
                per_ref[i] = r2;
            }
        }
        if (covered != nref)
            throw std::logic_error("exhaustive_zero_error: ref not covered by a triangulation");
        if (rep.min_ref_error.empty()) {
            rep.min_ref_error = per_ref;
        } else {
            for (std::size_t i = 0; i < nref; ++i)
                if (per_ref[i] < rep.min_ref_error[i]) rep.min_ref_error[i] = per_ref[i];
        }
        if (total == 0) {
            rep.found = true;
            rep.witness = tris;
            return false;
        }
        return true;
    });
    return rep;
}

namespace detail {

// Carves the segment between vertices va and vb into the mesh by edge
// flips: every edge crossing the open segment is queued, an edge whose two
// triangles form a strictly convex quad is flipped, and a replacement
// diagonal that still crosses the segment rejoins the queue; a reflex quad
// waits until flips beside it free the corner. Only crossing edges are ever
// flipped, so edges disjoint from the segment all survive, and when the
// queue drains nothing separates va from vb any more. The crossed region
// itself can be arbitrarily awkward (it may pinch at a vertex, swallow a
// vertex star whole, or even wrap around an uncrossed triangle), which is
// why the flip loop is preferred over carving the region out and
// retriangulating it. No-op when the edge is already present. The segment
// must not pass through any third vertex.
template <typename T>
inline void insert_mesh_edge(TriMesh& mesh, const std::vector<Point2<T>>& pts, int va, int vb) {
    const Point2<T>& pa = pts[va];
    const Point2<T>& pb = pts[vb];

    std::vector<int> fan;
    {
        const int t0 = mesh.vert_tri[va];
        int t = t0;
        while (true) {  // clockwise until the hull or a full circle
            const int i = TriMesh::slot_of(mesh.tris[t], va);
            const int cw = mesh.tris[t].nbr[(i + 2) % 3];
            if (cw < 0 || cw == t0) break;
            t = cw;
        }
        const int start = t;
        while (true) {
            fan.push_back(t);
            const int i = TriMesh::slot_of(mesh.tris[t], va);
            const int ccw = mesh.tris[t].nbr[(i + 1) % 3];
            if (ccw < 0 || ccw == start) break;
            t = ccw;
        }
    }

    int cur = -1, left = -1, right = -1;
    for (const int t : fan) {
        const int i = TriMesh::slot_of(mesh.tris[t], va);
        if (mesh.tris[t].v[(i + 1) % 3] == vb || mesh.tris[t].v[(i + 2) % 3] == vb) return;
    }
    for (const int t : fan) {
        const int i = TriMesh::slot_of(mesh.tris[t], va);
        const int u = mesh.tris[t].v[(i + 1) % 3];
        const int w = mesh.tris[t].v[(i + 2) % 3];
        if (!segments_properly_intersect(pa, pb, pts[u], pts[w])) continue;
        cur = t;
        left = orient2d(pa, pb, pts[u]) > 0 ? u : w;
        right = left == u ? w : u;
        break;
    }
    if (cur < 0) throw GeometryError("edge insertion: no crossed triangle at the source");

    const auto norm = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    std::deque<std::pair<int, int>> queue{norm(left, right)};
    int prev = cur;
    while (true) {  // walk the crossed triangles to queue every crossed edge
        int t = -1;
        const MeshTri& m = mesh.tris[prev];
        for (int j = 0; j < 3; ++j)
            if (m.v[j] != left && m.v[j] != right) t = m.nbr[j];
        if (t < 0) throw GeometryError("edge insertion: pipe ran off the hull");
        int z = -1;
        for (int j = 0; j < 3; ++j)
            if (mesh.tris[t].v[j] != left && mesh.tris[t].v[j] != right) z = mesh.tris[t].v[j];
        if (z == vb) break;
        const Sign sz = orient2d(pa, pb, pts[z]);
        if (sz == 0) throw GeometryError("edge insertion: segment passes through a vertex");
        (sz > 0 ? left : right) = z;
        queue.push_back(norm(left, right));
        prev = t;
    }

    // finds the triangle holding the directed edge u->w and the slot of its
    // apex; {-1, -1} once the edge is gone (a stale duplicate in the queue)
    const auto find_edge = [&](int u, int w) -> std::pair<int, int> {
        const int t0 = mesh.vert_tri[u];
        int t = t0;
        while (true) {
            const int i = TriMesh::slot_of(mesh.tris[t], u);
            const int cw = mesh.tris[t].nbr[(i + 2) % 3];
            if (cw < 0 || cw == t0) break;
            t = cw;
        }
        const int start = t;
        while (true) {
            const int i = TriMesh::slot_of(mesh.tris[t], u);
            if (mesh.tris[t].v[(i + 1) % 3] == w) return {t, (i + 2) % 3};
            const int ccw = mesh.tris[t].nbr[(i + 1) % 3];
            if (ccw < 0 || ccw == start) return {-1, -1};
            t = ccw;
        }
    };
    const auto relink = [&](int t, int was, int now) {
        if (t < 0) return;
        for (int s = 0; s < 3; ++s)
            if (mesh.tris[t].nbr[s] == was) mesh.tris[t].nbr[s] = now;
    };

    // the budget only guards against a stuck queue; the loop drains far
    // sooner on any input seen in practice
    std::size_t budget = 64 + 32 * (queue.size() + 2) * (queue.size() + 2);
    while (!queue.empty()) {
        if (budget-- == 0) throw GeometryError("edge insertion: flip budget exhausted");
        const auto [u, w] = queue.front();
        queue.pop_front();
        const auto [a, j] = find_edge(u, w);
        if (a < 0) continue;
        const int b = mesh.tris[a].nbr[j];
        if (b < 0) throw GeometryError("edge insertion: crossed a hull edge");
        int jb = 0;
        while (jb < 3 && mesh.tris[b].nbr[jb] != a) ++jb;
        if (jb == 3) throw GeometryError("edge insertion: adjacency out of step");
        const int x = mesh.tris[a].v[j], y = mesh.tris[b].v[jb];
        if (orient2d(pts[x], pts[u], pts[y]) <= 0 || orient2d(pts[y], pts[w], pts[x]) <= 0) {
            queue.push_back(norm(u, w));  // reflex quad, handle the rest first
            continue;
        }
        // quad x,u,y,w is strictly convex: diagonal (u,w) gives way to
        // (x,y), reusing slot a for (x,u,y) and slot b for (y,w,x)
        const int A1 = mesh.tris[a].nbr[(j + 1) % 3], A2 = mesh.tris[a].nbr[(j + 2) % 3];
        const int B1 = mesh.tris[b].nbr[(jb + 1) % 3], B2 = mesh.tris[b].nbr[(jb + 2) % 3];
        mesh.tris[a].v = {x, u, y};
        mesh.tris[a].nbr = {B1, b, A2};
        mesh.tris[b].v = {y, w, x};
        mesh.tris[b].nbr = {A1, a, B2};
        relink(A1, a, b);
        relink(B1, b, a);
        mesh.vert_tri[u] = a;
        mesh.vert_tri[w] = b;
        mesh.vert_tri[x] = a;
        mesh.vert_tri[y] = b;
        if ((x == va && y == vb) || (x == vb && y == va)) continue;
        if (segments_properly_intersect(pa, pb, pts[x], pts[y])) queue.push_back(norm(x, y));
    }
}

}  // namespace detail

struct VerifyResult {
    bool zero_error = false;
    Rat total_error{0};
    std::vector<int> violated_refs;        // refs with a positive squared residual
    std::vector<int> unsatisfied_clauses;  // clause ordinals with every triangle blocked
    std::vector<Tri> triangulation;        // the completion that was evaluated
};

// Evaluates a variable assignment against an assembled instance. The
// assignment fixes each coupled ref's signal edge; triangle choices take
// the first candidate not blocked by a constraint edge; the constraints are
// carved into a scan triangulation and the result is scored exactly. A
// satisfying assignment yields a zero-error triangulation; a falsifying one
// leaves some clause with every candidate blocked, and its centre ref picks
// up positive error.
inline VerifyResult verify_assignment(const HardnessInstance& hi,
                                      const std::vector<bool>& assignment) {
    const Gadget& g = hi.gadget;
    if (static_cast<int>(assignment.size()) != hi.num_vars)
        throw std::invalid_argument("verify_assignment: assignment size mismatch");

    // Resolve every signal slot through the variable bindings.
    std::map<int, std::pair<int, bool>> bound;  // slot root -> (var, parity at binding)
    for (int v = 0; v < hi.num_vars; ++v) {
        const CoupledRef& ref = g.refs[hi.var_ref[v]];
        if (ref.slot < 0) throw std::logic_error("verify: binding ref has no slot");
        const auto [root, par] = g.find_slot(ref.slot);
        if (!bound.emplace(root, std::make_pair(v, par)).second)
            throw std::logic_error("verify: two variables share a signal component");
    }
    const auto signal = [&](int slot) {
        const auto [root, par] = g.find_slot(slot);
        const auto it = bound.find(root);
        if (it == bound.end()) throw std::logic_error("verify: unbound signal slot");
        return assignment[it->second.first] != (par != it->second.second);
    };

    std::set<LatticeEdge> cons;
    for (const auto& ref : g.refs) {
        if (ref.forces_edge) {
            cons.insert(*ref.pos_edge);
            continue;
        }
        if (ref.slot < 0 || !ref.pos_edge) continue;  // choice centres carry no edge
        cons.insert(signal(ref.slot) ? *ref.pos_edge : *ref.neg_edge);
    }

    VerifyResult res;
    const auto blocked = [&](const LatticeTri& t) {
        for (const auto& e : cons) {
            bool is_side = false;
            for (int i = 0; i < 3 && !is_side; ++i)
                if (lat_edge(t[i], t[(i + 1) % 3]) == e) is_side = true;
            if (is_side) continue;
            bool hit = false;
            for (int i = 0; i < 3 && !hit; ++i)
                if (segments_properly_intersect(e[0], e[1], t[i], t[(i + 1) % 3])) hit = true;
            for (int k = 0; k < 2 && !hit; ++k) {
                const TriLocation loc = point_in_triangle(e[k], t[0], t[1], t[2]).where;
                if (loc == TriLocation::Interior || loc == TriLocation::OnEdge) hit = true;
            }
            if (hit) return true;
        }
        return false;
    };
    int clause_no = 0;
    for (const auto& ch : g.choices) {
        const LatticeTri* pick = nullptr;
        for (const auto& cand : ch.candidates)
            if (!blocked(cand)) {
                pick = &cand;
                break;
            }
        if (pick) {
            for (int i = 0; i < 3; ++i) cons.insert(lat_edge((*pick)[i], (*pick)[(i + 1) % 3]));
        } else if (ch.is_clause) {
            res.unsatisfied_clauses.push_back(clause_no);
        } else {
            throw std::logic_error("verify: non-clause choice fully blocked");
        }
        if (ch.is_clause) ++clause_no;
    }

    std::unordered_map<PointI, int, PointIHash> index;
    for (std::size_t i = 0; i < hi.points.size(); ++i)
        index.emplace(hi.points[i], static_cast<int>(i));
    TriMesh mesh = scan_mesh(hi.points);
    for (const auto& e : cons) {
        const auto ia = index.find(e[0]);
        const auto ib = index.find(e[1]);
        if (ia == index.end() || ib == index.end())
            throw std::logic_error("verify: constraint endpoint is not an instance point");
        detail::insert_mesh_edge(mesh, hi.points, ia->second, ib->second);
    }
    res.triangulation.reserve(mesh.tris.size());
    for (const MeshTri& t : mesh.tris)
        res.triangulation.push_back(make_tri(t.v[0], t.v[1], t.v[2]));
    std::sort(res.triangulation.begin(), res.triangulation.end());

    const Instance<Rat> inst = gadget_instance(g);
    const WeightTable table = precompute_weights(inst, res.triangulation);
    std::size_t covered = 0;
    for (const auto& [tri, tw] : table.entries) {
        covered += tw.refs.size();
        res.total_error += tw.w;
        if (tw.w != 0)
            for (const int i : tw.refs) {
                const Rat d = interpolate(inst, tri, inst.refs[i]) - inst.h[i];
                if (d != 0) res.violated_refs.push_back(i);
            }
    }
    if (covered != inst.refs.size())
        throw std::logic_error("verify: reference coverage mismatch");
    std::sort(res.violated_refs.begin(), res.violated_refs.end());
    res.zero_error = res.total_error == 0;
    return res;
}

}  // namespace merit
