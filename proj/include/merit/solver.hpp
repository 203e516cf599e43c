#pragma once

#include "merit/delaunay.hpp"
#include "merit/enumerate.hpp"
#include "merit/faces.hpp"
#include "merit/hod.hpp"
#include "merit/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace merit {

struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
    BudgetExceededError() : std::runtime_error("solver budget exceeded") {}
};

struct CapExceededError : std::runtime_error {
    CapExceededError() : std::runtime_error("point count exceeds brute-force cap") {}
};

// Shared accounting between the DP and the bridge search; one unit is one
// DP apex evaluation or one search node.
class SolveBudget {
  public:
    explicit SolveBudget(std::uint64_t limit = 10'000'000) : limit_(limit) {}
    void charge() {
        if (++used_ > limit_) throw BudgetExceededError();
    }
    void count_bridge_set() { ++bridge_sets_; }
    std::uint64_t used() const { return used_; }
    std::uint64_t bridge_sets() const { return bridge_sets_; }

  private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    std::uint64_t bridge_sets_ = 0;
};

struct SubSolution {
    std::vector<Tri> triangles;
    Rat cost;
};

namespace detail {

// Interval DP over a weakly simple CCW walk (Klincsek-style, index-based so
// repeated vertices stay distinct). The sub-region of state (i, j) is
// bounded by walk edges i..j and the chord (walk[j], walk[i]); an apex m
// splits it with triangle (walk[i], walk[m], walk[j]). A chord is
// admissible when its undirected edge is in `chords` and it properly
// crosses no walk edge; catalog triangles contain no site, so admissible
// splits can never overlap the walk.
template <typename T>
class WalkDp {
  public:
    WalkDp(const std::vector<Point2<T>>& pts, const std::vector<int>& walk,
           const std::set<Tri>& catalog, const std::set<Edge>& chords,
           const WeightTable& weights, SolveBudget& budget)
        : pts_(pts), walk_(walk), catalog_(catalog), chords_(chords), weights_(weights),
          budget_(budget), m_(static_cast<int>(walk.size())) {
        if (m_ > 20000) throw BudgetExceededError();
    }

    SubSolution run() {
        if (m_ < 3) throw InfeasibleError("polygon dp: walk shorter than a triangle");
        const Cell& root = solve(0, m_ - 1);
        if (!root.feasible) throw InfeasibleError("polygon dp: no admissible triangulation");
        SubSolution out;
        out.cost = root.cost;
        collect(0, m_ - 1, out.triangles);
        std::sort(out.triangles.begin(), out.triangles.end());
        return out;
    }

  private:
    struct Cell {
        bool feasible = false;
        int apex = -1;
        Rat cost;
    };

    std::uint32_t key(int i, int j) const { return static_cast<std::uint32_t>(i) << 16 | j; }

    bool chord_ok(int i, int j) {
        if (j == i + 1 || (i == 0 && j == m_ - 1)) return true;
        const auto it = chord_memo_.find(key(i, j));
        if (it != chord_memo_.end()) return it->second;
        bool ok = chords_.count(make_edge(walk_[i], walk_[j])) > 0;
        const auto &a = pts_[walk_[i]], &b = pts_[walk_[j]];
        for (int e = 0; ok && e < m_; ++e) {
            const auto &u = pts_[walk_[e]], &v = pts_[walk_[(e + 1) % m_]];
            if (segments_properly_intersect(a, b, u, v)) ok = false;
        }
        chord_memo_.emplace(key(i, j), ok);
        return ok;
    }

    const Cell& solve(int i, int j) {
        auto [it, fresh] = memo_.try_emplace(key(i, j));
        Cell& cell = it->second;
        if (!fresh) return cell;
        if (j == i + 1) {
            cell.feasible = true;
            return cell;
        }
        for (int mid = i + 1; mid < j; ++mid) {
            budget_.charge();
            const int a = walk_[i], b = walk_[mid], c = walk_[j];
            if (orient2d(pts_[a], pts_[b], pts_[c]) <= 0) continue;
            const Tri t = make_tri(a, b, c);
            if (!catalog_.count(t)) continue;
            if (!chord_ok(i, mid) || !chord_ok(mid, j)) continue;
            // Copy child costs out: the second solve may rehash the memo
            // table and invalidate references from the first.
            const Cell& left = solve(i, mid);
            if (!left.feasible) continue;
            const Rat left_cost = left.cost;
            const Cell& right = solve(mid, j);
            if (!right.feasible) continue;
            Cell& self = memo_.at(key(i, j));
            const Rat cand = left_cost + right.cost + weights_.weight(t);
            if (!self.feasible || cand < self.cost) {
                self.feasible = true;
                self.apex = mid;
                self.cost = cand;
            }
        }
        return memo_.at(key(i, j));
    }

    void collect(int i, int j, std::vector<Tri>& out) const {
        if (j == i + 1) return;
        const Cell& cell = memo_.at(key(i, j));
        out.push_back(make_tri(walk_[i], walk_[cell.apex], walk_[j]));
        collect(i, cell.apex, out);
        collect(cell.apex, j, out);
    }

    const std::vector<Point2<T>>& pts_;
    const std::vector<int>& walk_;
    const std::set<Tri>& catalog_;
    const std::set<Edge>& chords_;
    const WeightTable& weights_;
    SolveBudget& budget_;
    const int m_;
    std::unordered_map<std::uint32_t, Cell> memo_;
    std::unordered_map<std::uint32_t, bool> chord_memo_;
};

}  // namespace detail

// Minimum total triangle weight over all triangulations of the region
// bounded by the walk, using catalog triangles only.
template <typename T>
SubSolution polygon_dp(const std::vector<Point2<T>>& pts, const std::vector<int>& walk,
                       const std::set<Tri>& catalog, const std::set<Edge>& chords,
                       const WeightTable& weights, SolveBudget& budget) {
    if (walk.size() >= 1u << 16) throw BudgetExceededError();
    detail::WalkDp<T> dp(pts, walk, catalog, chords, weights, budget);
    return dp.run();
}

namespace detail {

// Merges the face boundary, its component walks, and the chosen bridge
// edges into the single weakly simple walk that bounds the face region
// after the bridges are inserted. Bridges appear twice.
template <typename T>
std::vector<int> merged_face_walk(const std::vector<Point2<T>>& pts, const Face& face,
                                  const std::vector<Edge>& bridges) {
    std::set<Edge> es;
    const auto add_walk = [&](const std::vector<int>& w) {
        for (std::size_t i = 0; i < w.size(); ++i)
            es.insert(make_edge(w[i], w[(i + 1) % w.size()]));
    };
    add_walk(face.boundary);
    for (const auto& hw : face.hole_walks) add_walk(hw);
    for (const Edge& b : bridges) es.insert(b);

    std::unordered_map<int, std::vector<int>> out;
    for (const Edge& e : es) {
        out[e[0]].push_back(e[1]);
        out[e[1]].push_back(e[0]);
    }
    for (auto& [v, nbrs] : out) {
        std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
            const auto da = pts[a] - pts[v];
            const auto db = pts[b] - pts[v];
            const int ha = angle_half(da), hb = angle_half(db);
            if (ha != hb) return ha < hb;
            return orient2d(pts[v], pts[a], pts[b]) > 0;
        });
    }

    std::vector<int> walk;
    int a = face.boundary[0], b = face.boundary[1];
    do {
        walk.push_back(a);
        const auto& nbrs = out.at(b);
        const int pos = static_cast<int>(
            std::find(nbrs.begin(), nbrs.end(), a) - nbrs.begin());
        const int deg = static_cast<int>(nbrs.size());
        a = b;
        b = nbrs[(pos - 1 + deg) % deg];
    } while (!(a == face.boundary[0] && b == face.boundary[1]));

    std::size_t expect = face.boundary.size() + 2 * bridges.size();
    for (const auto& hw : face.hole_walks) expect += hw.size();
    if (walk.size() != expect)
        throw GeometryError("face merge: walk length mismatch; bridges must be crossing-free");
    return walk;
}

}  // namespace detail

// Optimal sub-triangulation of one face. Faces with interior components are
// reduced to the plain walk DP by enumerating bridge-edge forests: h extra
// useful edges that connect the h components and the boundary into one
// walk. Every triangulation of the face contains such a forest, so the
// minimum over forests is exact.
template <typename T>
SubSolution face_solve(const std::vector<Point2<T>>& pts, const Face& face,
                       const std::set<Tri>& catalog, const std::set<Edge>& chords,
                       const WeightTable& weights, SolveBudget& budget) {
    const int h = face.interior_components();
    if (h == 0) return polygon_dp(pts, face.boundary, catalog, chords, weights, budget);

    std::unordered_map<int, int> piece_of;
    const auto add_piece = [&](const std::vector<int>& verts, int id) {
        for (int v : verts) piece_of.emplace(v, id);
    };
    add_piece(face.boundary, 0);
    int pieces = 1;
    for (const auto& hw : face.hole_walks) add_piece(hw, pieces++);
    for (int v : face.isolated_vertices) add_piece({v}, pieces++);

    std::vector<Edge> candidates;
    for (const Edge& e : chords) {
        const auto i0 = piece_of.find(e[0]), i1 = piece_of.find(e[1]);
        if (i0 == piece_of.end() || i1 == piece_of.end()) continue;
        if (i0->second != i1->second) candidates.push_back(e);
    }

    const int c = static_cast<int>(candidates.size());
    std::optional<SubSolution> best;
    std::vector<Edge> chosen;
    std::vector<int> parent(pieces);
    for (int i = 0; i < pieces; ++i) parent[i] = i;
    const auto find_root = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };

    const auto evaluate = [&]() {
        budget.count_bridge_set();
        const auto walk = detail::merged_face_walk(pts, face, chosen);
        try {
            SubSolution s = polygon_dp(pts, walk, catalog, chords, weights, budget);
            if (!best || s.cost < best->cost) best = std::move(s);
        } catch (const InfeasibleError&) {
        }
    };

    const std::function<void(int, int)> rec = [&](int start, int left) {
        budget.charge();
        if (left == 0) {
            evaluate();
            return;
        }
        for (int idx = start; idx <= c - left; ++idx) {
            const Edge& e = candidates[idx];
            const int ra = find_root(piece_of.at(e[0])), rb = find_root(piece_of.at(e[1]));
            if (ra == rb) continue;
            bool clear = true;
            for (const Edge& f : chosen)
                if (segments_properly_intersect(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])) {
                    clear = false;
                    break;
                }
            if (!clear) continue;
            parent[ra] = rb;
            chosen.push_back(e);
            rec(idx + 1, left - 1);
            chosen.pop_back();
            parent[ra] = ra;
        }
    };
    rec(0, h);

    if (!best) throw InfeasibleError("face solve: no connecting bridge set admits a triangulation");
    return std::move(*best);
}

struct DpStats {
    int faces = 0;
    std::uint64_t cells = 0;
    std::uint64_t bridge_sets = 0;
    double elapsed_seconds = 0;
};

template <typename T>
struct DpResult {
    Triangulation<T> triangulation;
    Rat error;
    std::vector<Rat> face_costs;
    DpStats stats;
};

struct SolveOptions {
    std::uint64_t budget = 10'000'000;
};

namespace detail {

inline void assign_error(double& dst, const Rat& e) { dst = to_double(e); }
inline void assign_error(Rat& dst, const Rat& e) { dst = e; }

}  // namespace detail

// Exact minimum-error k-OD triangulation: build the usable catalog and its
// weights, fix the never-crossed edges, decompose into faces, solve each
// face independently, and take the union. Decomposability of the error
// measure makes the per-face optima compose into the global optimum.
template <typename T>
DpResult<T> min_error_triangulation(const Instance<T>& inst, int k, SolveOptions opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_instance(inst);
    if (inst.points.size() < 3) throw std::invalid_argument("min_error_triangulation: need >= 3 points");
    if (k < 0) throw std::invalid_argument("min_error_triangulation: k must be >= 0");

    const auto catalog_list = enumerate_kod_triangles(inst.points, k, KodCatalogMode::UsableOnly);
    std::set<Tri> catalog;
    for (const auto& kt : catalog_list) catalog.insert(kt.tri);
    const auto chords = useful_edges(inst.points, k);
    const auto table = precompute_weights(inst, catalog_list);
    const auto fixed = fixed_edge_graph(inst.points, k);
    const auto dec = decompose_faces(inst.points, fixed);

    SolveBudget budget(opts.budget);
    DpResult<T> res;
    res.error = 0;
    std::vector<Tri> tris;
    for (const Face& face : dec.faces) {
        SubSolution s = face_solve(inst.points, face, catalog, chords, table, budget);
        res.face_costs.push_back(s.cost);
        res.error += s.cost;
        tris.insert(tris.end(), s.triangles.begin(), s.triangles.end());
    }
    std::sort(tris.begin(), tris.end());

    res.triangulation.points = inst.points;
    res.triangulation.triangles = std::move(tris);
    res.triangulation.derive_edges();
    detail::assign_error(res.triangulation.error, res.error);
    res.stats.faces = static_cast<int>(dec.faces.size());
    res.stats.cells = budget.used();
    res.stats.bridge_sets = budget.bridge_sets();
    res.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// Every k-OD triangulation of the point set, by exhaustive enumeration.
// Test oracle; refuses point sets larger than `cap`.
template <typename T>
std::vector<std::vector<Tri>> brute_force_enumerate(const std::vector<Point2<T>>& pts, int k,
                                                    int cap = 11) {
    if (static_cast<int>(pts.size()) > cap) throw CapExceededError();
    EnumOptions opts;
    opts.max_points = cap;
    opts.triangle_allowed = [&pts, k](int a, int b, int c) {
        return triangle_order(pts, a, b, c, k) <= k;
    };
    return all_triangulations(pts, opts);
}

}  // namespace merit
