#pragma once

#include "merit/triangulation.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace merit {

// Boundary walk (CCW, closed, simple) plus the point ids strictly inside it.
struct Region {
    std::vector<int> walk;
    std::vector<int> interior;
};

struct EnumOptions {
    int max_points = 14;
    // Veto hooks; unset means everything is allowed. Vertex order of the
    // triangle callback is CCW.
    std::function<bool(int, int, int)> triangle_allowed;
    std::function<bool(int, int)> edge_allowed;
};

// Exhaustive enumeration of the triangulations of a point set. A region is
// reduced by branching over the triangle that covers its lexicographically
// smallest boundary edge; the chosen apex splits the region into at most two
// smaller ones. Each triangulation is produced exactly once. Exponential;
// guarded by max_points.
template <typename T>
class TriangulationEnumerator {
public:
    using Visitor = std::function<bool(const std::vector<Tri>&)>;

    TriangulationEnumerator(const std::vector<Point2<T>>& pts, EnumOptions opts = {})
        : pts_(pts), opts_(std::move(opts)) {
        if (static_cast<int>(pts.size()) > opts_.max_points)
            throw std::invalid_argument("TriangulationEnumerator: too many points");
    }
    // The point vector is held by reference; temporaries would dangle.
    TriangulationEnumerator(std::vector<Point2<T>>&&, EnumOptions = {}) = delete;

    // Returns the number of triangulations passed to visit (visit returning
    // false stops the search early).
    std::uint64_t run(const Visitor& visit) {
        visit_ = &visit;
        count_ = 0;
        stop_ = false;
        std::vector<Region> regions{initial_region()};
        current_.clear();
        go(regions);
        return count_;
    }

    // Initial region: convex hull walk with collinear boundary points kept,
    // so that every point is either on the walk or strictly interior.
    Region initial_region() const {
        const int n = static_cast<int>(pts_.size());
        const std::vector<int> hull = convex_hull(pts_);
        if (hull.size() < 3) throw GeometryError("enumerate: all points collinear");
        Region region;
        std::vector<char> on_walk(n, 0);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const int a = hull[i], b = hull[(i + 1) % hull.size()];
            region.walk.push_back(a);
            on_walk[a] = 1;
            std::vector<int> mid;
            for (int p = 0; p < n; ++p)
                if (strictly_on_segment(pts_[p], pts_[a], pts_[b])) mid.push_back(p);
            std::sort(mid.begin(), mid.end(), [&](int x, int y) {
                return pts_[a] < pts_[b] ? pts_[x] < pts_[y] : pts_[y] < pts_[x];
            });
            for (int p : mid) {
                region.walk.push_back(p);
                on_walk[p] = 1;
            }
        }
        for (int p = 0; p < n; ++p)
            if (!on_walk[p]) region.interior.push_back(p);
        return region;
    }

private:
    bool edge_ok(int a, int b) const {
        return !opts_.edge_allowed || opts_.edge_allowed(a, b);
    }
    bool tri_ok(int a, int b, int c) const {
        return !opts_.triangle_allowed || opts_.triangle_allowed(a, b, c);
    }

    void go(std::vector<Region>& regions) {
        if (stop_) return;
        if (regions.empty()) {
            ++count_;
            if (!(*visit_)(current_)) stop_ = true;
            return;
        }
        Region region = std::move(regions.back());
        regions.pop_back();

        if (region.walk.size() == 3 && region.interior.empty()) {
            const int a = region.walk[0], b = region.walk[1], c = region.walk[2];
            if (edge_ok(a, b) && edge_ok(b, c) && edge_ok(c, a) && tri_ok(a, b, c)) {
                current_.push_back(make_tri(a, b, c));
                go(regions);
                current_.pop_back();
            }
            regions.push_back(std::move(region));
            return;
        }

        const int m = static_cast<int>(region.walk.size());
        int best = 0;
        for (int i = 1; i < m; ++i)
            if (make_edge(region.walk[i], region.walk[(i + 1) % m]) <
                make_edge(region.walk[best], region.walk[(best + 1) % m]))
                best = i;
        const int i = best;
        const int u = region.walk[i], v = region.walk[(i + 1) % m];

        if (edge_ok(u, v)) {
            for (int w : candidate_apexes(region, i)) branch(regions, region, i, w);
        }
        regions.push_back(std::move(region));
    }

    std::vector<int> candidate_apexes(const Region& region, int i) const {
        const int m = static_cast<int>(region.walk.size());
        const int u = region.walk[i], v = region.walk[(i + 1) % m];
        std::vector<int> cands;
        for (int j = 0; j < m; ++j)
            if (j != i && j != (i + 1) % m) cands.push_back(region.walk[j]);
        cands.insert(cands.end(), region.interior.begin(), region.interior.end());
        std::sort(cands.begin(), cands.end());

        std::vector<int> out;
        for (int w : cands) {
            if (orient2d(pts_[u], pts_[v], pts_[w]) <= 0) continue;
            if (!tri_ok(u, v, w)) continue;
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                const int p = region.walk[j];
                if (p == u || p == v || p == w) continue;
                ok = point_in_triangle(pts_[p], pts_[u], pts_[v], pts_[w]).where ==
                     TriLocation::Outside;
            }
            for (int p : region.interior) {
                if (!ok) break;
                if (p == w) continue;
                ok = point_in_triangle(pts_[p], pts_[u], pts_[v], pts_[w]).where ==
                     TriLocation::Outside;
            }
            if (!ok) continue;
            const int prev_u = region.walk[(i - 1 + m) % m];
            const int next_v = region.walk[(i + 2) % m];
            if (w != prev_u) {
                if (!edge_ok(u, w) || crosses_walk(region, u, w)) continue;
            }
            if (w != next_v) {
                if (!edge_ok(w, v) || crosses_walk(region, w, v)) continue;
            }
            out.push_back(w);
        }
        return out;
    }

    bool crosses_walk(const Region& region, int a, int b) const {
        const int m = static_cast<int>(region.walk.size());
        for (int j = 0; j < m; ++j) {
            const int x = region.walk[j], y = region.walk[(j + 1) % m];
            if (x == a || x == b || y == a || y == b) continue;
            if (segments_properly_intersect(pts_[a], pts_[b], pts_[x], pts_[y])) return true;
        }
        return false;
    }

    void branch(std::vector<Region>& regions, const Region& region, int i, int w) {
        const int m = static_cast<int>(region.walk.size());
        const int u = region.walk[i], v = region.walk[(i + 1) % m];
        current_.push_back(make_tri(u, v, w));
        const std::size_t depth = regions.size();

        int j = -1;
        for (int s = 0; s < m; ++s)
            if (region.walk[s] == w) j = s;
        if (j < 0) {
            Region sub;
            sub.walk.reserve(m + 1);
            for (int s = 0; s <= i; ++s) sub.walk.push_back(region.walk[s]);
            sub.walk.push_back(w);
            for (int s = i + 1; s < m; ++s) sub.walk.push_back(region.walk[s]);
            for (int p : region.interior)
                if (p != w) sub.interior.push_back(p);
            regions.push_back(std::move(sub));
        } else {
            Region sub_a, sub_b;
            for (int s = (i + 1) % m; s != j; s = (s + 1) % m) sub_a.walk.push_back(region.walk[s]);
            sub_a.walk.push_back(w);
            for (int s = j; s != i; s = (s + 1) % m) sub_b.walk.push_back(region.walk[s]);
            sub_b.walk.push_back(u);
            if (sub_a.walk.size() >= 3) {
                for (int p : region.interior)
                    if (in_sub(p, sub_a)) sub_a.interior.push_back(p);
                regions.push_back(std::move(sub_a));
            }
            if (sub_b.walk.size() >= 3) {
                for (int p : region.interior)
                    if (in_sub(p, sub_b)) sub_b.interior.push_back(p);
                regions.push_back(std::move(sub_b));
            }
        }

        go(regions);
        regions.resize(depth);
        current_.pop_back();
    }

    bool in_sub(int p, const Region& sub) const {
        std::vector<Point2<T>> poly;
        poly.reserve(sub.walk.size());
        for (int s : sub.walk) poly.push_back(pts_[s]);
        return point_in_polygon(pts_[p], poly);
    }

    const std::vector<Point2<T>>& pts_;
    EnumOptions opts_;
    const Visitor* visit_ = nullptr;
    std::vector<Tri> current_;
    std::uint64_t count_ = 0;
    bool stop_ = false;
};

template <typename T>
std::uint64_t count_triangulations(const std::vector<Point2<T>>& pts, EnumOptions opts = {}) {
    TriangulationEnumerator<T> en(pts, std::move(opts));
    return en.run([](const std::vector<Tri>&) { return true; });
}

template <typename T>
std::vector<std::vector<Tri>> all_triangulations(const std::vector<Point2<T>>& pts,
                                                 EnumOptions opts = {}) {
    TriangulationEnumerator<T> en(pts, std::move(opts));
    std::vector<std::vector<Tri>> out;
    en.run([&](const std::vector<Tri>& tris) {
        std::vector<Tri> sorted = tris;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        return true;
    });
    return out;
}

}  // namespace merit
