#pragma once

#include "merit/hod.hpp"
#include "merit/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace merit {

struct OutsideTriangleError : std::runtime_error {
    OutsideTriangleError() : std::runtime_error("interpolation point outside triangle") {}
};

// Measured surface: sites carrying values f, reference points carrying
// values h. Values are exact rationals so triangulation errors compare
// exactly downstream.
template <typename T>
struct Instance {
    std::vector<Point2<T>> points;
    std::vector<Rat> f;
    std::vector<Point2<T>> refs;
    std::vector<Rat> h;
};

using InstanceD = Instance<double>;
using InstanceQ = Instance<Rat>;
using InstanceI = Instance<std::int64_t>;

template <typename T>
void validate_instance(const Instance<T>& inst) {
    if (inst.points.size() != inst.f.size())
        throw std::invalid_argument("instance: |f| != |points|");
    if (inst.refs.size() != inst.h.size()) throw std::invalid_argument("instance: |h| != |refs|");
}

// Barycentric-linear interpolation of the vertex values at r, exact.
template <typename T>
Rat interpolate(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c, const Rat& fa,
                const Rat& fb, const Rat& fc, const Point2<T>& r) {
    if (point_in_triangle(r, a, b, c).where == TriLocation::Outside)
        throw OutsideTriangleError();
    const auto rc = [](const Point2<T>& p, const Point2<T>& q, const Point2<T>& s) {
        return (to_rational(q.x) - to_rational(p.x)) * (to_rational(s.y) - to_rational(p.y)) -
               (to_rational(q.y) - to_rational(p.y)) * (to_rational(s.x) - to_rational(p.x));
    };
    const Rat den = rc(a, b, c);
    return (rc(r, b, c) * fa + rc(a, r, c) * fb + rc(a, b, r) * fc) / den;
}

template <typename T>
Rat interpolate(const Instance<T>& inst, const Tri& t, const Point2<T>& r) {
    return interpolate(inst.points[t[0]], inst.points[t[1]], inst.points[t[2]], inst.f[t[0]],
                       inst.f[t[1]], inst.f[t[2]], r);
}

// Whether triangle t counts a ref located at `loc` relative to it. Interior
// refs always count. A ref on edge (u, v) counts for the triangle left of
// the low-index -> high-index direction, so that in any triangulation it is
// counted exactly once; a hull edge only has its interior triangle, which
// counts. Refs at triangle vertices never count.
template <typename T>
bool triangle_owns_ref(const std::vector<Point2<T>>& pts, const Tri& t,
                       const TriLocateResult& loc, const std::set<Edge>& hull_edges) {
    switch (loc.where) {
        case TriLocation::Interior:
            return true;
        case TriLocation::OnEdge: {
            const int u = t[loc.index], v = t[(loc.index + 1) % 3], w = t[(loc.index + 2) % 3];
            const Edge e = make_edge(u, v);
            if (hull_edges.count(e)) return true;
            return orient2d(pts[e[0]], pts[e[1]], pts[w]) > 0;
        }
        default:
            return false;
    }
}

struct TriangleWeight {
    Rat w;
    std::vector<int> refs;
};

struct WeightTable {
    std::map<Tri, TriangleWeight> entries;

    const TriangleWeight* find(const Tri& t) const {
        const auto it = entries.find(t);
        return it == entries.end() ? nullptr : &it->second;
    }
    const Rat& weight(const Tri& t) const {
        const auto it = entries.find(t);
        if (it == entries.end()) throw std::invalid_argument("weight: triangle not in table");
        return it->second.w;
    }
};

namespace detail {

// Coarse double-precision bucketing of refs; queries expand the triangle's
// bounding box by one cell, so rounding can only over-report candidates and
// the exact location test keeps the result correct.
template <typename T>
class RefGrid {
  public:
    explicit RefGrid(const std::vector<Point2<T>>& refs) : refs_(refs) {
        if (refs.empty()) return;
        xmin_ = xmax_ = approx(refs[0].x);
        ymin_ = ymax_ = approx(refs[0].y);
        for (const auto& r : refs) {
            xmin_ = std::min(xmin_, approx(r.x));
            xmax_ = std::max(xmax_, approx(r.x));
            ymin_ = std::min(ymin_, approx(r.y));
            ymax_ = std::max(ymax_, approx(r.y));
        }
        g_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(refs.size()))));
        cells_.assign(static_cast<std::size_t>(g_) * g_, {});
        for (int i = 0; i < static_cast<int>(refs.size()); ++i)
            cells_[cell_of(approx(refs[i].x), approx(refs[i].y))].push_back(i);
    }

    template <typename Fn>
    void for_candidates(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c,
                        Fn&& fn) const {
        if (refs_.empty()) return;
        const double xlo = std::min({approx(a.x), approx(b.x), approx(c.x)});
        const double xhi = std::max({approx(a.x), approx(b.x), approx(c.x)});
        const double ylo = std::min({approx(a.y), approx(b.y), approx(c.y)});
        const double yhi = std::max({approx(a.y), approx(b.y), approx(c.y)});
        const int cx0 = std::max(0, col(xlo) - 1), cx1 = std::min(g_ - 1, col(xhi) + 1);
        const int cy0 = std::max(0, row(ylo) - 1), cy1 = std::min(g_ - 1, row(yhi) + 1);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx)
                for (int i : cells_[static_cast<std::size_t>(cy) * g_ + cx]) fn(i);
    }

  private:
    static double approx(double x) { return x; }
    static double approx(std::int64_t x) { return static_cast<double>(x); }
    static double approx(const Rat& x) { return to_double(x); }

    int col(double x) const {
        if (xmax_ <= xmin_) return 0;
        const double t = (x - xmin_) / (xmax_ - xmin_) * g_;
        return std::max(0, std::min(g_ - 1, static_cast<int>(t)));
    }
    int row(double y) const {
        if (ymax_ <= ymin_) return 0;
        const double t = (y - ymin_) / (ymax_ - ymin_) * g_;
        return std::max(0, std::min(g_ - 1, static_cast<int>(t)));
    }
    std::size_t cell_of(double x, double y) const {
        return static_cast<std::size_t>(row(y)) * g_ + col(x);
    }

    const std::vector<Point2<T>>& refs_;
    double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
    int g_ = 1;
    std::vector<std::vector<int>> cells_;
};

}  // namespace detail

// Computes w_T for every candidate triangle: the squared interpolation
// error summed over the refs the triangle owns. Refs coinciding with a site
// are dropped entirely.
template <typename T>
WeightTable precompute_weights(const Instance<T>& inst, const std::vector<Tri>& tris) {
    validate_instance(inst);
    const auto& pts = inst.points;

    std::set<Edge> hull_edges;
    {
        const auto cycle = boundary_cycle(pts);
        const int m = static_cast<int>(cycle.size());
        for (int i = 0; i < m; ++i) hull_edges.insert(make_edge(cycle[i], cycle[(i + 1) % m]));
    }

    std::set<std::pair<T, T>> site_coords;
    for (const auto& p : pts) site_coords.insert({p.x, p.y});
    std::vector<char> coincident(inst.refs.size(), 0);
    for (std::size_t i = 0; i < inst.refs.size(); ++i)
        coincident[i] = site_coords.count({inst.refs[i].x, inst.refs[i].y}) ? 1 : 0;

    const detail::RefGrid<T> grid(inst.refs);
    WeightTable table;
    for (const Tri& raw : tris) {
        const Tri t = make_tri(raw[0], raw[1], raw[2]);
        if (table.entries.count(t)) continue;
        TriangleWeight& tw = table.entries[t];
        tw.w = 0;
        const Point2<T>&a = pts[t[0]], &b = pts[t[1]], &c = pts[t[2]];
        grid.for_candidates(a, b, c, [&](int i) {
            if (coincident[i]) return;
            const auto loc = point_in_triangle(inst.refs[i], a, b, c);
            if (!triangle_owns_ref(pts, t, loc, hull_edges)) return;
            const Rat d = interpolate(inst, t, inst.refs[i]) - inst.h[i];
            tw.w += d * d;
            tw.refs.push_back(i);
        });
        std::sort(tw.refs.begin(), tw.refs.end());
    }
    return table;
}

template <typename T>
WeightTable precompute_weights(const Instance<T>& inst, const std::vector<KodTriangle>& catalog) {
    std::vector<Tri> tris;
    tris.reserve(catalog.size());
    for (const auto& kt : catalog) tris.push_back(kt.tri);
    return precompute_weights(inst, tris);
}

// Err_D: evaluates the triangulation's surface at every ref directly. Used
// as the ground truth the per-triangle weights must sum to.
template <typename T>
Rat triangulation_error(const Instance<T>& inst, const std::vector<Tri>& triangulation) {
    validate_instance(inst);
    std::set<std::pair<T, T>> site_coords;
    for (const auto& p : inst.points) site_coords.insert({p.x, p.y});
    Rat total = 0;
    for (std::size_t i = 0; i < inst.refs.size(); ++i) {
        if (site_coords.count({inst.refs[i].x, inst.refs[i].y})) continue;
        bool found = false;
        for (const Tri& t : triangulation) {
            const auto loc = point_in_triangle(inst.refs[i], inst.points[t[0]],
                                               inst.points[t[1]], inst.points[t[2]]);
            if (loc.where == TriLocation::Outside) continue;
            const Rat d = interpolate(inst, t, inst.refs[i]) - inst.h[i];
            total += d * d;
            found = true;
            break;
        }
        if (!found) throw OutsideTriangleError();
    }
    return total;
}

}  // namespace merit
