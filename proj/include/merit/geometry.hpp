#pragma once

#include "merit/predicates.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace merit {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
struct Circle {
    Point2<T> center;
    T radius_sq{};
};

using CircleD = Circle<double>;
using CircleQ = Circle<Rat>;

// Circumcircle of a non-degenerate triangle. Exact for rational inputs.
template <typename T>
Circle<T> circumcircle(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c) {
    const Point2<T> ab = b - a;
    const Point2<T> ac = c - a;
    const T d = T(2) * cross(ab, ac);
    if (d == T(0)) throw GeometryError("circumcircle: collinear points");
    const T ab2 = dot(ab, ab);
    const T ac2 = dot(ac, ac);
    const T ux = (ac.y * ab2 - ab.y * ac2) / d;
    const T uy = (ab.x * ac2 - ac.x * ab2) / d;
    Circle<T> circle;
    circle.center = {a.x + ux, a.y + uy};
    circle.radius_sq = ux * ux + uy * uy;
    return circle;
}

// Exact circumcircle of double input (doubles are exact rationals).
inline CircleQ circumcircle_exact(const PointD& a, const PointD& b, const PointD& c) {
    return circumcircle<Rat>(to_rational(a), to_rational(b), to_rational(c));
}

inline CircleQ circumcircle_exact(const PointI& a, const PointI& b, const PointI& c) {
    return circumcircle<Rat>(to_rational(a), to_rational(b), to_rational(c));
}

// True iff p lies strictly between a and b on the segment ab.
template <typename T>
bool strictly_on_segment(const Point2<T>& p, const Point2<T>& a, const Point2<T>& b) {
    if (orient2d(a, b, p) != 0) return false;
    if (p == a || p == b) return false;
    if (a.x != b.x) return (a.x < p.x) != (b.x < p.x);
    return (a.y < p.y) != (b.y < p.y);
}

// Proper crossing: the open interiors of segments pq and rs intersect.
// Shared endpoints and T-contacts are not proper; collinear overlap is.
template <typename T>
bool segments_properly_intersect(const Point2<T>& p, const Point2<T>& q, const Point2<T>& r,
                                 const Point2<T>& s) {
    const Sign d1 = orient2d(r, s, p);
    const Sign d2 = orient2d(r, s, q);
    const Sign d3 = orient2d(p, q, r);
    const Sign d4 = orient2d(p, q, s);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
        // Collinear: proper iff the open 1D intervals overlap.
        auto lo = [](const Point2<T>& u, const Point2<T>& v) { return u < v ? u : v; };
        auto hi = [](const Point2<T>& u, const Point2<T>& v) { return u < v ? v : u; };
        const Point2<T> lo1 = lo(p, q), hi1 = hi(p, q);
        const Point2<T> lo2 = lo(r, s), hi2 = hi(r, s);
        const Point2<T>& l = lo1 < lo2 ? lo2 : lo1;
        const Point2<T>& h = hi1 < hi2 ? hi1 : hi2;
        return l < h;
    }
    return false;
}

enum class TriLocation { Outside, Interior, OnEdge, AtVertex };

struct TriLocateResult {
    TriLocation where = TriLocation::Outside;
    // For OnEdge: index i means the edge (v[i], v[(i+1)%3]). For AtVertex: the vertex index.
    int index = -1;
};

// Locates p relative to the closed triangle (a, b, c); orientation-insensitive.
template <typename T>
TriLocateResult point_in_triangle(const Point2<T>& p, const Point2<T>& a, const Point2<T>& b,
                                  const Point2<T>& c) {
    if (p == a) return {TriLocation::AtVertex, 0};
    if (p == b) return {TriLocation::AtVertex, 1};
    if (p == c) return {TriLocation::AtVertex, 2};
    Sign flip = orient2d(a, b, c);
    if (flip == 0) throw GeometryError("point_in_triangle: degenerate triangle");
    const std::array<Sign, 3> s = {Sign(orient2d(a, b, p) * flip), Sign(orient2d(b, c, p) * flip),
                                   Sign(orient2d(c, a, p) * flip)};
    if (s[0] < 0 || s[1] < 0 || s[2] < 0) return {TriLocation::Outside, -1};
    if (s[0] == 0) return {TriLocation::OnEdge, 0};
    if (s[1] == 0) return {TriLocation::OnEdge, 1};
    if (s[2] == 0) return {TriLocation::OnEdge, 2};
    return {TriLocation::Interior, -1};
}

// Convex hull (counterclockwise, collinear boundary points dropped).
// Returns indices into points.
template <typename T>
std::vector<int> convex_hull(const std::vector<Point2<T>>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        return points[i] < points[j] || (points[i] == points[j] && i < j);
    });
    if (n < 3) return idx;
    std::vector<int> hull;
    hull.reserve(2 * n);
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (int i : idx) {
            while (hull.size() >= base + 2 &&
                   orient2d(points[hull[hull.size() - 2]], points[hull.back()], points[i]) <= 0)
                hull.pop_back();
            hull.push_back(i);
        }
        hull.pop_back();
        std::reverse(idx.begin(), idx.end());
    }
    return hull;
}

// Full CCW boundary cycle of the convex hull, including collinear boundary
// points; interior points of each hull edge are inserted in order along it.
template <typename T>
std::vector<int> boundary_cycle(const std::vector<Point2<T>>& points) {
    const auto hull = convex_hull(points);
    const int h = static_cast<int>(hull.size());
    if (h < 3) return hull;
    std::vector<int> cycle;
    for (int i = 0; i < h; ++i) {
        const int u = hull[i], v = hull[(i + 1) % h];
        cycle.push_back(u);
        std::vector<int> mid;
        for (int w = 0; w < static_cast<int>(points.size()); ++w)
            if (w != u && w != v && strictly_on_segment(points[w], points[u], points[v]))
                mid.push_back(w);
        const auto along = [&](int w) {
            return (to_rational(points[w].x) - to_rational(points[u].x)) *
                       (to_rational(points[v].x) - to_rational(points[u].x)) +
                   (to_rational(points[w].y) - to_rational(points[u].y)) *
                       (to_rational(points[v].y) - to_rational(points[u].y));
        };
        std::sort(mid.begin(), mid.end(), [&](int a, int b) { return along(a) < along(b); });
        cycle.insert(cycle.end(), mid.begin(), mid.end());
    }
    return cycle;
}

// Even-odd ray cast with exact predicates. The polygon may be a weakly
// simple closed walk; edges traversed twice (antennas) cancel. Precondition:
// p does not lie on the boundary.
template <typename T>
bool point_in_polygon(const Point2<T>& p, const std::vector<Point2<T>>& poly) {
    bool inside = false;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2<T>& a = poly[i];
        const Point2<T>& b = poly[(i + 1) % m];
        if (a.y <= p.y && b.y > p.y && orient2d(a, b, p) > 0) inside = !inside;
        if (b.y <= p.y && a.y > p.y && orient2d(a, b, p) < 0) inside = !inside;
    }
    return inside;
}

struct GeneralPositionReport {
    std::vector<std::array<int, 3>> collinear_triples;
    std::vector<std::array<int, 4>> cocircular_quadruples;
    bool truncated = false;

    bool ok() const { return collinear_triples.empty() && cocircular_quadruples.empty(); }
};

// Brute-force degeneracy scan; intended for small sets and test fixtures.
// Stops collecting after max_findings of either kind.
template <typename T>
GeneralPositionReport validate_general_position(const std::vector<Point2<T>>& pts,
                                                std::size_t max_findings = 32) {
    GeneralPositionReport report;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (orient2d(pts[i], pts[j], pts[k]) == 0) {
                    if (report.collinear_triples.size() < max_findings)
                        report.collinear_triples.push_back({i, j, k});
                    else
                        report.truncated = true;
                }
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (orient2d(pts[i], pts[j], pts[k]) == 0) continue;
                for (int l = k + 1; l < n; ++l) {
                    if (in_circle(pts[i], pts[j], pts[k], pts[l]) == 0) {
                        if (report.cocircular_quadruples.size() < max_findings)
                            report.cocircular_quadruples.push_back({i, j, k, l});
                        else
                            report.truncated = true;
                    }
                }
            }
    return report;
}

}  // namespace merit
