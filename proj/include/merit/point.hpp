#pragma once

#include "merit/rational.hpp"

#include <cstdint>
#include <functional>
#include <tuple>

namespace merit {

template <typename T>
struct Point2 {
    T x{};
    T y{};

    Point2() = default;
    Point2(T px, T py) : x(std::move(px)), y(std::move(py)) {}

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    friend bool operator<(const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
};

using PointD = Point2<double>;
using PointQ = Point2<Rat>;
// Gadget construction points live on the integer lattice; refs may be rational.
using PointI = Point2<std::int64_t>;

inline PointQ to_rational(const PointD& p) { return {Rat(p.x), Rat(p.y)}; }
inline PointQ to_rational(const PointI& p) { return {Rat(p.x), Rat(p.y)}; }
inline PointD to_dbl(const PointQ& p) { return {to_double(p.x), to_double(p.y)}; }
inline PointD to_dbl(const PointI& p) {
    return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

template <typename T>
T dot(const Point2<T>& a, const Point2<T>& b) {
    return a.x * b.x + a.y * b.y;
}

template <typename T>
T cross(const Point2<T>& a, const Point2<T>& b) {
    return a.x * b.y - a.y * b.x;
}

template <typename T>
T dist_sq(const Point2<T>& a, const Point2<T>& b) {
    const T dx = a.x - b.x;
    const T dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct PointIHash {
    std::size_t operator()(const PointI& p) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace merit
