#pragma once

#include "merit/point.hpp"

#include <cmath>

namespace merit {

// Sign results: -1, 0, +1.
using Sign = int;

namespace detail {

// Static filter constants after Shewchuk. epsilon is half the double ulp of 1.
constexpr double kEps = 1.1102230246251565e-16;
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

inline Sign sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

inline Sign sign_of(const Rat& v) {
    const int s = v.sign();
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

inline Sign orient2d_exact(const PointD& a, const PointD& b, const PointD& c) {
    const Rat det = (Rat(b.x) - Rat(a.x)) * (Rat(c.y) - Rat(a.y)) -
                    (Rat(b.y) - Rat(a.y)) * (Rat(c.x) - Rat(a.x));
    return sign_of(det);
}

inline Sign in_circle_exact(const PointD& a, const PointD& b, const PointD& c, const PointD& d) {
    const Rat adx = Rat(a.x) - Rat(d.x), ady = Rat(a.y) - Rat(d.y);
    const Rat bdx = Rat(b.x) - Rat(d.x), bdy = Rat(b.y) - Rat(d.y);
    const Rat cdx = Rat(c.x) - Rat(d.x), cdy = Rat(c.y) - Rat(d.y);
    const Rat alift = adx * adx + ady * ady;
    const Rat blift = bdx * bdx + bdy * bdy;
    const Rat clift = cdx * cdx + cdy * cdy;
    const Rat det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                    clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

}  // namespace detail

// Sign of twice the signed area of triangle (a, b, c).
// Positive iff c lies strictly left of the directed line a -> b. Exact.
inline Sign orient2d(const PointD& a, const PointD& b, const PointD& c) {
    const double detleft = (b.x - a.x) * (c.y - a.y);
    const double detright = (b.y - a.y) * (c.x - a.x);
    const double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return detail::sign_of(det);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return detail::sign_of(det);
        detsum = -detleft - detright;
    } else {
        return detail::sign_of(det);
    }
    if (det >= detail::kCcwErrBound * detsum || -det >= detail::kCcwErrBound * detsum)
        return detail::sign_of(det);
    return detail::orient2d_exact(a, b, c);
}

inline Sign orient2d(const PointQ& a, const PointQ& b, const PointQ& c) {
    const Rat det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return detail::sign_of(det);
}

inline Sign orient2d(const PointI& a, const PointI& b, const PointI& c) {
    // Gadget coordinates stay far below 2^31, so the product cannot overflow.
    const std::int64_t det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

// Sign of the standard in-circle determinant. For (a, b, c) in counterclockwise
// order: positive iff d lies strictly inside the circle through a, b, c,
// zero iff cocircular. For clockwise (a, b, c) the sign flips. Exact.
inline Sign in_circle(const PointD& a, const PointD& b, const PointD& c, const PointD& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);
    const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                             (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                             (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    const double errbound = detail::kIccErrBound * permanent;
    if (det > errbound || -det > errbound) return detail::sign_of(det);
    return detail::in_circle_exact(a, b, c, d);
}

inline Sign in_circle(const PointQ& a, const PointQ& b, const PointQ& c, const PointQ& d) {
    const Rat adx = a.x - d.x, ady = a.y - d.y;
    const Rat bdx = b.x - d.x, bdy = b.y - d.y;
    const Rat cdx = c.x - d.x, cdy = c.y - d.y;
    const Rat alift = adx * adx + ady * ady;
    const Rat blift = bdx * bdx + bdy * bdy;
    const Rat clift = cdx * cdx + cdy * cdy;
    const Rat det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                    clift * (adx * bdy - bdx * ady);
    return detail::sign_of(det);
}

inline Sign in_circle(const PointI& a, const PointI& b, const PointI& c, const PointI& d) {
    // Coordinates are bounded by the reduction scale (~1e6), so the lifted
    // determinant fits comfortably in 128 bits.
    using I128 = __int128;
    const I128 adx = a.x - d.x, ady = a.y - d.y;
    const I128 bdx = b.x - d.x, bdy = b.y - d.y;
    const I128 cdx = c.x - d.x, cdy = c.y - d.y;
    const I128 alift = adx * adx + ady * ady;
    const I128 blift = bdx * bdx + bdy * bdy;
    const I128 clift = cdx * cdx + cdy * cdy;
    const I128 det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                     clift * (adx * bdy - bdx * ady);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace merit
