#pragma once

#include "merit/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace merit {

// Gadget constructions for the reduction from planar 3-SAT to minimum-error
// triangulation: a formula becomes a lattice point set with coupled
// reference points whose zero-error triangulations are exactly the
// satisfying assignments.

struct NotAxisAlignedError : std::invalid_argument {
    NotAxisAlignedError() : std::invalid_argument("wire endpoints share neither row nor column") {}
};

struct ForbiddenOverlapError : std::runtime_error {
    explicit ForbiddenOverlapError(const PointI& p)
        : std::runtime_error("gadget point collides with a forbidden point at (" +
                             std::to_string(p.x) + ", " + std::to_string(p.y) + ")") {}
    explicit ForbiddenOverlapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSharedAnchorError : std::runtime_error {
    NoSharedAnchorError() : std::runtime_error("combine: gadgets share no anchor point") {}
};

struct SquareNotEmptyError : std::runtime_error {
    SquareNotEmptyError(const PointI& s, const PointI& t)
        : std::runtime_error("mandatory edge (" + std::to_string(s.x) + ", " +
                             std::to_string(s.y) + ")-(" + std::to_string(t.x) + ", " +
                             std::to_string(t.y) + ") admits no empty replacement circle") {}
};

struct OverlapDetectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedEmbeddingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Height of the lifted point (p, f(p)) on the paraboloid z = x^2 + y^2.
inline std::int64_t paraboloid_f(const PointI& p) { return p.x * p.x + p.y * p.y; }

inline Rat paraboloid_f(const PointQ& p) { return p.x * p.x + p.y * p.y; }

// The lift of a circle onto the paraboloid is planar. href evaluates that
// plane at r; f(r) - href(c, r) = |r - center|^2 - radius^2, so a triangle
// inscribed in c fits a reference point (r, href(c, r)) with zero error.
inline Rat href(const CircleQ& c, const PointQ& r) {
    return Rat(2) * c.center.x * r.x + Rat(2) * c.center.y * r.y - c.center.x * c.center.x -
           c.center.y * c.center.y + c.radius_sq;
}

using LatticeEdge = std::array<PointI, 2>;
using LatticeTri = std::array<PointI, 3>;

inline LatticeEdge lat_edge(const PointI& a, const PointI& b) {
    return a < b ? LatticeEdge{a, b} : LatticeEdge{b, a};
}

// Reference point coupled to a circle of gadget points. Signal refs carry
// the two diagonal chords: the triangulation must use pos_edge or neg_edge
// to fit the ref exactly, and the choice is the ref's signal. Replacement
// refs instead force pos_edge unconditionally.
struct CoupledRef {
    PointQ r;
    CircleQ circle;
    Rat h;
    std::optional<LatticeEdge> pos_edge;  // positive-slope signal edge
    std::optional<LatticeEdge> neg_edge;  // negative-slope signal edge
    int slot = -1;                        // signal slot id, -1 for uncoupled refs
    bool forces_edge = false;             // pos_edge is unconditionally required
};

// Ref whose zero-error options are whole triangles instead of an edge pair:
// the clause centre offers one triangle per literal, the negation segment
// centres offer two.
struct TriangleChoice {
    int ref = -1;  // index into Gadget::refs
    std::vector<LatticeTri> candidates;
    bool is_clause = false;
};

// A partial construction: triangulation points, coupled refs, forbidden
// lattice points, and anchor bits where gadgets may be glued. Signal slots
// form a union-find with parity so gluing can force two slots equal or
// opposite; every ref of one rigid piece (bit, wire, multiplier) shares one
// slot. Invariant: points and forbidden are disjoint, anchors are bit refs.
struct Gadget {
    std::set<PointI> points;
    std::vector<CoupledRef> refs;
    std::set<PointI> forbidden;
    std::set<PointI> anchors;
    std::vector<LatticeEdge> mandatory;
    std::vector<TriangleChoice> choices;

    int slot_count = 0;
    std::vector<int> slot_parent;
    std::vector<unsigned char> slot_parity;  // parity of the link to the parent

    int new_slot() {
        slot_parent.push_back(slot_count);
        slot_parity.push_back(0);
        return slot_count++;
    }

    // Root slot and the parity of the path to it.
    std::pair<int, bool> find_slot(int s) const {
        bool par = false;
        while (slot_parent[s] != s) {
            par ^= slot_parity[s] != 0;
            s = slot_parent[s];
        }
        return {s, par};
    }

    // Forces signal(a) == signal(b) xor opposite.
    void union_slots(int a, int b, bool opposite) {
        const auto [ra, pa] = find_slot(a);
        const auto [rb, pb] = find_slot(b);
        if (ra == rb) {
            if ((pa ^ pb) != opposite) throw std::logic_error("gadget: contradictory slot link");
            return;
        }
        slot_parent[rb] = ra;
        slot_parity[rb] = static_cast<unsigned char>(pa ^ pb ^ opposite);
    }

    int ref_at(const PointQ& r) const {
        for (std::size_t i = 0; i < refs.size(); ++i)
            if (refs[i].r == r) return static_cast<int>(i);
        return -1;
    }
    int ref_at(const PointI& r) const { return ref_at(to_rational(r)); }
};

// Lattice isometry p -> M p + t with M in the symmetry group of the square.
// swap_labels relabels every ref's signal edges after mapping, keeping the
// convention that pos_edge has positive slope.
struct LatticeMap {
    std::array<std::int64_t, 4> m{1, 0, 0, 1};
    PointI t{0, 0};
    bool swap_labels = false;

    PointI operator()(const PointI& p) const {
        return {m[0] * p.x + m[1] * p.y + t.x, m[2] * p.x + m[3] * p.y + t.y};
    }
    PointQ operator()(const PointQ& p) const {
        return {Rat(m[0]) * p.x + Rat(m[1]) * p.y + Rat(t.x),
                Rat(m[2]) * p.x + Rat(m[3]) * p.y + Rat(t.y)};
    }
};

inline LatticeMap translation(const PointI& d) { return {{1, 0, 0, 1}, d, false}; }

// Quarter turn clockwise about c; slope signs flip, so labels swap.
inline LatticeMap rotation_cw(const PointI& c) {
    return {{0, 1, -1, 0}, {c.x - c.y, c.y + c.x}, true};
}

inline LatticeMap rotation_pi(const PointI& c) {
    return {{-1, 0, 0, -1}, {2 * c.x, 2 * c.y}, false};
}

// Reflection across the vertical line through x = ax; slope signs flip.
inline LatticeMap reflect_vertical(std::int64_t ax) {
    return {{-1, 0, 0, 1}, {2 * ax, 0}, true};
}

// Reflection across the slope -1 diagonal through c; slope signs persist.
inline LatticeMap reflect_neg_diagonal(const PointI& c) {
    return {{0, -1, -1, 0}, {c.x + c.y, c.y + c.x}, false};
}

// Applies an isometry to every coordinate of the gadget. Circle radii are
// preserved; ref heights are recomputed from the moved circles.
inline Gadget apply_map(const Gadget& g, const LatticeMap& map) {
    Gadget out;
    for (const auto& p : g.points) out.points.insert(map(p));
    for (const auto& p : g.forbidden) out.forbidden.insert(map(p));
    for (const auto& p : g.anchors) out.anchors.insert(map(p));
    for (const auto& e : g.mandatory) out.mandatory.push_back(lat_edge(map(e[0]), map(e[1])));
    out.refs = g.refs;
    for (auto& ref : out.refs) {
        ref.r = map(ref.r);
        ref.circle.center = map(ref.circle.center);
        ref.h = href(ref.circle, ref.r);
        if (ref.pos_edge) ref.pos_edge = lat_edge(map((*ref.pos_edge)[0]), map((*ref.pos_edge)[1]));
        if (ref.neg_edge) ref.neg_edge = lat_edge(map((*ref.neg_edge)[0]), map((*ref.neg_edge)[1]));
        if (map.swap_labels) std::swap(ref.pos_edge, ref.neg_edge);
    }
    out.choices = g.choices;
    for (auto& ch : out.choices)
        for (auto& t : ch.candidates) t = {map(t[0]), map(t[1]), map(t[2])};
    out.slot_count = g.slot_count;
    out.slot_parent = g.slot_parent;
    out.slot_parity = g.slot_parity;
    return out;
}

namespace detail {

inline void add_point(Gadget& g, const PointI& p) {
    if (g.forbidden.count(p)) throw ForbiddenOverlapError(p);
    g.points.insert(p);
}

// Marks every lattice point of the closed disk forbidden, except the
// gadget's own points (the circle's inscribed points stay usable).
inline void add_circle_forbidden(Gadget& g, const CircleQ& c) {
    const double cx = to_double(c.center.x), cy = to_double(c.center.y);
    const double rad = std::sqrt(to_double(c.radius_sq)) + 1.0;
    for (std::int64_t x = static_cast<std::int64_t>(std::floor(cx - rad));
         x <= static_cast<std::int64_t>(std::ceil(cx + rad)); ++x)
        for (std::int64_t y = static_cast<std::int64_t>(std::floor(cy - rad));
             y <= static_cast<std::int64_t>(std::ceil(cy + rad)); ++y) {
            const PointI p{x, y};
            if (dist_sq(to_rational(p), c.center) > c.radius_sq) continue;
            if (!g.points.count(p)) g.forbidden.insert(p);
        }
}

// Merges src into dst: point sets union, refs at equal positions are
// identified (their slots join with even parity), anchors combine by
// symmetric difference so a glued anchor is consumed. require_anchor is the
// combine() contract; internal assembly of disjoint parts passes false.
inline void merge_gadget(Gadget& dst, const Gadget& src, bool require_anchor) {
    for (const auto& p : src.points)
        if (dst.forbidden.count(p)) throw ForbiddenOverlapError(p);
    for (const auto& p : dst.points)
        if (src.forbidden.count(p)) throw ForbiddenOverlapError(p);
    if (require_anchor) {
        bool shared = false;
        for (const auto& a : src.anchors)
            if (dst.anchors.count(a)) {
                shared = true;
                break;
            }
        if (!shared) throw NoSharedAnchorError();
    }

    const int off = dst.slot_count;
    dst.slot_count += src.slot_count;
    dst.slot_parent.reserve(dst.slot_count);
    for (int p : src.slot_parent) dst.slot_parent.push_back(p + off);
    dst.slot_parity.insert(dst.slot_parity.end(), src.slot_parity.begin(),
                           src.slot_parity.end());

    std::map<PointQ, int> at;
    for (std::size_t i = 0; i < dst.refs.size(); ++i) at.emplace(dst.refs[i].r, i);
    std::vector<int> remap(src.refs.size());
    for (std::size_t i = 0; i < src.refs.size(); ++i) {
        CoupledRef moved = src.refs[i];
        if (moved.slot >= 0) moved.slot += off;
        const auto it = at.find(moved.r);
        if (it == at.end()) {
            remap[i] = static_cast<int>(dst.refs.size());
            at.emplace(moved.r, remap[i]);
            dst.refs.push_back(std::move(moved));
            continue;
        }
        CoupledRef& mine = dst.refs[it->second];
        if (mine.circle.center != moved.circle.center ||
            mine.circle.radius_sq != moved.circle.radius_sq || mine.h != moved.h ||
            mine.pos_edge != moved.pos_edge || mine.neg_edge != moved.neg_edge)
            throw ForbiddenOverlapError("coincident refs with different couplings");
        remap[i] = it->second;
        if (mine.slot >= 0 && moved.slot >= 0)
            dst.union_slots(mine.slot, moved.slot, false);
        else if (mine.slot < 0)
            mine.slot = moved.slot;
    }

    for (const auto& ch : src.choices) {
        TriangleChoice c = ch;
        c.ref = remap[c.ref];
        dst.choices.push_back(std::move(c));
    }

    dst.points.insert(src.points.begin(), src.points.end());
    dst.forbidden.insert(src.forbidden.begin(), src.forbidden.end());
    for (const auto& a : src.anchors) {
        if (dst.anchors.count(a))
            dst.anchors.erase(a);
        else
            dst.anchors.insert(a);
    }
    dst.mandatory.insert(dst.mandatory.end(), src.mandatory.begin(), src.mandatory.end());
}

}  // namespace detail

// Glues two gadgets at their shared anchor bits. The shared bits' refs are
// identified, which ties the signal slots together.
inline Gadget combine(const Gadget& g1, const Gadget& g2) {
    Gadget out = g1;
    detail::merge_gadget(out, g2, true);
    return out;
}

enum class BitAxis { Horizontal, Vertical };

// Bit at r: six points of the squared-radius-2 circle about r, with the two
// unit diagonals through r as the signal edges. The two axis points in the
// bit's direction are omitted and the axis is forbidden out to distance 2,
// so a run of bits interacts only through the diagonals.
inline Gadget make_bit(const PointI& r, BitAxis axis) {
    Gadget g;
    const int slot = g.new_slot();
    for (const auto& d :
         {PointI{-1, -1}, PointI{1, 1}, PointI{-1, 1}, PointI{1, -1}})
        g.points.insert(r + d);
    if (axis == BitAxis::Horizontal) {
        g.points.insert(r + PointI{0, -1});
        g.points.insert(r + PointI{0, 1});
        for (std::int64_t d = -2; d <= 2; ++d) g.forbidden.insert(r + PointI{d, 0});
    } else {
        g.points.insert(r + PointI{-1, 0});
        g.points.insert(r + PointI{1, 0});
        for (std::int64_t d = -2; d <= 2; ++d) g.forbidden.insert(r + PointI{0, d});
    }
    CoupledRef ref;
    ref.r = to_rational(r);
    ref.circle = CircleQ{to_rational(r), Rat(2)};
    ref.h = href(ref.circle, ref.r);
    ref.pos_edge = lat_edge(r + PointI{-1, -1}, r + PointI{1, 1});
    ref.neg_edge = lat_edge(r + PointI{-1, 1}, r + PointI{1, -1});
    ref.slot = slot;
    g.refs.push_back(std::move(ref));
    g.anchors.insert(r);
    return g;
}

// Straight run of bits on every lattice point from a to b inclusive, all on
// one signal slot. Adjacent bits' opposite-sign diagonals cross, so any
// zero-error triangulation carries one uniform signal down the run.
inline Gadget make_wire_segment(const PointI& a, const PointI& b) {
    if (a.x != b.x && a.y != b.y) throw NotAxisAlignedError();
    const BitAxis axis = (a.y == b.y) ? BitAxis::Horizontal : BitAxis::Vertical;
    const PointI lo = a < b ? a : b;
    const PointI hi = a < b ? b : a;
    const PointI step = axis == BitAxis::Horizontal ? PointI{1, 0} : PointI{0, 1};
    Gadget g = make_bit(lo, axis);
    for (PointI p = lo + step; !(hi < p); p = p + step)
        detail::merge_gadget(g, make_bit(p, axis), false);
    for (std::size_t i = 1; i < g.refs.size(); ++i)
        g.union_slots(g.refs[0].slot, g.refs[i].slot, false);
    g.anchors = {a, b};
    return g;
}

// Multiplier at x: four anchor bits at distance 2 along the axes and four
// inner refs on the squared-radius-5 circle through the eight surrounding
// lattice points. Each inner ref's signal edges are chords through it, so
// all four bits are forced to agree; the eight outer unit edges are
// mandatory so the inner circle cannot be bypassed.
inline Gadget make_multiplier(const PointI& x) {
    Gadget g = make_bit(x + PointI{2, 0}, BitAxis::Horizontal);
    detail::merge_gadget(g, make_bit(x + PointI{-2, 0}, BitAxis::Horizontal), false);
    detail::merge_gadget(g, make_bit(x + PointI{0, 2}, BitAxis::Vertical), false);
    detail::merge_gadget(g, make_bit(x + PointI{0, -2}, BitAxis::Vertical), false);
    for (const auto& d : {PointI{2, 1}, PointI{1, 2}, PointI{-1, 2}, PointI{-2, 1},
                          PointI{-2, -1}, PointI{-1, -2}, PointI{1, -2}, PointI{2, -1}})
        detail::add_point(g, x + d);

    const CircleQ inner{to_rational(x), Rat(5)};
    const int slot = g.refs[0].slot;
    for (std::size_t i = 1; i < g.refs.size(); ++i)
        g.union_slots(slot, g.refs[i].slot, false);
    const std::array<std::array<PointI, 5>, 4> chords = {{
        // ref offset, pos chord, neg chord; each chord passes through the ref
        {{{1, 0}, {-1, -2}, {2, 1}, {2, -1}, {-1, 2}}},
        {{{0, 1}, {-2, -1}, {1, 2}, {2, -1}, {-1, 2}}},
        {{{-1, 0}, {-2, -1}, {1, 2}, {-2, 1}, {1, -2}}},
        {{{0, -1}, {-1, -2}, {2, 1}, {-2, 1}, {1, -2}}},
    }};
    for (const auto& c : chords) {
        CoupledRef ref;
        ref.r = to_rational(x + c[0]);
        ref.circle = inner;
        ref.h = href(inner, ref.r);
        ref.pos_edge = lat_edge(x + c[1], x + c[2]);
        ref.neg_edge = lat_edge(x + c[3], x + c[4]);
        ref.slot = slot;
        g.refs.push_back(std::move(ref));
    }
    detail::add_circle_forbidden(g, inner);

    for (const auto& sx : {std::int64_t{1}, std::int64_t{-1}})
        for (const auto& sy : {std::int64_t{1}, std::int64_t{-1}}) {
            const PointI corner{x.x + sx, x.y + sy};
            g.mandatory.push_back(lat_edge(corner, {x.x + 2 * sx, x.y + sy}));
            g.mandatory.push_back(lat_edge(corner, {x.x + sx, x.y + 2 * sy}));
        }
    return g;
}

namespace detail {

// Three horizontal bits rightward from a with a long ref at a + (27/5, 0):
// its signal edges run from beside the leftmost bit out to two far points,
// crossing the bits' diagonals so the long ref joins the bits' slot. The
// edge endpoints are concyclic, which pins the long ref's circle.
inline Gadget long_ref_chain(const PointI& a) {
    Gadget g = make_bit(a, BitAxis::Horizontal);
    merge_gadget(g, make_bit(a + PointI{1, 0}, BitAxis::Horizontal), false);
    merge_gadget(g, make_bit(a + PointI{2, 0}, BitAxis::Horizontal), false);
    g.union_slots(g.refs[0].slot, g.refs[1].slot, false);
    g.union_slots(g.refs[0].slot, g.refs[2].slot, false);
    add_point(g, a + PointI{23, 4});
    add_point(g, a + PointI{23, -4});

    CoupledRef lr;
    lr.r = {Rat(a.x) + Rat(27, 5), Rat(a.y)};
    lr.circle = circumcircle_exact(a + PointI{1, -1}, a + PointI{23, 4}, a + PointI{1, 1});
    lr.h = href(lr.circle, lr.r);
    lr.pos_edge = lat_edge(a + PointI{1, -1}, a + PointI{23, 4});
    lr.neg_edge = lat_edge(a + PointI{1, 1}, a + PointI{23, -4});
    lr.slot = g.refs[0].slot;
    g.refs.push_back(std::move(lr));
    g.anchors = {a};
    return g;
}

constexpr std::int64_t kClauseRadiusSq = 250;

// Clause circle points shared by every candidate triangle.
inline std::array<PointI, 5> clause_circle(const PointI& c) {
    return {c + PointI{5, -15}, c + PointI{15, -5}, c + PointI{-15, -5}, c + PointI{9, 13},
            c + PointI{-9, 13}};
}

// Mandatory bridges between the chains and the circle points of the clause;
// offsets relative to the clause centre. The first six belong to the first
// and second chains and survive in the one-sided segments.
inline std::vector<LatticeEdge> clause_mandatory(const PointI& c, bool with_third) {
    std::vector<LatticeEdge> edges = {
        lat_edge(c + PointI{11, -13}, c + PointI{13, -11}),
        lat_edge(c + PointI{9, 13}, c + PointI{16, 13}),
        lat_edge(c + PointI{11, -21}, c + PointI{11, -13}),
        lat_edge(c + PointI{13, -11}, c + PointI{21, -11}),
        lat_edge(c + PointI{-9, -18}, c + PointI{11, -21}),
        lat_edge(c + PointI{18, 9}, c + PointI{21, -11}),
    };
    if (with_third) {
        edges.push_back(lat_edge(c + PointI{-9, 13}, c + PointI{-16, 13}));
        edges.push_back(lat_edge(c + PointI{-13, -16}, c + PointI{-13, -11}));
        edges.push_back(lat_edge(c + PointI{-13, -11}, c + PointI{-21, -11}));
        edges.push_back(lat_edge(c + PointI{-18, 9}, c + PointI{-21, -11}));
    }
    return edges;
}

}  // namespace detail

// Clause gadget at c. Three long-ref chains approach the squared-radius-250
// circle about c; the centre ref at c + (0, 11) is fit exactly by one of
// three inscribed triangles, and triangle i is crossed by one signal edge
// of chain i (the positive edge for the first two chains, the negative edge
// for the third). The chain anchors are where literal wires attach.
inline Gadget make_clause(const PointI& c) {
    Gadget g = detail::long_ref_chain(c + PointI{-12, -17});
    detail::merge_gadget(g, apply_map(g, reflect_neg_diagonal(c)), false);
    detail::merge_gadget(
        g, apply_map(detail::long_ref_chain(c + PointI{-12, -17}), rotation_cw(c)), false);

    for (const auto& p : detail::clause_circle(c)) detail::add_point(g, p);

    CoupledRef rc;
    rc.r = to_rational(c + PointI{0, 11});
    rc.circle = CircleQ{to_rational(c), Rat(detail::kClauseRadiusSq)};
    rc.h = href(rc.circle, rc.r);
    g.refs.push_back(std::move(rc));
    TriangleChoice ch;
    ch.ref = static_cast<int>(g.refs.size()) - 1;
    const auto circ = detail::clause_circle(c);
    ch.candidates = {{circ[0], circ[3], circ[4]},
                     {circ[1], circ[3], circ[4]},
                     {circ[2], circ[3], circ[4]}};
    ch.is_clause = true;
    g.choices.push_back(std::move(ch));

    for (const auto& ref : g.refs) detail::add_circle_forbidden(g, ref.circle);
    for (const auto& e : detail::clause_mandatory(c, true)) g.mandatory.push_back(e);
    return g;
}

// One-sided clause remnant used inside the negation gadget: the first two
// chains and their two candidate triangles only. On the positive side both
// triangles are blocked by the chains' positive edges, so a zero-error
// triangulation forces at least one incoming signal negative; the negative
// side is the mirror image with switched labels.
inline Gadget make_negation_segment(const PointI& c, bool positive_side) {
    if (!positive_side)
        return apply_map(make_negation_segment(c, true),
                         LatticeMap{{-1, 0, 0, 1}, {2 * c.x, 0}, true});

    Gadget g = detail::long_ref_chain(c + PointI{-12, -17});
    detail::merge_gadget(g, apply_map(g, reflect_neg_diagonal(c)), false);

    const auto circ = detail::clause_circle(c);
    for (int i : {0, 1, 3, 4}) detail::add_point(g, circ[i]);

    CoupledRef rc;
    rc.r = to_rational(c + PointI{0, 11});
    rc.circle = CircleQ{to_rational(c), Rat(detail::kClauseRadiusSq)};
    rc.h = href(rc.circle, rc.r);
    g.refs.push_back(std::move(rc));
    TriangleChoice ch;
    ch.ref = static_cast<int>(g.refs.size()) - 1;
    ch.candidates = {{circ[0], circ[3], circ[4]}, {circ[1], circ[3], circ[4]}};
    g.choices.push_back(std::move(ch));

    for (const auto& ref : g.refs) detail::add_circle_forbidden(g, ref.circle);
    for (const auto& e : detail::clause_mandatory(c, false)) g.mandatory.push_back(e);
    return g;
}

// Negation gadget at x: a multiplier whose bottom anchor is the input, a
// positive and a negative one-sided segment bridging to a second multiplier
// at x + (0, 38), and corner multipliers routing around them. The segments
// let a zero-error triangulation pair the two complexes only with opposite
// signals, and the slot link records that inversion. Anchors reduce to the
// input a = x - (0, 2) and the output a' = x + (0, 40); set below for the
// half-turned variant used under the axis (a = x + (0, 2), a' = x - (0, 40)).
inline Gadget make_negation(const PointI& x, bool below = false) {
    if (below) return apply_map(make_negation(x, false), rotation_pi(x));

    Gadget g = make_multiplier(x);
    const auto glue = [&](const Gadget& piece) { detail::merge_gadget(g, piece, true); };
    glue(make_wire_segment(x + PointI{2, 0}, x + PointI{15, 0}));
    glue(make_negation_segment(x + PointI{27, 17}, true));
    glue(make_wire_segment(x + PointI{-15, 0}, x + PointI{-2, 0}));
    glue(make_negation_segment(x + PointI{-27, 17}, false));
    glue(make_wire_segment(x + PointI{44, 29}, x + PointI{44, 36}));
    glue(make_multiplier(x + PointI{44, 38}));
    glue(make_wire_segment(x + PointI{2, 38}, x + PointI{42, 38}));
    glue(make_multiplier(x + PointI{0, 38}));
    glue(make_wire_segment(x + PointI{-42, 38}, x + PointI{-2, 38}));
    glue(make_multiplier(x + PointI{-44, 38}));
    glue(make_wire_segment(x + PointI{-44, 29}, x + PointI{-44, 36}));

    const int in = g.ref_at(x + PointI{0, -2});
    const int out = g.ref_at(x + PointI{0, 40});
    g.union_slots(g.refs[in].slot, g.refs[out].slot, true);
    g.anchors = {x + PointI{0, -2}, x + PointI{0, 40}};
    return g;
}

// Replaces every mandatory edge by a midpoint ref that any triangulation
// fits exactly iff it keeps the edge. The ref's circle is the diametral
// circle when its closed disk holds no other gadget point, otherwise the
// circumcircle of one of the two squares erected over the edge (lex-smaller
// centre tried first); the chosen disk becomes forbidden.
inline void replace_mandatory_edges(Gadget& g) {
    const std::vector<LatticeEdge> edges = std::move(g.mandatory);
    g.mandatory.clear();
    for (const auto& e : edges) {
        const PointI s = e[0], t = e[1];
        const PointQ mid{Rat(s.x + t.x) / 2, Rat(s.y + t.y) / 2};
        const Rat len2 = Rat(dist_sq(s, t));

        const auto empty = [&](const CircleQ& c) {
            const double cx = to_double(c.center.x), cy = to_double(c.center.y);
            const double rad = std::sqrt(to_double(c.radius_sq)) + 1.0;
            for (std::int64_t x = static_cast<std::int64_t>(std::floor(cx - rad));
                 x <= static_cast<std::int64_t>(std::ceil(cx + rad)); ++x)
                for (std::int64_t y = static_cast<std::int64_t>(std::floor(cy - rad));
                     y <= static_cast<std::int64_t>(std::ceil(cy + rad)); ++y) {
                    const PointI p{x, y};
                    if (p == s || p == t) continue;
                    if (!g.points.count(p)) continue;
                    if (dist_sq(to_rational(p), c.center) <= c.radius_sq) return false;
                }
            return true;
        };

        std::optional<CircleQ> chosen;
        const CircleQ diametral{mid, len2 / 4};
        if (empty(diametral)) {
            chosen = diametral;
        } else {
            const PointI d = t - s;
            const PointQ perp{Rat(-d.y) / 2, Rat(d.x) / 2};
            std::array<CircleQ, 2> squares = {
                CircleQ{{mid.x + perp.x, mid.y + perp.y}, len2 / 2},
                CircleQ{{mid.x - perp.x, mid.y - perp.y}, len2 / 2}};
            if (squares[1].center < squares[0].center) std::swap(squares[0], squares[1]);
            for (const auto& c : squares)
                if (!chosen && empty(c)) chosen = c;
            if (!chosen) throw SquareNotEmptyError(s, t);
        }

        CoupledRef rep;
        rep.r = mid;
        rep.circle = *chosen;
        rep.h = href(*chosen, mid);
        rep.pos_edge = lat_edge(s, t);
        rep.forces_edge = true;
        g.refs.push_back(std::move(rep));
        detail::add_circle_forbidden(g, *chosen);
    }
}

struct Literal {
    int var = 0;
    bool negated = false;
};

struct ClausePlacement {
    PointI pos;                   // clause centre; pos.y > 0 above the axis, < 0 below
    std::array<Literal, 3> lits;  // wired to the three clause anchors in this order
};

// Plane layout of a planar 3-SAT formula: variable gadgets on the x axis,
// clause gadgets above or below, wires routed canonically (one vertical run
// from the variable, one horizontal lane, and for the upper anchors a
// vertical drop into the stack). All coordinates are final lattice values.
struct Embedding {
    int num_vars = 0;
    std::vector<std::int64_t> var_x;
    std::vector<ClausePlacement> clauses;
};

struct BuildOptions {
    std::int64_t alpha = 200;  // spacing of the multipliers inside a variable gadget
};

struct HardnessInstance {
    Gadget gadget;
    std::vector<PointI> points;  // sorted gadget points
    std::vector<Rat> f;          // paraboloid heights
    int num_vars = 0;
    std::vector<int> var_ref;    // per variable: a ref index carrying its raw signal
    std::vector<std::array<Literal, 3>> clause_lits;  // per clause choice, in order
};

// Canonical embedding for a formula: variables at multiples of gamma,
// clause j in tier j/2 above (even j) or below (odd j) the axis, literals
// permuted so each clause's wires route without crossing.
inline Embedding layout_formula(int num_vars, const std::vector<std::array<Literal, 3>>& clauses,
                                std::int64_t gamma = 0) {
    if (num_vars < 1) throw MalformedEmbeddingError("layout: no variables");
    if (gamma == 0) gamma = 1000 * (num_vars + static_cast<std::int64_t>(clauses.size()));
    if (gamma < 120) throw MalformedEmbeddingError("layout: gamma below 120");
    Embedding emb;
    emb.num_vars = num_vars;
    for (int i = 0; i < num_vars; ++i) emb.var_x.push_back(gamma * i);
    int above = 0, below = 0;
    for (std::size_t j = 0; j < clauses.size(); ++j) {
        std::array<Literal, 3> lits = clauses[j];
        std::sort(lits.begin(), lits.end(),
                  [](const Literal& a, const Literal& b) { return a.var < b.var; });
        ClausePlacement cp;
        const bool up = j % 2 == 0;
        const std::int64_t tier = up ? above++ : below++;
        const std::int64_t y = gamma + ((gamma / 2) * tier);
        if (up) {
            // leftmost literal feeds the lower-left anchor, the other two
            // come down from above; the clause sits between them.
            cp.lits = lits;
            cp.pos = {gamma * lits[1].var - gamma / 2, y};
        } else {
            // under the axis the anchor order is first, third, second, and
            // the first literal approaches from the right.
            cp.lits = {lits[2], lits[0], lits[1]};
            cp.pos = {gamma * lits[2].var - gamma / 2, -y};
        }
        emb.clauses.push_back(cp);
    }
    return emb;
}

// Assembles the full instance for an embedded formula: variable gadgets
// (one multiplier per clause, chained by wires), routed literal wires with
// negation gadgets inserted on the vertical run where the literal's
// polarity demands one, clause gadgets glued onto the three route ends, and
// finally mandatory-edge replacement. Geometric conflicts surface as
// OverlapDetectedError, layout violations as MalformedEmbeddingError.
inline HardnessInstance build_instance(const Embedding& emb, const BuildOptions& opts = {}) {
    if (emb.num_vars < 1) throw MalformedEmbeddingError("embedding: no variables");
    if (static_cast<int>(emb.var_x.size()) != emb.num_vars)
        throw MalformedEmbeddingError("embedding: |var_x| != num_vars");
    // A variable gadget spans alpha * (clauses - 1) plus route clearance on
    // both flanks; closer spacing would fuse neighbouring chains.
    const std::int64_t width =
        opts.alpha * std::max<std::int64_t>(0, static_cast<std::int64_t>(emb.clauses.size()) - 1) +
        104;
    for (std::size_t i = 1; i < emb.var_x.size(); ++i)
        if (emb.var_x[i] - emb.var_x[i - 1] < width)
            throw MalformedEmbeddingError("embedding: variables overlap or out of order");
    for (const auto& cl : emb.clauses) {
        const std::int64_t away = cl.pos.y < 0 ? -cl.pos.y : cl.pos.y;
        if (away < 100) throw MalformedEmbeddingError("embedding: clause too close to the axis");
        std::set<int> vars;
        for (const auto& lit : cl.lits) {
            if (lit.var < 0 || lit.var >= emb.num_vars)
                throw MalformedEmbeddingError("embedding: literal variable out of range");
            vars.insert(lit.var);
        }
        if (vars.size() != 3) throw MalformedEmbeddingError("embedding: repeated clause variable");
    }

    const std::int64_t alpha = opts.alpha;
    const int num_clauses = static_cast<int>(emb.clauses.size());
    HardnessInstance hi;
    hi.num_vars = emb.num_vars;
    Gadget& inst = hi.gadget;

    try {
        // Variable gadgets: one multiplier per clause, chained left to right.
        for (int v = 0; v < emb.num_vars; ++v) {
            const std::int64_t x0 = emb.var_x[v];
            detail::merge_gadget(inst, make_multiplier({x0, 0}), false);
            for (int k = 1; k < num_clauses; ++k) {
                detail::merge_gadget(
                    inst,
                    make_wire_segment({x0 + (k - 1) * alpha + 2, 0}, {x0 + k * alpha - 2, 0}),
                    true);
                detail::merge_gadget(inst, make_multiplier({x0 + k * alpha, 0}), true);
            }
        }

        const auto glue = [&](const Gadget& piece) { detail::merge_gadget(inst, piece, true); };
        const auto glue_wire = [&](const PointI& from, const PointI& to) {
            if (from == to) return;
            glue(make_wire_segment(from, to));
        };

        std::vector<int> next_mult(emb.num_vars, 0);
        for (int j = 0; j < num_clauses; ++j) {
            const ClausePlacement& cl = emb.clauses[j];
            const PointI c = cl.pos;
            const bool up = c.y > 0;
            const std::int64_t dir = up ? 1 : -1;
            // Under the axis the clause is a half turn, which swaps the two
            // upper anchors; the literal order compensates.
            const std::array<int, 3> lit_of_slot =
                up ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};

            std::int64_t first_upper_col = 0;
            for (int s = 0; s < 3; ++s) {
                const Literal lit = cl.lits[lit_of_slot[s]];
                const int k = next_mult[lit.var]++;
                const std::int64_t vcol = emb.var_x[lit.var] + k * alpha;
                // A satisfied literal must release its candidate triangle:
                // the first two anchors block on a positive chain signal,
                // the third on a negative one.
                const bool invert = (s == 2) == lit.negated;

                if (s == 0) {
                    if (dir * (c.x - vcol) < 52)
                        throw MalformedEmbeddingError(
                            "embedding: first literal routed on the wrong side");
                } else {
                    if (dir * (vcol - c.x) < 57)
                        throw MalformedEmbeddingError(
                            "embedding: upper literal routed on the wrong side");
                    if (s == 2 && dir * (vcol - first_upper_col) <= 0)
                        throw MalformedEmbeddingError(
                            "embedding: upper literal routes out of order");
                    if (s == 1) first_upper_col = vcol;
                }

                const std::int64_t lane =
                    (s == 0) ? c.y - dir * 17 : c.y + dir * (s == 1 ? 40 : 60);
                const PointI run_end{vcol, lane - 2 * dir};
                if (invert) {
                    glue_wire({vcol, 2 * dir}, {vcol, 28 * dir});
                    glue(make_negation({vcol, 30 * dir}, !up));
                    glue_wire({vcol, 70 * dir}, run_end);
                } else {
                    glue_wire({vcol, 2 * dir}, run_end);
                }
                glue(make_multiplier({vcol, lane}));
                if (s == 0) {
                    glue_wire({vcol + 2 * dir, lane}, {c.x - 12 * dir, lane});
                } else {
                    const std::int64_t ccol = c.x + (s == 1 ? dir : -dir) * 17;
                    glue_wire({vcol - 2 * dir, lane}, {ccol + 2 * dir, lane});
                    glue(make_multiplier({ccol, lane}));
                    glue_wire({ccol, lane - 2 * dir}, {ccol, c.y + dir * 12});
                }
            }

            Gadget clause = make_clause(c);
            if (!up) clause = apply_map(clause, rotation_pi(c));
            glue(clause);
            hi.clause_lits.push_back(cl.lits);
        }
    } catch (const ForbiddenOverlapError& e) {
        throw OverlapDetectedError(e.what());
    }

    replace_mandatory_edges(hi.gadget);

    for (const auto& p : inst.points)
        if (inst.forbidden.count(p))
            throw OverlapDetectedError("instance point is forbidden after assembly");

    hi.points.assign(inst.points.begin(), inst.points.end());
    hi.f.reserve(hi.points.size());
    for (const auto& p : hi.points) hi.f.push_back(Rat(paraboloid_f(p)));
    for (int v = 0; v < emb.num_vars; ++v) {
        const int r = inst.ref_at(PointI{emb.var_x[v] + 2, 0});
        if (r < 0) throw std::logic_error("variable binding ref missing");
        hi.var_ref.push_back(r);
    }
    return hi;
}

}  // namespace merit
