// Acceptance checks for the whole toolkit. Each criterion prints exactly
// one line, "PASS <name> (<info>)" or "FAIL <name>: <detail>", and the
// process exits with the number of failed criteria. Runtime bounds that are
// part of a criterion are enforced, not just reported.

#include "merit/delaunay.hpp"
#include "merit/enumerate.hpp"
#include "merit/faces.hpp"
#include "merit/geo.hpp"
#include "merit/hardness.hpp"
#include "merit/hardness_verify.hpp"
#include "merit/hod.hpp"
#include "merit/randgen.hpp"
#include "merit/reconstruct.hpp"
#include "merit/solver.hpp"
#include "merit/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace merit;

struct Outcome {
    bool ok = true;
    std::string info;  // detail on failure, short summary on success
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int rand_int(PortableRng& rng, int lo, int hi) {  // inclusive bounds
    const int span = hi - lo + 1;
    int v = static_cast<int>(rng.uniform(0, span));
    if (v >= span) v = span - 1;
    return lo + v;
}

// Random instance with all reference points inside the convex hull: each
// ref is a strictly interior convex combination of three distinct sites.
InstanceD random_instance(PortableRng& rng, int n, int nrefs) {
    InstanceD inst;
    while (static_cast<int>(inst.points.size()) < n)
        inst.points.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
    for (int i = 0; i < n; ++i) inst.f.push_back(to_rational(rng.uniform(-5, 5)));
    for (int j = 0; j < nrefs; ++j) {
        int a = rand_int(rng, 0, n - 1), b = rand_int(rng, 0, n - 1), c = rand_int(rng, 0, n - 1);
        while (b == a) b = rand_int(rng, 0, n - 1);
        while (c == a || c == b) c = rand_int(rng, 0, n - 1);
        const double wa = rng.uniform(0.2, 1), wb = rng.uniform(0.2, 1), wc = rng.uniform(0.2, 1);
        const double s = wa + wb + wc;
        inst.refs.push_back({(wa * inst.points[a].x + wb * inst.points[b].x +
                              wc * inst.points[c].x) / s,
                             (wa * inst.points[a].y + wb * inst.points[b].y +
                              wc * inst.points[c].y) / s});
        inst.h.push_back(to_rational(rng.uniform(-5, 5)));
    }
    return inst;
}

// ---------------------------------------------------------------- 1

Outcome solver_matches_enumeration() {
    const auto t0 = std::chrono::steady_clock::now();
    PortableRng rng(20240501);
    const int kInstances = 500;
    for (int it = 0; it < kInstances; ++it) {
        const int n = rand_int(rng, 5, 11);
        const int k = rand_int(rng, 0, 3);
        const InstanceD inst = random_instance(rng, n, rand_int(rng, 5, 50));
        const DpResult<double> dp = min_error_triangulation(inst, k);

        Rat best;
        bool first = true;
        for (const auto& tris : brute_force_enumerate(inst.points, k, 11)) {
            const Rat err = triangulation_error(inst, tris);
            if (first || err < best) best = err, first = false;
        }
        if (first) return {false, "instance " + std::to_string(it) + ": nothing enumerated"};
        if (dp.error != best)
            return {false, "instance " + std::to_string(it) + " (n=" + std::to_string(n) +
                               " k=" + std::to_string(k) + "): solver " +
                               std::to_string(to_double(dp.error)) + " vs enumeration " +
                               std::to_string(to_double(best))};
    }
    const double dt = seconds_since(t0);
    if (dt >= 120) return {false, "took " + std::to_string(dt) + "s, bound is 120s"};
    char info[96];
    std::snprintf(info, sizeof info, "%d instances, exact match, %.1fs", kInstances, dt);
    return {true, info};
}

// ---------------------------------------------------------------- 2

Outcome order_zero_identity() {
    PortableRng rng(911);
    for (int it = 0; it < 100; ++it) {
        const InstanceD inst = random_instance(rng, rand_int(rng, 5, 14), rand_int(rng, 5, 30));
        const DpResult<double> dp = min_error_triangulation(inst, 0);
        const auto dt = delaunay_triangulation(inst.points);
        if (dp.triangulation.canonical_triangles() != dt.canonical_triangles())
            return {false, "instance " + std::to_string(it) + ": order-0 optimum is not Delaunay"};
        const Rat lhs = empirical_variance(inst, dp.triangulation.triangles).sigma2;
        const Rat rhs = empirical_variance(inst, dt.triangles).sigma2;
        if (lhs != rhs)
            return {false, "instance " + std::to_string(it) + ": variances differ at order 0"};
    }
    return {true, "100 instances, Delaunay returned with equal variance"};
}

// ---------------------------------------------------------------- 3

Outcome fixed_edge_chain() {
    for (int s = 0; s < 100; ++s) {
        const auto pts = gen_type1(100, 1000.0, detail::stream_seed(7700, s));
        FixedEdgeOptions opts;
        opts.kmax = 10;
        const FixedEdgeAnalysis analysis = analyze_fixed_edges(pts, opts);

        std::set<Edge> dt_set;
        for (const Tri& t : delaunay_triangulation(pts).triangles)
            for (int e = 0; e < 3; ++e) dt_set.insert(make_edge(t[e], t[(e + 1) % 3]));
        const auto f0 = analysis.fixed_edges(0);
        if (std::set<Edge>(f0.begin(), f0.end()) != dt_set)
            return {false, "set " + std::to_string(s) + ": F_0 differs from the Delaunay edges"};

        for (int k = 0; k <= 9; ++k) {
            const auto fk = analysis.fixed_edges(k);
            const auto fk1 = analysis.fixed_edges(k + 1);
            if (!std::includes(fk.begin(), fk.end(), fk1.begin(), fk1.end()))
                return {false, "set " + std::to_string(s) + ": F_" + std::to_string(k + 1) +
                                   " not inside F_" + std::to_string(k)};
        }

        const auto f1 = analysis.fixed_edges(1);
        std::vector<int> parent(pts.size());
        std::iota(parent.begin(), parent.end(), 0);
        const std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const Edge& e : f1) parent[find(e[0])] = find(e[1]);
        for (std::size_t v = 1; v < pts.size(); ++v)
            if (find(static_cast<int>(v)) != find(0))
                return {false, "set " + std::to_string(s) + ": F_1 disconnected"};
        if (const int c = decompose_faces(pts, f1).c_max; c != 0)
            return {false, "set " + std::to_string(s) + ": F_1 c_max=" + std::to_string(c)};
    }
    return {true, "100 sets, chain nested, F_1 connected with c_max=0"};
}

// ---------------------------------------------------------------- 4

Outcome no_isolated_f2_vertex() {
    for (int s = 0; s < 1000; ++s) {
        const int n = 10 + (s * 97) % 191;  // 10..200
        const auto pts = gen_type1(n, 1000.0, detail::stream_seed(880, s));
        FixedEdgeOptions opts;
        opts.kmax = 2;
        const auto f2 = analyze_fixed_edges(pts, opts).fixed_edges(2);
        std::vector<int> degree(pts.size(), 0);
        for (const Edge& e : f2) ++degree[e[0]], ++degree[e[1]];
        for (std::size_t v = 0; v < pts.size(); ++v)
            if (degree[v] == 0)
                return {false, "set " + std::to_string(s) + " (n=" + std::to_string(n) +
                                   "): vertex " + std::to_string(v) + " isolated in F_2"};
    }

    // Witness hunt: disconnected F_2 (a face with interior components) is
    // known to exist but has never shown up in random data; record any find.
    int witnesses = 0;
    for (int s = 0; s < 300; ++s) {
        std::vector<PointD> pts;
        PortableRng rng(detail::stream_seed(5151, s));
        const int n = 80;
        switch (s % 3) {
            case 0: pts = gen_type1(n, 1000.0, detail::stream_seed(5151, s)); break;
            case 1: pts = gen_type3(n, 1000.0, 900.0, detail::stream_seed(5151, s)); break;
            default:
                for (int i = 0; i < n; ++i) {
                    const double a = 2 * M_PI * i / n + rng.uniform(-0.5, 0.5) / n;
                    const double r = 1000.0 + rng.uniform(-1, 1);
                    pts.push_back({r * std::cos(a), r * std::sin(a)});
                }
        }
        FixedEdgeOptions opts;
        opts.kmax = 2;
        const auto dec = decompose_faces(pts, analyze_fixed_edges(pts, opts).fixed_edges(2));
        if (dec.c_max == 0) continue;
        ++witnesses;
        std::filesystem::create_directories("f2_witnesses_found");
        std::ofstream out("f2_witnesses_found/sample_" + std::to_string(s) + ".csv");
        out << "# c_max=" << dec.c_max << "\n";
        for (const auto& p : pts) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
            out << buf;
        }
    }
    return {true, "1000 sets clean; hunt found " + std::to_string(witnesses) +
                      " disconnected-F_2 witnesses in 300 tries"};
}

// ---------------------------------------------------------------- 5

Outcome cmax_table_bands() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Band {
        int k;
        double lo, hi;
    };
    struct Row {
        const char* name;
        GeneratorSpec gen;
        std::vector<Band> bands;
    };
    // Bands around the published n=500 column with the same generosity for
    // every sample type: x10 above the k=3 value, x3 above the k=4 value,
    // one third to double the k=7 value.
    std::vector<Row> rows;
    rows.push_back({"Type1", {SampleType::Type1, 1000.0, 0.0, {}},
                    {{3, 0.0, 0.1}, {4, 0.0, 1.0}, {7, 1.5, 9.0}}});
    rows.push_back({"Type2", {SampleType::Type2, 1000.0, 0.0, {}},
                    {{3, 0.0, 0.2}, {4, 0.0, 1.5}, {7, 2.0, 12.0}}});
    rows.push_back({"Type3", {SampleType::Type3, 1000.0, 900.0, {}},
                    {{3, 0.0, 0.4}, {4, 0.0, 2.25}, {7, 3.4, 20.6}}});

    std::string summary;
    for (const Row& row : rows) {
        CmaxOptions opts;
        opts.kmin = 3;
        opts.kmax = 7;
        opts.samples = 200;
        opts.seed = 42;
        const auto table = cmax_experiment(row.gen, 500, opts);
        for (const Band& band : row.bands) {
            double got = -1;
            for (const StatsRow& r : table)
                if (r.k == band.k) got = r.avg_cmax;
            if (got < band.lo || got > band.hi) {
                char msg[128];
                std::snprintf(msg, sizeof msg, "%s k=%d: avg c_max %.3f outside [%.2f, %.2f]",
                              row.name, band.k, got, band.lo, band.hi);
                return {false, msg};
            }
            if (band.k == 7) {
                char part[48];
                std::snprintf(part, sizeof part, "%s%s k7=%.2f", summary.empty() ? "" : " ",
                              row.name, got);
                summary += part;
            }
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 900) return {false, "took " + std::to_string(dt) + "s, bound is 900s"};
    char info[160];
    std::snprintf(info, sizeof info, "%s, 200 samples each, %.0fs", summary.c_str(), dt);
    return {true, info};
}

// ---------------------------------------------------------------- 6

// Synthetic scenario around the default projection anchor: a ring of
// stations whose hull covers the altimetry box, plus interior stations.
struct Scenario {
    std::vector<StationSeries> stations;
    AltimetryGrid grid;
};

Scenario make_scenario(std::uint64_t seed, int n_stations, int grid_side) {
    PortableRng rng(seed);
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2), a3 = rng.uniform(0.5, 3);
    const auto surface = [&](double lon, double lat, int epoch) {
        return 25.0 * std::sin((lon + 40) / a3 + a1) + 18.0 * std::cos((lat - 16) / 2 + a2) +
               7.0 * epoch;
    };
    Scenario sc;
    for (int i = 0; i < n_stations; ++i) {
        StationSeries st;
        st.station_id = "S" + std::to_string(i);
        if (i < 8) {
            const double ang = 2 * M_PI * i / 8 + 0.2;
            st.lon = -40 + 4.5 * std::cos(ang);
            st.lat = 16 + 3.4 * std::sin(ang);
        } else {
            st.lon = rng.uniform(-42.5, -37.5);
            st.lat = rng.uniform(14.0, 18.0);
        }
        st.values[0] = surface(st.lon, st.lat, 0) * 10;
        st.values[1] = surface(st.lon, st.lat, 1) * 10;
        sc.stations.push_back(demean(st));
    }
    sc.grid.epoch = 0;
    for (int i = 0; i < grid_side; ++i)
        for (int j = 0; j < grid_side; ++j) {
            AltimetryCell cell;
            cell.lon = -42.5 + 5.0 * i / (grid_side - 1);
            cell.lat = 14.0 + 3.8 * j / (grid_side - 1);
            cell.anomaly_cm = surface(cell.lon, cell.lat, 0);
            sc.grid.cells.push_back(cell);
        }
    return sc;
}

Outcome reconstruction_invariants() {
    // (a) optimizing never hurts at lag zero, (b) more freedom never hurts
    for (int s = 0; s < 50; ++s) {
        const Scenario sc = make_scenario(detail::stream_seed(3300, s), 12 + s % 6, 6);
        Rat prev;
        bool have_prev = false;
        for (int k = 0; k <= 3; ++k) {
            const ReconstructionResult r = reconstruct(sc.stations, sc.grid, sc.grid, 0, 0, k);
            if (r.delta_sigma2 > 0)
                return {false, "scenario " + std::to_string(s) + " k=" + std::to_string(k) +
                                   ": variance increased at lag zero"};
            if (k == 0 && r.sigma2_min_error != r.sigma2_delaunay)
                return {false, "scenario " + std::to_string(s) + ": order 0 not the baseline"};
            if (have_prev && r.sigma2_min_error > prev)
                return {false, "scenario " + std::to_string(s) + ": variance rose from k=" +
                                   std::to_string(k - 1) + " to k=" + std::to_string(k)};
            prev = r.sigma2_min_error;
            have_prev = true;
        }
    }

    // (c) an affine surface is interpolated exactly by every triangulation
    PortableRng rng(606);
    for (int it = 0; it < 10; ++it) {
        InstanceD inst = random_instance(rng, rand_int(rng, 6, 12), 12);
        const Rat a(rand_int(rng, -30, 30), 7), b(rand_int(rng, -30, 30), 5);
        const Rat c(rand_int(rng, -50, 50), 3);
        for (std::size_t i = 0; i < inst.points.size(); ++i)
            inst.f[i] = a * to_rational(inst.points[i].x) + b * to_rational(inst.points[i].y) + c;
        for (std::size_t j = 0; j < inst.refs.size(); ++j)
            inst.h[j] = a * to_rational(inst.refs[j].x) + b * to_rational(inst.refs[j].y) + c;
        const auto dt = delaunay_triangulation(inst.points);
        if (empirical_variance(inst, dt.triangles).sigma2 != 0)
            return {false, "affine surface: Delaunay variance nonzero"};
        const DpResult<double> dp = min_error_triangulation(inst, 2);
        if (dp.error != 0 || empirical_variance(inst, dp.triangulation.triangles).sigma2 != 0)
            return {false, "affine surface: optimized variance nonzero"};
    }

    // (d) desk-scale end-to-end run: 30 stations, ~500 cells, k up to 3
    const Scenario big = make_scenario(99, 30, 23);  // 23x23 = 529 cells
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k <= 3; ++k) {
        const ReconstructionResult r = reconstruct(big.stations, big.grid, big.grid, 0, 0, k);
        if (r.n_stations != 30) return {false, "toy reconstruction lost stations"};
    }
    const double dt = seconds_since(t0);
    if (dt >= 5.0) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "toy reconstruction took %.2fs, bound is 5s", dt);
        return {false, msg};
    }
    char info[128];
    std::snprintf(info, sizeof info,
                  "50 scenarios monotone, affine exact, 30x529 toy run %.2fs", dt);
    return {true, info};
}

// ---------------------------------------------------------------- 7

using IndexEdge = std::pair<int, int>;

IndexEdge epair(const std::vector<PointI>& pts, const PointI& a, const PointI& b) {
    const auto ia = std::find(pts.begin(), pts.end(), a) - pts.begin();
    const auto ib = std::find(pts.begin(), pts.end(), b) - pts.begin();
    return std::minmax(static_cast<int>(ia), static_cast<int>(ib));
}

EnumOptions veto(const std::vector<IndexEdge>& banned) {
    EnumOptions opts;
    opts.edge_allowed = [banned](int a, int b) {
        const IndexEdge e = std::minmax(a, b);
        return std::find(banned.begin(), banned.end(), e) == banned.end();
    };
    return opts;
}

Outcome hardness_gadgets() {
    // (a) isolated bit: zero error exists, and never without a diagonal
    const auto t0 = std::chrono::steady_clock::now();
    {
        const Gadget g = make_bit({0, 0}, BitAxis::Horizontal);
        const std::vector<PointI> pts(g.points.begin(), g.points.end());
        const auto pos = epair(pts, {-1, -1}, {1, 1});
        const auto neg = epair(pts, {-1, 1}, {1, -1});
        if (!exhaustive_zero_error(g).found) return {false, "bit: no zero-error triangulation"};
        if (exhaustive_zero_error(g, veto({pos, neg})).found)
            return {false, "bit: zero error without either diagonal"};
        if (seconds_since(t0) >= 10)
            return {false, "bit enumeration exceeded the 10s bound"};
    }

    // (b) two-bit wire: mixed signals admit no zero-error triangulation,
    // both uniform signals do
    {
        const Gadget g = make_wire_segment({0, 0}, {1, 0});
        const std::vector<PointI> pts(g.points.begin(), g.points.end());
        const auto p0 = epair(pts, {-1, -1}, {1, 1}), n0 = epair(pts, {-1, 1}, {1, -1});
        const auto p1 = epair(pts, {0, -1}, {2, 1}), n1 = epair(pts, {0, 1}, {2, -1});
        if (!exhaustive_zero_error(g).found) return {false, "wire: no zero-error triangulation"};
        if (exhaustive_zero_error(g, veto({n0, p1})).found ||
            exhaustive_zero_error(g, veto({p0, n1})).found)
            return {false, "wire: mixed signal reached zero error"};
        if (!exhaustive_zero_error(g, veto({n0, n1})).found ||
            !exhaustive_zero_error(g, veto({p0, p1})).found)
            return {false, "wire: a uniform signal cannot reach zero error"};
    }

    // (c) full reductions: satisfying assignments verify to exactly zero,
    // falsifying ones name an unsatisfied clause through its centre ref.
    // Formulas have one or two clauses: with at most four variables any two
    // same-side clauses share two variables, and the later clause's taps
    // then land inside the earlier clause's approach corridor, so no
    // three-clause formula embeds under this router (checked exhaustively
    // over all variable triples).
    PortableRng rng(4242);
    int sats = 0, falsifieds = 0, formulas = 0;
    while (sats < 50 || falsifieds < 50) {
        const int V = rand_int(rng, 3, 4);
        const int K = rand_int(rng, 1, 2);
        std::vector<std::array<Literal, 3>> clauses;
        for (int j = 0; j < K; ++j) {
            int a = rand_int(rng, 0, V - 1), b = rand_int(rng, 0, V - 1);
            int c = rand_int(rng, 0, V - 1);
            while (b == a) b = rand_int(rng, 0, V - 1);
            while (c == a || c == b) c = rand_int(rng, 0, V - 1);
            clauses.push_back({Literal{a, rng.uniform() < 0.5}, Literal{b, rng.uniform() < 0.5},
                               Literal{c, rng.uniform() < 0.5}});
        }
        const auto satisfies = [&](const std::vector<bool>& assign) {
            for (const auto& cl : clauses) {
                bool any = false;
                for (const Literal& lit : cl) any = any || (assign[lit.var] != lit.negated);
                if (!any) return false;
            }
            return true;
        };
        std::vector<std::vector<bool>> sat_assignments;
        for (int mask = 0; mask < (1 << V); ++mask) {
            std::vector<bool> assign(V);
            for (int v = 0; v < V; ++v) assign[v] = (mask >> v) & 1;
            if (satisfies(assign)) sat_assignments.push_back(assign);
        }
        if (sat_assignments.empty()) continue;  // resample unsatisfiable formulas
        ++formulas;
        // Hand-tuned embedding scale: tightest gamma the router's margins
        // allow, multiplier spacing 40 to keep two-clause instances small.
        BuildOptions layout_opts;
        layout_opts.alpha = 40;
        const std::int64_t gamma = K == 1 ? 120 : 200;
        const HardnessInstance hi = build_instance(layout_formula(V, clauses, gamma), layout_opts);
        std::vector<int> centre_refs;
        for (const auto& choice : hi.gadget.choices)
            if (choice.is_clause) centre_refs.push_back(choice.ref);

        if (sats < 50) {
            const auto& assign =
                sat_assignments[rand_int(rng, 0, static_cast<int>(sat_assignments.size()) - 1)];
            const VerifyResult res = verify_assignment(hi, assign);
            if (!res.zero_error || res.total_error != 0 || !res.violated_refs.empty())
                return {false, "formula " + std::to_string(formulas) +
                                   ": satisfying assignment scored nonzero"};
            ++sats;
        }
        if (falsifieds < 50) {
            std::vector<bool> assign(V);
            for (int v = 0; v < V; ++v) assign[v] = rng.uniform() < 0.5;
            for (const Literal& lit : clauses[0]) assign[lit.var] = lit.negated;
            const VerifyResult res = verify_assignment(hi, assign);
            bool named = false;
            for (int j : res.unsatisfied_clauses)
                named = named || std::find(res.violated_refs.begin(), res.violated_refs.end(),
                                           centre_refs[j]) != res.violated_refs.end();
            if (res.zero_error || res.unsatisfied_clauses.empty() || !named)
                return {false, "formula " + std::to_string(formulas) +
                                   ": falsifying assignment not pinned to a clause ref"};
            ++falsifieds;
        }
    }

    // (d) lifted-circle identity, exact over random rationals
    for (int it = 0; it < 10000; ++it) {
        const auto rat = [&] {
            return Rat(rand_int(rng, -50, 50), rand_int(rng, 1, 20));
        };
        const CircleQ c{{rat(), rat()}, Rat(rand_int(rng, 1, 100), rand_int(rng, 1, 10))};
        const PointQ y{rat(), rat()};
        const Rat fy = y.x * y.x + y.y * y.y;
        if (fy - href(c, y) != dist_sq(y, c.center) - c.radius_sq)
            return {false, "lifted-circle identity violated at case " + std::to_string(it)};
    }
    char info[128];
    std::snprintf(info, sizeof info,
                  "bit and wire enumerations clean, %d formulas verified, identity x10000",
                  formulas);
    return {true, info};
}

// ---------------------------------------------------------------- 8

Outcome exactness_spot_checks() {
    const CircleQ c = circumcircle(PointQ{Rat(0), Rat(0)}, PointQ{Rat(4), Rat(0)},
                                   PointQ{Rat(2), Rat(3)});
    if (c.center.x != Rat(2) || c.center.y != Rat(5, 6) || c.radius_sq != Rat(169, 36))
        return {false, "circumcircle of (0,0),(4,0),(2,3) off"};
    if (href(CircleQ{{Rat(0), Rat(0)}, Rat(2)}, PointQ{Rat(0), Rat(0)}) != Rat(2))
        return {false, "anchor height is not 2"};
    return {true, "circumcircle and anchor height exact"};
}

}  // namespace

int main(int argc, char** argv) {
    // Optional argument: run only criteria whose name contains it.
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"solver-matches-enumeration", solver_matches_enumeration},
        {"order-zero-identity", order_zero_identity},
        {"fixed-edge-chain", fixed_edge_chain},
        {"no-isolated-f2-vertex", no_isolated_f2_vertex},
        {"cmax-table-bands", cmax_table_bands},
        {"reconstruction-invariants", reconstruction_invariants},
        {"hardness-gadgets", hardness_gadgets},
        {"exact-arithmetic-spot-checks", exactness_spot_checks},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (out.ok) {
            std::printf("PASS %s (%s)\n", c.name, out.info.c_str());
        } else {
            std::printf("FAIL %s: %s\n", c.name, out.info.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
