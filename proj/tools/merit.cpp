// merit: command line front end for the k-order Delaunay toolkit.
//
// Subcommands:
//   triangulate   exact minimum-error triangulation of one instance
//   fixed-edges   fixed edge graph and face decomposition of a point set
//   reconstruct   sea surface reconstruction sweep over epoch pairs
//   randgen-stats c_max statistics over random point sets
//   gadget        hardness gadget emission, `gadget reduce` for full formulas
//
// Data goes to --out (stdout when omitted), diagnostics to stderr. Exit
// codes: 0 success, 2 input error, 3 budget or time limit exceeded; on 3 the
// output is still written with a "status" field naming the condition. Runs
// with identical configuration (including seed) produce byte-identical
// output files; timings are diagnostics and never enter output files.

#include "CLI11.hpp"
#include "json.hpp"

#include "merit/delaunay.hpp"
#include "merit/faces.hpp"
#include "merit/geo.hpp"
#include "merit/hardness.hpp"
#include "merit/hod.hpp"
#include "merit/randgen.hpp"
#include "merit/reconstruct.hpp"
#include "merit/solver.hpp"
#include "merit/weights.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kInternalError = 1, kInputError = 2, kLimitExceeded = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void log_info(const std::string& msg) {
    if (g_log_level >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (g_log_level >= 2) std::cerr << "[debug] " << msg << "\n";
}

// ---------------------------------------------------------------- parsing

// Instance CSVs are headerless numeric rows; a single leading header line
// is tolerated and skipped.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path, std::size_t cols) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        bool ok = true;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used])))
                    ++used;
                if (used != field.size()) ok = false;
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok) break;
        }
        if (!ok) {
            if (lineno == 1 && rows.empty()) continue;  // header line
            throw InputError(path + ":" + std::to_string(lineno) + ": expected numeric row");
        }
        if (row.size() != cols)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(cols) + " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<merit::PointD> read_points_csv(const std::string& path) {
    std::vector<merit::PointD> pts;
    for (const auto& row : read_numeric_csv(path, 2)) pts.push_back({row[0], row[1]});
    return pts;
}

std::vector<merit::Rat> read_values_csv(const std::string& path) {
    std::vector<merit::Rat> vals;
    for (const auto& row : read_numeric_csv(path, 1)) vals.push_back(merit::to_rational(row[0]));
    return vals;
}

// "K" or "KMIN..KMAX", inclusive.
std::pair<int, int> parse_k_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int k = std::stoi(text);
            return {k, k};
        }
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw InputError("bad k range: " + text);
        return {lo, hi};
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("bad k range: " + text);
    }
}

// "X,Y" with numeric components.
std::pair<double, double> parse_xy(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InputError(std::string(what) + ": expected X,Y, got " + text);
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InputError(std::string(what) + ": expected X,Y, got " + text);
    }
}

merit::PointI parse_lattice_point(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InputError(std::string(what) + ": expected X,Y, got " + text);
    try {
        return {static_cast<std::int64_t>(std::stoll(text.substr(0, comma))),
                static_cast<std::int64_t>(std::stoll(text.substr(comma + 1)))};
    } catch (const std::exception&) {
        throw InputError(std::string(what) + ": expected integer X,Y, got " + text);
    }
}

merit::TimeFrame parse_time_frame(const std::string& text) {
    if (text.empty()) return {};
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("time frame: expected START:END");
    merit::TimeFrame frame;
    try {
        if (colon > 0) frame.start = std::stoi(text.substr(0, colon));
        if (colon + 1 < text.size()) frame.end = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw InputError("time frame: expected START:END, got " + text);
    }
    if (frame.start > frame.end) throw InputError("time frame: start after end");
    return frame;
}

// ----------------------------------------------------------------- output

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json rat_json(const merit::Rat& x) {
    return json{{"num", merit::num_string(x)}, {"den", merit::den_string(x)},
                {"approx", merit::to_double(x)}};
}

json pointq_json(const merit::PointQ& p) {
    return json{{"x", rat_json(p.x)}, {"y", rat_json(p.y)}};
}

json pointi_json(const merit::PointI& p) { return json::array({p.x, p.y}); }

json lat_edge_json(const merit::LatticeEdge& e) {
    return json::array({pointi_json(e[0]), pointi_json(e[1])});
}

json ref_json(const merit::CoupledRef& r) {
    json j{{"r", pointq_json(r.r)},
           {"circle", json{{"center", pointq_json(r.circle.center)},
                           {"radius_sq", rat_json(r.circle.radius_sq)}}},
           {"h", rat_json(r.h)},
           {"slot", r.slot},
           {"forces_edge", r.forces_edge}};
    j["pos_edge"] = r.pos_edge ? lat_edge_json(*r.pos_edge) : json();
    j["neg_edge"] = r.neg_edge ? lat_edge_json(*r.neg_edge) : json();
    return j;
}

json gadget_json(const merit::Gadget& g) {
    json points = json::array(), forbidden = json::array(), anchors = json::array();
    for (const auto& p : g.points) points.push_back(pointi_json(p));
    for (const auto& p : g.forbidden) forbidden.push_back(pointi_json(p));
    for (const auto& p : g.anchors) anchors.push_back(pointi_json(p));
    json refs = json::array();
    for (const auto& r : g.refs) refs.push_back(ref_json(r));
    json mandatory = json::array();
    for (const auto& e : g.mandatory) mandatory.push_back(lat_edge_json(e));
    json choices = json::array();
    for (const auto& c : g.choices) {
        json cands = json::array();
        for (const auto& t : c.candidates)
            cands.push_back(json::array({pointi_json(t[0]), pointi_json(t[1]), pointi_json(t[2])}));
        choices.push_back(json{{"ref", c.ref}, {"is_clause", c.is_clause}, {"candidates", cands}});
    }
    json slots = json::array();
    for (int s = 0; s < g.slot_count; ++s) {
        const auto [root, parity] = g.find_slot(s);
        slots.push_back(json{{"root", root}, {"opposite", parity}});
    }
    return json{{"points", points},     {"refs", refs},       {"forbidden", forbidden},
                {"anchors", anchors},   {"mandatory", mandatory}, {"choices", choices},
                {"slots", slots}};
}

json triangles_json(const std::vector<merit::Tri>& tris) {
    json out = json::array();
    for (const auto& t : tris) out.push_back(json::array({t[0], t[1], t[2]}));
    return out;
}

// ------------------------------------------------------------- triangulate

struct TriangulateArgs {
    std::string points, values, refs, refvalues, out;
    int k = 0;
    bool oracle = false;
};

int run_triangulate(const TriangulateArgs& a, const merit::SolveOptions& solve) {
    merit::InstanceD inst;
    inst.points = read_points_csv(a.points);
    inst.f = read_values_csv(a.values);
    inst.refs = read_points_csv(a.refs);
    inst.h = read_values_csv(a.refvalues);
    merit::validate_instance(inst);
    log_info("triangulate: n=" + std::to_string(inst.points.size()) + " refs=" +
             std::to_string(inst.refs.size()) + " k=" + std::to_string(a.k));

    json out{{"k", a.k},
             {"n", inst.points.size()},
             {"refs", inst.refs.size()},
             {"budget", solve.budget}};
    merit::DpResult<double> result;
    try {
        result = merit::min_error_triangulation(inst, a.k, solve);
    } catch (const merit::BudgetExceededError& e) {
        out["status"] = "budget_exceeded";
        write_json(a.out, out);
        std::cerr << "error: " << e.what() << "\n";
        return kLimitExceeded;
    }

    out["status"] = "ok";
    out["triangles"] = triangles_json(result.triangulation.triangles);
    out["error"] = rat_json(result.error);
    json face_costs = json::array();
    for (const auto& c : result.face_costs) face_costs.push_back(rat_json(c));
    out["face_costs"] = face_costs;
    out["faces"] = result.stats.faces;
    out["dp_cells"] = result.stats.cells;
    log_info("triangulate: error=" + fmt_double(merit::to_double(result.error)) + " cells=" +
             std::to_string(result.stats.cells) + " elapsed=" +
             fmt_double(result.stats.elapsed_seconds) + "s");

    if (a.oracle) {
        const int cap = 11;
        if (static_cast<int>(inst.points.size()) <= cap) {
            const auto all = merit::brute_force_enumerate(inst.points, a.k, cap);
            merit::Rat best;
            bool first = true;
            for (const auto& tris : all) {
                const merit::Rat err = merit::triangulation_error(inst, tris);
                if (first || err < best) best = err, first = false;
            }
            out["oracle"] = (!first && best == result.error) ? "match" : "mismatch";
            if (out["oracle"] != "match") {
                write_json(a.out, out);
                std::cerr << "error: oracle disagrees with solver\n";
                return kInternalError;
            }
            log_info("oracle: brute force over " + std::to_string(all.size()) +
                     " triangulations matches");
        } else {
            out["oracle"] = "skipped";
            log_info("oracle: skipped, n exceeds enumeration cap");
        }
    }
    write_json(a.out, out);
    return kOk;
}

// ------------------------------------------------------------- fixed-edges

struct FixedEdgesArgs {
    std::string input, out;
    int k = 0;
};

int run_fixed_edges(const FixedEdgesArgs& a) {
    const auto pts = read_points_csv(a.input);
    merit::FixedEdgeOptions opts;
    opts.kmax = std::max(a.k, 0);
    const auto analysis = merit::analyze_fixed_edges(pts, opts);
    const auto edges = analysis.fixed_edges(a.k);
    const auto dec = merit::decompose_faces(pts, edges);

    json jedges = json::array();
    for (const auto& e : edges) jedges.push_back(json::array({e[0], e[1]}));
    json faces = json::array();
    for (const auto& f : dec.faces) {
        json holes = json::array();
        for (const auto& w : f.hole_walks) holes.push_back(json(w));
        faces.push_back(json{{"boundary", f.boundary},
                             {"hole_walks", holes},
                             {"isolated_vertices", f.isolated_vertices},
                             {"interior_components", f.interior_components()}});
    }
    const json out{{"status", "ok"}, {"n", pts.size()},      {"k", a.k},
                   {"edges", jedges}, {"faces", faces},       {"c_max", dec.c_max}};
    write_json(a.out, out);
    log_info("fixed-edges: " + std::to_string(edges.size()) + " edges, " +
             std::to_string(dec.faces.size()) + " faces, c_max=" + std::to_string(dec.c_max));
    return kOk;
}

// ------------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string stations, altimetry_dir, out;
    std::string anchor = "-40,16";
    std::string k = "0..7";
    std::string time_frame;
    int stride = 12;
};

int run_reconstruct(const ReconstructArgs& a, const merit::SolveOptions& solve,
                    double time_limit, int threads) {
    const merit::TimeFrame frame = parse_time_frame(a.time_frame);
    const auto [lon0, lat0] = parse_xy(a.anchor, "anchor");
    const auto [kmin, kmax] = parse_k_range(a.k);
    if (kmin < 0) throw InputError("k must be nonnegative");
    if (a.stride < 1) throw InputError("stride must be positive");

    auto loaded = merit::load_stations_file(a.stations, frame);
    if (loaded.dropped > 0)
        log_info("stations: dropped " + std::to_string(loaded.dropped) + " rows");
    std::vector<merit::StationSeries> stations;
    for (const auto& s : loaded.stations) stations.push_back(merit::demean(s));
    log_info("stations: " + std::to_string(stations.size()) + " series");

    // Epoch e is read from <altimetry-dir>/<e>.csv; the sweep covers epochs
    // that have both a grid file and at least one station value.
    std::set<int> station_epochs;
    for (const auto& s : stations)
        for (const auto& [e, v] : s.values) station_epochs.insert(e);
    std::vector<int> epochs;
    std::map<int, merit::AltimetryGrid> grids;
    if (!fs::is_directory(a.altimetry_dir))
        throw InputError("not a directory: " + a.altimetry_dir);
    for (int e : station_epochs) {
        const fs::path path = fs::path(a.altimetry_dir) / (std::to_string(e) + ".csv");
        if (!fs::exists(path)) continue;
        grids[e] = merit::load_altimetry_file(path.string(), e);
        epochs.push_back(e);
    }
    if (epochs.empty()) throw InputError("no epoch has both stations and an altimetry grid");
    log_info("epochs with data: " + std::to_string(epochs.size()));

    struct Job {
        int epoch_i, epoch_j, k;
    };
    std::vector<Job> jobs;
    for (const auto& [i, j] : merit::epoch_pairs(epochs, a.stride))
        for (int k = kmin; k <= kmax; ++k) jobs.push_back({i, j, k});

    struct Row {
        std::string status;
        merit::ReconstructionResult r;
    };
    std::vector<std::optional<Row>> rows(jobs.size());
    merit::ReconstructConfig config;
    config.anchor = {lon0, lat0};
    config.solve = solve;

    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    std::atomic<bool> timed_out{false};
    std::atomic<bool> budget_hit{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (time_limit > 0 && elapsed > time_limit) {
                timed_out = true;
                return;
            }
            const Job& job = jobs[i];
            Row row;
            try {
                row.r = merit::reconstruct(stations, grids.at(job.epoch_i), grids.at(job.epoch_j),
                                           job.epoch_i, job.epoch_j, job.k, config);
                row.status = "ok";
                log_debug("pair (" + std::to_string(job.epoch_i) + "," +
                          std::to_string(job.epoch_j) + ") k=" + std::to_string(job.k) +
                          ": preprocess=" + fmt_double(row.r.preprocess_seconds) +
                          "s optimize=" + fmt_double(row.r.optimize_seconds) + "s");
            } catch (const merit::BudgetExceededError&) {
                row.status = "budget_exceeded";
                row.r = {job.epoch_i, job.epoch_j, job.k, 0, {}, {}, {}, 0, 0};
                budget_hit = true;
            } catch (const merit::TooFewStationsError&) {
                row.status = "too_few_stations";
                row.r = {job.epoch_i, job.epoch_j, job.k, 0, {}, {}, {}, 0, 0};
            } catch (const merit::TooFewRefsError&) {
                row.status = "too_few_refs";
                row.r = {job.epoch_i, job.epoch_j, job.k, 0, {}, {}, {}, 0, 0};
            }
            rows[i] = std::move(row);
        }
    };
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "epoch_i,epoch_j,k,status,n_stations,sigma2_min_error,sigma2_delaunay,delta_sigma2\n";
    double preprocess_total = 0, optimize_total = 0;
    for (const auto& row : rows) {
        if (!row) continue;
        const auto& r = row->r;
        csv << r.epoch_i << ',' << r.epoch_j << ',' << r.k << ',' << row->status << ','
            << r.n_stations;
        if (row->status == "ok")
            csv << ',' << fmt_double(merit::to_double(r.sigma2_min_error)) << ','
                << fmt_double(merit::to_double(r.sigma2_delaunay)) << ','
                << fmt_double(merit::to_double(r.delta_sigma2));
        else
            csv << ",,,";
        csv << '\n';
        preprocess_total += r.preprocess_seconds;
        optimize_total += r.optimize_seconds;
    }
    write_text(a.out, csv.str());
    log_info("reconstruct: preprocess " + fmt_double(preprocess_total) + "s, optimize " +
             fmt_double(optimize_total) + "s");
    if (timed_out) {
        std::cerr << "error: time limit reached, partial results written\n";
        return kLimitExceeded;
    }
    if (budget_hit) {
        std::cerr << "error: budget exceeded on some pairs, see status column\n";
        return kLimitExceeded;
    }
    return kOk;
}

// ----------------------------------------------------------- randgen-stats

struct RandgenArgs {
    std::string out;
    std::string k = "0..7";
    int type = 1;
    int n = 500;
    int samples = 200;
    double radius = 1000.0;
    double r2 = 0.0;
};

int run_randgen_stats(const RandgenArgs& a, std::uint64_t seed) {
    const auto [kmin, kmax] = parse_k_range(a.k);
    if (kmin < 0) throw InputError("k must be nonnegative");
    merit::GeneratorSpec gen;
    switch (a.type) {
        case 1: gen.type = merit::SampleType::Type1; break;
        case 2: gen.type = merit::SampleType::Type2; break;
        case 3: gen.type = merit::SampleType::Type3; break;
        default: throw InputError("type must be 1, 2 or 3");
    }
    gen.radius = a.radius;
    gen.r2 = a.r2;

    merit::CmaxOptions opts;
    opts.kmin = kmin;
    opts.kmax = kmax;
    opts.samples = a.samples;
    opts.seed = seed;
    std::vector<merit::StatsRow> table;
    try {
        table = merit::cmax_experiment(gen, a.n, opts);
    } catch (const merit::InvalidRadiiError& e) {
        throw InputError(e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }

    std::ostringstream csv;
    csv << "sample_type,n,k,avg_components,avg_cmax,min_cmax,max_cmax,samples,seed\n";
    for (const auto& row : table)
        csv << merit::to_string(row.sample_type) << ',' << row.n << ',' << row.k << ','
            << fmt_double(row.avg_components) << ',' << fmt_double(row.avg_cmax) << ','
            << row.min_cmax << ',' << row.max_cmax << ',' << row.samples << ',' << row.seed
            << '\n';
    write_text(a.out, csv.str());
    log_info("randgen-stats: " + std::to_string(table.size()) + " rows");
    return kOk;
}

// ------------------------------------------------------------------ gadget

struct GadgetArgs {
    std::string kind, at, to, axis = "h", out;
    bool below = false;
};

int run_gadget(const GadgetArgs& a) {
    if (a.kind.empty() || a.at.empty())
        throw InputError("gadget: --kind and --at are required");
    const merit::PointI at = parse_lattice_point(a.at, "--at");
    merit::Gadget g;
    if (a.kind == "bit") {
        const auto axis = a.axis == "v" ? merit::BitAxis::Vertical : merit::BitAxis::Horizontal;
        if (a.axis != "h" && a.axis != "v") throw InputError("axis must be h or v");
        g = merit::make_bit(at, axis);
    } else if (a.kind == "wire") {
        if (a.to.empty()) throw InputError("gadget: wire needs --to X,Y");
        try {
            g = merit::make_wire_segment(at, parse_lattice_point(a.to, "--to"));
        } catch (const merit::NotAxisAlignedError& e) {
            throw InputError(e.what());
        }
    } else if (a.kind == "multiplier") {
        g = merit::make_multiplier(at);
    } else if (a.kind == "clause") {
        g = merit::make_clause(at);
    } else if (a.kind == "negation") {
        g = merit::make_negation(at, a.below);
    } else {
        throw InputError("unknown gadget kind: " + a.kind);
    }
    json out = gadget_json(g);
    out["kind"] = a.kind;
    out["at"] = pointi_json(at);
    out["status"] = "ok";
    write_json(a.out, out);
    log_info("gadget " + a.kind + ": " + std::to_string(g.points.size()) + " points, " +
             std::to_string(g.refs.size()) + " refs");
    return kOk;
}

struct ReduceArgs {
    std::string embedding, out;
};

// Embedding JSON: num_vars, clauses (each with three ordered literals), and
// either explicit positions (var_x per variable, pos per clause) or neither,
// in which case the canonical layout is used (optional "gamma" spacing).
// Wire routes are derived from the positions, never read from the file.
int run_gadget_reduce(const ReduceArgs& a) {
    std::ifstream in(a.embedding);
    if (!in) throw InputError("cannot open " + a.embedding);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("embedding: ") + e.what());
    }
    if (doc.contains("wires"))
        throw InputError("embedding: explicit wire routes are not supported; "
                         "routes are derived from variable and clause positions");

    merit::Embedding emb;
    try {
        emb.num_vars = doc.at("num_vars").get<int>();
        std::vector<std::array<merit::Literal, 3>> lits;
        bool has_pos = false, missing_pos = false;
        for (const auto& jc : doc.at("clauses")) {
            std::array<merit::Literal, 3> cl{};
            const auto& jl = jc.at("lits");
            if (jl.size() != 3) throw InputError("embedding: clause needs 3 literals");
            for (int i = 0; i < 3; ++i)
                cl[i] = {jl[i].at("var").get<int>(), jl[i].at("negated").get<bool>()};
            lits.push_back(cl);
            if (jc.contains("pos")) has_pos = true; else missing_pos = true;
        }
        if (doc.contains("var_x") && has_pos && !missing_pos) {
            emb.var_x = doc.at("var_x").get<std::vector<std::int64_t>>();
            std::size_t c = 0;
            for (const auto& jc : doc.at("clauses")) {
                const auto& jp = jc.at("pos");
                emb.clauses.push_back(
                    {{jp.at(0).get<std::int64_t>(), jp.at(1).get<std::int64_t>()}, lits[c++]});
            }
        } else if (!doc.contains("var_x") && !has_pos) {
            const std::int64_t gamma =
                doc.contains("gamma") ? doc.at("gamma").get<std::int64_t>() : 0;
            emb = merit::layout_formula(emb.num_vars, lits, gamma);
        } else {
            throw InputError("embedding: give var_x and pos for every clause, or neither");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("embedding: ") + e.what());
    }

    merit::HardnessInstance inst;
    try {
        inst = merit::build_instance(emb);
    } catch (const merit::MalformedEmbeddingError& e) {
        throw InputError(e.what());
    }

    json out{{"status", "ok"}, {"num_vars", inst.num_vars}};
    json points = json::array(), f = json::array();
    for (const auto& p : inst.points) points.push_back(pointi_json(p));
    for (const auto& v : inst.f) f.push_back(rat_json(v));
    out["points"] = points;
    out["f"] = f;
    json refs = json::array();
    for (const auto& r : inst.gadget.refs) refs.push_back(ref_json(r));
    out["refs"] = refs;
    out["var_ref"] = inst.var_ref;
    json clauses = json::array();
    for (const auto& cl : inst.clause_lits) {
        json jcl = json::array();
        for (const auto& lit : cl)
            jcl.push_back(json{{"var", lit.var}, {"negated", lit.negated}});
        clauses.push_back(jcl);
    }
    out["clause_lits"] = clauses;
    out["gadget"] = gadget_json(inst.gadget);
    write_json(a.out, out);
    log_info("gadget reduce: " + std::to_string(inst.points.size()) + " points, " +
             std::to_string(inst.gadget.refs.size()) + " refs");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact minimum-error k-order Delaunay triangulations"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int threads = 0;
    double time_limit = 0;
    std::uint64_t budget = merit::SolveOptions{}.budget;
    std::string log_level = "info";
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--time-limit", time_limit,
                   "wall clock limit in seconds, 0 = none (reconstruct defaults to 3600)");
    app.add_option("--budget", budget, "dynamic program cell budget")->capture_default_str();
    app.add_option("--log-level", log_level, "quiet, info or debug")->capture_default_str();

    TriangulateArgs tri;
    auto* c_tri = app.add_subcommand("triangulate", "minimum-error triangulation of one instance");
    c_tri->fallthrough();
    c_tri->add_option("--points", tri.points, "site coordinates CSV (x,y)")->required();
    c_tri->add_option("--values", tri.values, "site values CSV, one per row")->required();
    c_tri->add_option("--refs", tri.refs, "reference coordinates CSV (x,y)")->required();
    c_tri->add_option("--refvalues", tri.refvalues, "reference values CSV")->required();
    c_tri->add_option("--k", tri.k, "triangulation order")->required();
    c_tri->add_flag("--oracle", tri.oracle, "cross-check against brute force enumeration");
    c_tri->add_option("--out", tri.out, "output JSON path, - for stdout");

    FixedEdgesArgs fe;
    auto* c_fe = app.add_subcommand("fixed-edges", "fixed edge graph and face decomposition");
    c_fe->fallthrough();
    c_fe->add_option("--input", fe.input, "point coordinates CSV (x,y)")->required();
    c_fe->add_option("--k", fe.k, "triangulation order")->required();
    c_fe->add_option("--out", fe.out, "output JSON path, - for stdout");

    ReconstructArgs rec;
    auto* c_rec = app.add_subcommand("reconstruct", "sea surface reconstruction sweep");
    c_rec->fallthrough();
    c_rec->add_option("--stations", rec.stations, "tide gauge CSV")->required();
    c_rec->add_option("--altimetry-dir", rec.altimetry_dir, "directory with <epoch>.csv grids")
        ->required();
    c_rec->add_option("--anchor", rec.anchor, "projection anchor LON,LAT")
        ->capture_default_str();
    c_rec->add_option("--k", rec.k, "order or range KMIN..KMAX")->capture_default_str();
    c_rec->add_option("--stride", rec.stride, "epoch lag stride in months")
        ->capture_default_str();
    c_rec->add_option("--time-frame", rec.time_frame, "epoch window START:END");
    c_rec->add_option("--out", rec.out, "results CSV path, - for stdout");

    RandgenArgs rg;
    auto* c_rg = app.add_subcommand("randgen-stats", "c_max statistics over random point sets");
    c_rg->fallthrough();
    c_rg->add_option("--type", rg.type, "1 disk, 2 four disks, 3 annulus")->required();
    c_rg->add_option("--n", rg.n, "points per sample")->capture_default_str();
    c_rg->add_option("--k", rg.k, "order or range KMIN..KMAX")->capture_default_str();
    c_rg->add_option("--samples", rg.samples, "samples per row")->capture_default_str();
    c_rg->add_option("--radius", rg.radius, "disk radius")->capture_default_str();
    c_rg->add_option("--r2", rg.r2, "annulus inner radius (type 3)")->capture_default_str();
    c_rg->add_option("--out", rg.out, "table CSV path, - for stdout");

    GadgetArgs ga;
    ReduceArgs red;
    auto* c_ga = app.add_subcommand("gadget", "hardness gadget emission");
    c_ga->fallthrough();
    c_ga->require_subcommand(0, 1);
    c_ga->add_option("--kind", ga.kind, "bit, wire, multiplier, clause or negation");
    c_ga->add_option("--at", ga.at, "lattice position X,Y");
    c_ga->add_option("--to", ga.to, "wire far end X,Y");
    c_ga->add_option("--axis", ga.axis, "bit axis, h or v")->capture_default_str();
    c_ga->add_flag("--below", ga.below, "negation below the wire");
    c_ga->add_option("--out", ga.out, "output JSON path, - for stdout");
    auto* c_red = c_ga->add_subcommand("reduce", "build a full formula instance");
    c_red->fallthrough();
    c_red->add_option("--embedding", red.embedding, "embedding JSON path")->required();
    c_red->add_option("--out", red.out, "output JSON path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    if (log_level == "quiet") g_log_level = 0;
    else if (log_level == "info") g_log_level = 1;
    else if (log_level == "debug") g_log_level = 2;
    else {
        std::cerr << "error: unknown log level: " << log_level << "\n";
        return kInputError;
    }
    if (budget == 0) {
        std::cerr << "error: budget must be positive\n";
        return kInputError;
    }
    merit::SolveOptions solve{budget};

    try {
        if (c_tri->parsed()) {
            if (tri.k < 0) throw InputError("k must be nonnegative");
            return run_triangulate(tri, solve);
        }
        if (c_fe->parsed()) {
            if (fe.k < 0) throw InputError("k must be nonnegative");
            return run_fixed_edges(fe);
        }
        if (c_rec->parsed()) {
            const double limit = time_limit > 0 ? time_limit : 3600.0;
            return run_reconstruct(rec, solve, limit, threads);
        }
        if (c_rg->parsed()) return run_randgen_stats(rg, seed);
        if (c_red->parsed()) return run_gadget_reduce(red);
        if (c_ga->parsed()) return run_gadget(ga);
        std::cerr << "error: no subcommand\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const merit::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const merit::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << " (raise --k)\n";
        return kInputError;
    } catch (const merit::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimitExceeded;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        // remaining runtime errors are data conditions (missing files, bad
        // geo rows, anchor antipodes), not internal faults
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}
