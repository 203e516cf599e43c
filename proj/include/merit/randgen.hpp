#pragma once

#include "merit/faces.hpp"
#include "merit/hod.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace merit {

struct InvalidRadiiError : std::invalid_argument {
    InvalidRadiiError() : std::invalid_argument("annulus radii must satisfy 0 <= r2 < r1") {}
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic cross-platform random source: the mt19937_64 sequence is
// fixed by the standard, and the 53-bit mantissa mapping below replaces the
// implementation-defined std distributions.
class PortableRng {
  public:
    explicit PortableRng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 eng_;
};

namespace detail {

// Uniform points in the annulus r2_strict < |p - center| <= r1 by rejection
// from the bounding square; duplicates rejected so downstream triangulation
// never sees coincident points. r2_strict < 0 yields the full disk.
inline std::vector<PointD> sample_annulus(int n, double r1, double r2_strict, PointD center,
                                          PortableRng& rng) {
    std::vector<PointD> pts;
    std::set<std::pair<double, double>> used;
    const double r1sq = r1 * r1;
    const double r2sq = r2_strict < 0 ? -1.0 : r2_strict * r2_strict;
    while (static_cast<int>(pts.size()) < n) {
        const double x = rng.uniform(-r1, r1);
        const double y = rng.uniform(-r1, r1);
        const double d2 = x * x + y * y;
        if (d2 > r1sq || d2 <= r2sq) continue;
        const PointD p{center.x + x, center.y + y};
        if (!used.insert({p.x, p.y}).second) continue;
        pts.push_back(p);
    }
    return pts;
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

}  // namespace detail

// Uniform points in a disk of the given radius around the origin.
inline std::vector<PointD> gen_type1(int n, double radius, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_type1: need n >= 3");
    PortableRng rng(seed);
    return detail::sample_annulus(n, radius, -1.0, PointD{0, 0}, rng);
}

// Four disjoint disks whose centers sit on a square of side twice the disk
// diameter. n splits as evenly as possible, the remainder going to the
// first disks in lexicographic center order; each disk draws from its own
// seed stream, so one disk's points do not depend on the other disks'
// counts. Output is concatenated disk by disk.
inline std::vector<PointD> gen_type2(int n, double radius, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("gen_type2: need n >= 4");
    const double c = 2 * radius;
    const PointD centers[4] = {{-c, -c}, {-c, c}, {c, -c}, {c, c}};
    std::vector<PointD> pts;
    for (int disk = 0; disk < 4; ++disk) {
        const int count = n / 4 + (disk < n % 4 ? 1 : 0);
        PortableRng rng(detail::stream_seed(seed, disk));
        const auto block = detail::sample_annulus(count, radius, -1.0, centers[disk], rng);
        pts.insert(pts.end(), block.begin(), block.end());
    }
    return pts;
}

// Uniform points in the annulus r2 < d <= r1 around the origin. r2 = 0
// reproduces gen_type1 exactly (same rejection stream).
inline std::vector<PointD> gen_type3(int n, double r1, double r2, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_type3: need n >= 3");
    if (r2 < 0 || r2 >= r1) throw InvalidRadiiError();
    PortableRng rng(seed);
    return detail::sample_annulus(n, r1, r2 == 0 ? -1.0 : r2, PointD{0, 0}, rng);
}

enum class SampleType { Type1, Type2, Type3, Projected };

inline std::string to_string(SampleType t) {
    switch (t) {
        case SampleType::Type1: return "Type1";
        case SampleType::Type2: return "Type2";
        case SampleType::Type3: return "Type3";
        default: return "Projected";
    }
}

struct GeneratorSpec {
    SampleType type = SampleType::Type1;
    double radius = 1000.0;
    double r2 = 0.0;
    // For Projected: a fixed externally supplied point set (one sample).
    std::vector<PointD> projected;
};

inline std::vector<PointD> generate(const GeneratorSpec& gen, int n, std::uint64_t seed) {
    switch (gen.type) {
        case SampleType::Type1: return gen_type1(n, gen.radius, seed);
        case SampleType::Type2: return gen_type2(n, gen.radius, seed);
        case SampleType::Type3: return gen_type3(n, gen.radius, gen.r2, seed);
        default:
            if (gen.projected.size() < 3)
                throw std::invalid_argument("generate: projected set needs >= 3 points");
            return gen.projected;
    }
}

struct StatsRow {
    SampleType sample_type = SampleType::Type1;
    int n = 0;
    int k = 0;
    double avg_components = 0;
    double avg_cmax = 0;
    int min_cmax = 0;
    int max_cmax = 0;
    int samples = 0;
    std::uint64_t seed = 0;
};

struct CmaxOptions {
    int kmin = 0;
    int kmax = 7;
    int samples = 200;
    std::uint64_t seed = 42;
    int prune_slack = 2;
};

// For each k: the mean over samples of (components per face averaged within
// the sample) and of c_max, plus the extreme c_max values seen. One
// fixed-edge analysis per sample serves every k.
inline std::vector<StatsRow> cmax_experiment(const GeneratorSpec& gen, int n, CmaxOptions opts) {
    if (opts.samples < 1) throw std::invalid_argument("cmax_experiment: samples >= 1");
    if (opts.kmin < 0 || opts.kmin > opts.kmax)
        throw std::invalid_argument("cmax_experiment: bad k range");
    const int nk = opts.kmax - opts.kmin + 1;
    std::vector<double> comp_sum(nk, 0), cmax_sum(nk, 0);
    std::vector<int> cmax_min(nk, std::numeric_limits<int>::max()), cmax_max(nk, 0);

    for (int s = 0; s < opts.samples; ++s) {
        const auto pts = generate(gen, n, detail::stream_seed(opts.seed, s));
        const auto analysis =
            analyze_fixed_edges(pts, {.kmax = opts.kmax, .prune = true,
                                      .prune_slack = opts.prune_slack});
        for (int k = opts.kmin; k <= opts.kmax; ++k) {
            const auto dec = decompose_faces(pts, analysis.fixed_edges(k));
            double mean_components = 0;
            for (const Face& f : dec.faces) mean_components += f.interior_components();
            mean_components /= static_cast<double>(dec.faces.size());
            const int i = k - opts.kmin;
            comp_sum[i] += mean_components;
            cmax_sum[i] += dec.c_max;
            cmax_min[i] = std::min(cmax_min[i], dec.c_max);
            cmax_max[i] = std::max(cmax_max[i], dec.c_max);
        }
    }

    std::vector<StatsRow> rows;
    for (int k = opts.kmin; k <= opts.kmax; ++k) {
        const int i = k - opts.kmin;
        StatsRow row;
        row.sample_type = gen.type;
        row.n = n;
        row.k = k;
        row.avg_components = comp_sum[i] / opts.samples;
        row.avg_cmax = cmax_sum[i] / opts.samples;
        row.min_cmax = cmax_min[i];
        row.max_cmax = cmax_max[i];
        row.samples = opts.samples;
        row.seed = opts.seed;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace merit
