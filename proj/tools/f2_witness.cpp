// Randomized hunt for a point set whose second-order fixed edge graph has a
// face with interior components (c_max > 0 at k = 2). Such sets exist, but
// none of our random experiments has produced one; this harness makes the
// search repeatable and records any find. Cycles through sample families:
// uniform disk, four disks, annulus, near-cocircular ring, jittered grid,
// and two concentric rings.
//
// Usage: f2_witness [--samples N] [--n N] [--seed S] [--out DIR]
// Exit 0 always; each witness is written to DIR/witness_<sample>.csv.

#include "merit/faces.hpp"
#include "merit/hod.hpp"
#include "merit/randgen.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using merit::PointD;

std::vector<PointD> ring(int n, double radius, double jitter, merit::PortableRng& rng) {
    std::vector<PointD> pts;
    for (int i = 0; i < n; ++i) {
        const double a = 2 * M_PI * i / n + rng.uniform(-0.5, 0.5) / n;
        const double r = radius + rng.uniform(-jitter, jitter);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return pts;
}

std::vector<PointD> jittered_grid(int n, merit::PortableRng& rng) {
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<PointD> pts;
    for (int i = 0; i < side && static_cast<int>(pts.size()) < n; ++i)
        for (int j = 0; j < side && static_cast<int>(pts.size()) < n; ++j)
            pts.push_back({100.0 * i + rng.uniform(-20, 20), 100.0 * j + rng.uniform(-20, 20)});
    return pts;
}

std::vector<PointD> sample_family(int family, int n, std::uint64_t seed) {
    merit::PortableRng rng(seed);
    switch (family % 6) {
        case 0: return merit::gen_type1(n, 1000.0, seed);
        case 1: return merit::gen_type2(std::max(n, 4), 250.0, seed);
        case 2: return merit::gen_type3(n, 1000.0, 900.0, seed);
        case 3: return ring(n, 1000.0, 1.0, rng);
        case 4: return jittered_grid(n, rng);
        default: {
            auto pts = ring(n / 2, 1000.0, 2.0, rng);
            const auto inner = ring(n - n / 2, 500.0, 2.0, rng);
            pts.insert(pts.end(), inner.begin(), inner.end());
            return pts;
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    int samples = 1000, n = 100;
    std::uint64_t seed = 42;
    std::string out = "f2_witnesses";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const char* val = i + 1 < argc ? argv[i + 1] : nullptr;
        if (arg == "--samples" && val) samples = std::atoi(argv[++i]);
        else if (arg == "--n" && val) n = std::atoi(argv[++i]);
        else if (arg == "--seed" && val) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (arg == "--out" && val) out = argv[++i];
        else {
            std::cerr << "usage: f2_witness [--samples N] [--n N] [--seed S] [--out DIR]\n";
            return 2;
        }
    }

    int found = 0;
    for (int s = 0; s < samples; ++s) {
        const auto pts = sample_family(s, n, merit::detail::stream_seed(seed, s));
        const auto analysis = merit::analyze_fixed_edges(pts, {.kmax = 2});
        const auto dec = merit::decompose_faces(pts, analysis.fixed_edges(2));
        if (dec.c_max == 0) continue;
        ++found;
        std::filesystem::create_directories(out);
        const std::string path = out + "/witness_" + std::to_string(s) + ".csv";
        std::ofstream f(path);
        f << "# c_max=" << dec.c_max << " family=" << s % 6 << " seed=" << seed << "\n";
        for (const auto& p : pts) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
            f << buf;
        }
        std::cerr << "witness: sample " << s << " c_max=" << dec.c_max << " -> " << path << "\n";
    }
    std::cout << "samples=" << samples << " witnesses=" << found << "\n";
    return 0;
}
