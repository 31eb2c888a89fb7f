#pragma once

// Random small patterns and the library-vs-brute-force comparisons run on them.

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "apd/analysis.hpp"
#include "apd/spectral.hpp"
#include "brute_force.hpp"

namespace oracle {

struct Sample {
    apd::PointPattern pattern;
    double cutoff;
    double radius;
};

/// Case i of a fixed family: random subsets of Z (repeating patches), of a square grid, and
/// uniform points in a box. At most 200 points each.
inline Sample random_sample(int i) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(i));
    std::bernoulli_distribution keep(0.6);
    std::vector<Point> pts;
    switch (i % 3) {
        case 0: {
            for (int x = 0; x < 300 && pts.size() < 200; ++x) {
                if (keep(rng)) pts.push_back({static_cast<double>(x), 0.0});
            }
            return {apd::PointPattern(1, pts, apd::Box{{0, 0}, {299, 0}}, "z-subset"), 3.5, 2.5};
        }
        case 1: {
            for (int x = 0; x < 14; ++x) {
                for (int y = 0; y < 14; ++y) {
                    if (keep(rng)) pts.push_back({x * 0.5, y * 0.5});
                }
            }
            return {apd::PointPattern(2, pts, apd::Box{{0, 0}, {6.5, 6.5}}, "grid-subset"), 1.6, 1.2};
        }
        default: {
            std::uniform_real_distribution<double> u(0.0, 10.0);
            for (int k = 0; k < 150; ++k) pts.push_back({u(rng), u(rng)});
            return {apd::PointPattern(2, pts, apd::Box{{0, 0}, {10, 10}}, "uniform"), 2.0, 1.5};
        }
    }
}

inline std::vector<Point> points_of(const apd::PointPattern& p) { return {p.points().begin(), p.points().end()}; }

/// Empty string when library and oracle agree; otherwise a description of the first mismatch.
inline std::string compare_sample(const Sample& s, std::mt19937_64& rng) {
    const auto& p = s.pattern;
    const auto pts = points_of(p);
    const double tol = apd::kEqTol;

    const double lg = apd::min_gap(p);
    const double og = min_gap(pts);
    if (std::abs(lg - og) > 1e-12 * og) return "min_gap " + std::to_string(lg) + " vs " + std::to_string(og);

    const auto ld = apd::difference_set(p, s.cutoff).vectors;
    const auto od = difference_set(pts, s.cutoff, tol);
    if (ld.size() != od.size()) return "difference_set size " + std::to_string(ld.size()) + " vs " + std::to_string(od.size());
    for (const auto& v : ld) {
        if (std::none_of(od.begin(), od.end(), [&](const Point& w) { return same(v, w, tol); })) return "difference_set vector";
    }

    const auto lc = apd::patch_census(p, s.radius).class_of;
    const auto oc = census(pts, p.window().lo, p.window().hi, p.dimension(), s.radius, tol);
    if (lc != oc) return "patch_census class ids";

    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int j = 0; j < 20; ++j) {
        const Point k{u(rng), p.dimension() == 2 ? u(rng) : 0.0};
        const auto la = apd::diffraction_amplitude(p, {k});
        const auto oa = amplitude(pts, k);
        if (std::abs(la - oa) > 1e-12 * std::max(1.0, std::abs(oa))) return "amplitude at k=" + std::to_string(k[0]);
    }
    return {};
}

}  // namespace oracle
