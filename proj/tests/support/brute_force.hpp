#pragma once

// Quadratic-time reference implementations. They share no code with the library beyond the
// Point type, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "apd/geometry.hpp"

namespace oracle {

using apd::Point;

inline double min_gap(const std::vector<Point>& pts) {
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            best = std::min(best, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
        }
    }
    return best;
}

inline bool same(const Point& a, const Point& b, double tol) {
    return std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol;
}

/// x − y over all ordered pairs with |x − y| <= cutoff, deduplicated within tol.
inline std::vector<Point> difference_set(const std::vector<Point>& pts, double cutoff, double tol) {
    std::vector<Point> out;
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            const Point d{x[0] - y[0], x[1] - y[1]};
            if (std::hypot(d[0], d[1]) > cutoff + tol) continue;
            if (std::none_of(out.begin(), out.end(), [&](const Point& e) { return same(e, d, tol); })) out.push_back(d);
        }
    }
    return out;
}

inline bool ball_inside(const Point& c, double r, const Point& lo, const Point& hi, int dim) {
    for (int d = 0; d < dim; ++d) {
        if (c[d] - r < lo[d] - 1e-9 || c[d] + r > hi[d] + 1e-9) return false;
    }
    return true;
}

/// Class id per point (−1 off the interior), classes numbered by first member, patches
/// compared as sets of relative vectors.
inline std::vector<long> census(const std::vector<Point>& pts, const Point& lo, const Point& hi, int dim, double r,
                                double tol) {
    std::vector<std::vector<Point>> patch(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (const auto& y : pts) {
            const Point d{y[0] - pts[i][0], y[1] - pts[i][1]};
            if (std::hypot(d[0], d[1]) <= r + tol) patch[i].push_back(d);
        }
    }
    auto equal_sets = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
        if (a.size() != b.size()) return false;
        for (const auto& p : a) {
            if (std::none_of(b.begin(), b.end(), [&](const Point& q) { return same(p, q, tol); })) return false;
        }
        return true;
    };
    std::vector<long> cls(pts.size(), -1);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!ball_inside(pts[i], r, lo, hi, dim)) continue;
        for (std::size_t c = 0; c < reps.size() && cls[i] < 0; ++c) {
            if (equal_sets(patch[i], patch[reps[c]])) cls[i] = static_cast<long>(c);
        }
        if (cls[i] < 0) {
            cls[i] = static_cast<long>(reps.size());
            reps.push_back(i);
        }
    }
    return cls;
}

/// (1/N) Σ e^{−2πi k·x} in long double without phase reduction.
inline std::complex<double> amplitude(const std::vector<Point>& pts, const Point& k) {
    long double re = 0, im = 0;
    const long double two_pi = 2 * 3.141592653589793238462643383279502884L;
    for (const auto& x : pts) {
        const long double ph = -two_pi * (static_cast<long double>(k[0]) * x[0] + static_cast<long double>(k[1]) * x[1]);
        re += std::cos(ph);
        im += std::sin(ph);
    }
    return {static_cast<double>(re / pts.size()), static_cast<double>(im / pts.size())};
}

/// Thue–Morse letter n: parity of the binary digit sum.
inline int thue_morse_letter(std::uint64_t n) { return __builtin_popcountll(n) & 1; }

/// Smallest arc (in turns) on Z/q containing the given residues.
inline double residue_arc(const std::set<long>& residues, long q) {
    if (residues.size() < 2) return 0.0;
    long best = q;
    for (long s : residues) {
        long span = 0;
        for (long t : residues) span = std::max(span, ((t - s) % q + q) % q);
        best = std::min(best, span);
    }
    return static_cast<double>(best) / static_cast<double>(q);
}

/// Phase spread of k = p/q on the 1-positions of the Thue–Morse word of length n, read directly
/// from the symbolic word: a patch of radius R around x is the letter block t[x−R..x+R].
inline double thue_morse_spread(std::size_t n, long p, long q, long radius) {
    std::map<std::string, std::set<long>> classes;
    for (long x = radius; x + radius < static_cast<long>(n); ++x) {
        if (thue_morse_letter(static_cast<std::uint64_t>(x)) != 1) continue;
        std::string block;
        for (long y = x - radius; y <= x + radius; ++y) block += static_cast<char>('0' + thue_morse_letter(static_cast<std::uint64_t>(y)));
        classes[block].insert(((p * x) % q + q) % q);
    }
    double spread = 0.0;
    for (const auto& [block, residues] : classes) spread = std::max(spread, residue_arc(residues, q));
    return 2 * 3.14159265358979323846 * spread;
}

/// Independent iteration of a substitution given as a rule map.
inline std::string iterate(const std::map<char, std::string>& rules, std::string w, int n) {
    for (int i = 0; i < n; ++i) {
        std::string next;
        for (char c : w) next += rules.at(c);
        w = next;
    }
    return w;
}

}  // namespace oracle
