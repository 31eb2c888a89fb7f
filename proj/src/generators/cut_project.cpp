#include "apd/cut_project.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace apd {

namespace {

// Lattice sample used for the numerical scheme checks.
constexpr long kCheckRadius = 200;

// Integer range [first, last] of m with lo <= coef * m + offset <= hi.
bool solve_linear(double coef, double offset, double lo, double hi, double& mlo, double& mhi) {
    if (coef == 0.0) return offset >= lo && offset <= hi;
    double a = (lo - offset) / coef;
    double b = (hi - offset) / coef;
    if (a > b) std::swap(a, b);
    mlo = std::max(mlo, a);
    mhi = std::min(mhi, b);
    return true;
}

}  // namespace

StarImage star_map(const LatticeEmbedding& e, const LatticePoint& point) {
    const double m = static_cast<double>(point[0]);
    const double n = static_cast<double>(point[1]);
    return {e.basis[0][0] * m + e.basis[0][1] * n, e.basis[1][0] * m + e.basis[1][1] * n};
}

StarImage star_map(const CutProjectScheme& scheme, const LatticePoint& point) {
    return star_map(scheme.embedding(), point);
}

bool AcceptanceWindow::contains(double y) const {
    if (boundary == WindowBoundary::closed) return y >= lo - kEqTol && y <= hi + kEqTol;
    return y >= lo - kEqTol && y < hi - kEqTol;
}

CutProjectScheme::CutProjectScheme(std::string name, LatticeEmbedding embedding, AcceptanceWindow window)
    : name_(std::move(name)), embedding_(embedding), window_(window) {
    for (const auto& row : embedding_.basis) {
        for (double v : row) {
            if (!std::isfinite(v)) throw Error("lattice basis entries must be finite");
        }
    }
    double scale = 0.0;
    for (const auto& row : embedding_.basis) {
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    if (std::abs(embedding_.determinant()) <= 1e-12 * scale * scale) throw Error("degenerate lattice basis");
    if (!std::isfinite(window_.lo) || !std::isfinite(window_.hi)) {
        throw Error("acceptance window must be bounded");
    }
    if (!(window_.hi > window_.lo)) throw Error("acceptance window must have nonempty interior");

    // Physical projection injective on the lattice: no nonzero sample point projects to 0.
    // Internal projection dense: sampled internal coordinates fill [-scale, scale] without gaps
    // wider than 1% of it. Density is a lattice property, so the window does not enter here.
    std::vector<double> internal{-scale, scale};
    for (long m = -kCheckRadius; m <= kCheckRadius; ++m) {
        for (long n = -kCheckRadius; n <= kCheckRadius; ++n) {
            if (m == 0 && n == 0) continue;
            const StarImage s = star_map(embedding_, {m, n});
            if (std::abs(s.physical) < kEqTol) {
                throw Error("physical projection is not injective on the lattice");
            }
            if (std::abs(s.internal) <= scale) internal.push_back(s.internal);
        }
    }
    std::sort(internal.begin(), internal.end());
    double widest = 0.0;
    for (std::size_t i = 0; i + 1 < internal.size(); ++i) widest = std::max(widest, internal[i + 1] - internal[i]);
    if (widest > 2 * scale / 100) throw Error("internal projection of the lattice is not dense");
}

PointPattern cut_project(const CutProjectScheme& scheme, double phys_lo, double phys_hi) {
    if (!std::isfinite(phys_lo) || !std::isfinite(phys_hi) || phys_hi < phys_lo) {
        throw Error("physical window must be a bounded interval");
    }
    const auto& b = scheme.embedding().basis;
    const auto& w = scheme.window();
    const double det = scheme.embedding().determinant();

    // Enumeration bound: (m, n) = B^{-1} (x, y) with (x, y) in [phys_lo, phys_hi] × [w.lo, w.hi].
    // n = (-b10 * x + b00 * y) / det is linear, so its range over the rectangle is attained
    // at the corners. For each n the two strip constraints
    //   phys_lo <= b00 m + b01 n <= phys_hi,   w.lo <= b10 m + b11 n <= w.hi
    // cut out an interval of m. Every emitted point is re-tested exactly afterwards.
    double nmin = std::numeric_limits<double>::infinity();
    double nmax = -nmin;
    for (double x : {phys_lo, phys_hi}) {
        for (double y : {w.lo, w.hi}) {
            const double n = (-b[1][0] * x + b[0][0] * y) / det;
            nmin = std::min(nmin, n);
            nmax = std::max(nmax, n);
        }
    }
    std::vector<Point> pts;
    const double pad = 1e-6;
    for (long n = static_cast<long>(std::floor(nmin - pad)); n <= static_cast<long>(std::ceil(nmax + pad)); ++n) {
        double mlo = -std::numeric_limits<double>::infinity();
        double mhi = std::numeric_limits<double>::infinity();
        const double nd = static_cast<double>(n);
        if (!solve_linear(b[0][0], b[0][1] * nd, phys_lo, phys_hi, mlo, mhi)) continue;
        if (!solve_linear(b[1][0], b[1][1] * nd, w.lo, w.hi, mlo, mhi)) continue;
        if (!std::isfinite(mlo) || !std::isfinite(mhi)) throw Error("lattice enumeration is unbounded for this scheme");
        for (long m = static_cast<long>(std::floor(mlo - pad)); m <= static_cast<long>(std::ceil(mhi + pad)); ++m) {
            const StarImage s = star_map(scheme.embedding(), {m, n});
            if (s.physical >= phys_lo && s.physical <= phys_hi && w.contains(s.internal)) pts.push_back({s.physical, 0.0});
        }
    }
    return PointPattern(1, std::move(pts), Box{{phys_lo, 0.0}, {phys_hi, 0.0}}, scheme.name());
}

}  // namespace apd
