#include <algorithm>
#include <cmath>
#include <numeric>

#include "apd/spectral.hpp"

namespace apd {

namespace {

double unit_coordinate(const Point& k, const Point& x) {
    double t = phase_fraction(k, x);
    if (t < 0.0) t += 1.0;
    return t >= 1.0 ? 0.0 : t;
}

double circle_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

Point planar(const PointPattern& p, const WaveVector& k) { return p.dimension() == 1 ? Point{k.k[0], 0.0} : k.k; }

}  // namespace

std::vector<double> torus_coordinates(const PointPattern& p, std::span<const WaveVector> basis, const Point& x) {
    if (basis.empty()) throw Error("torus coordinates need a nonempty eigenvalue basis");
    std::vector<double> out;
    out.reserve(basis.size());
    for (const auto& k : basis) out.push_back(unit_coordinate(planar(p, k), x));
    return out;
}

CollisionReport fiber_collision_sample(const PointPattern& p, const PatchCensus& census,
                                       std::span<const WaveVector> basis, double tol) {
    if (basis.empty()) throw Error("torus coordinates need a nonempty eigenvalue basis");
    if (!(tol > 0.0) || !(tol < 0.25)) throw Error("collision tolerance must lie in (0, 1/4)");
    CollisionReport r;
    r.radius = census.radius;
    r.tol = tol;

    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < census.class_of.size(); ++i) {
        if (census.class_of[i] >= 0) anchors.push_back(i);
    }
    const std::size_t b = basis.size();

    // Sweep on the first coordinate; entries near 0 get a copy shifted by one turn so pairs
    // across the wrap are seen once. With tol < 1/2 a pair is never found both directly and
    // through the wrap.
    struct Entry {
        double t0;
        std::size_t slot;
    };
    auto sweep_entries = [&](std::size_t stride, std::vector<std::vector<double>>& coords) {
        coords.clear();
        for (std::size_t i = 0; i < anchors.size(); i += stride) coords.push_back(torus_coordinates(p, basis, p[anchors[i]]));
        std::vector<Entry> e;
        for (std::size_t s = 0; s < coords.size(); ++s) e.push_back({coords[s][0], s});
        for (std::size_t s = 0; s < coords.size(); ++s) {
            if (coords[s][0] < tol) e.push_back({coords[s][0] + 1.0, s});
        }
        std::stable_sort(e.begin(), e.end(), [](const Entry& x, const Entry& y) { return x.t0 < y.t0; });
        return e;
    };
    auto pair_bound = [&](const std::vector<Entry>& e) {
        std::size_t total = 0;
        for (std::size_t i = 0, j = 0; i < e.size(); ++i) {
            j = std::max(j, i + 1);
            while (j < e.size() && e[j].t0 - e[i].t0 <= tol) ++j;
            total += j - i - 1;
        }
        return total;
    };

    std::vector<std::vector<double>> coords;
    std::size_t stride = 1;
    auto entries = sweep_entries(stride, coords);
    const std::size_t bound = pair_bound(entries);
    if (bound > kMaxClosePairs) {
        // Subsampling anchors by s divides the pair count by about s².
        stride = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(bound) / kMaxClosePairs)));
        entries = sweep_entries(stride, coords);
    }
    r.stride = stride;
    r.anchors = coords.size();

    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size() && entries[j].t0 - entries[i].t0 <= tol; ++j) {
            const std::size_t a = entries[i].slot;
            const std::size_t c = entries[j].slot;
            if (a == c) continue;
            bool close = true;
            for (std::size_t d = 1; d < b && close; ++d) close = circle_distance(coords[a][d], coords[c][d]) <= tol;
            if (!close) continue;
            ++r.close_pairs;
            if (census.class_of[anchors[a * stride]] != census.class_of[anchors[c * stride]]) ++r.colliding_pairs;
        }
    }
    r.fraction = r.close_pairs == 0 ? 0.0 : static_cast<double>(r.colliding_pairs) / static_cast<double>(r.close_pairs);
    if (r.close_pairs < kMinClosePairs) {
        r.inconclusive = true;
        r.note = "only " + std::to_string(r.close_pairs) + " coordinate-close pairs; need " + std::to_string(kMinClosePairs);
    } else if (stride > 1) {
        r.note = "anchors subsampled with stride " + std::to_string(stride);
    }
    return r;
}

CollisionReport fiber_collision_sample(const PointPattern& p, std::span<const WaveVector> basis, double radius,
                                       double tol) {
    return fiber_collision_sample(p, patch_census(p, radius), basis, tol);
}

std::vector<CollisionReport> collision_ladder(const PointPattern& p, std::span<const WaveVector> basis,
                                              std::span<const double> radii, double base_tol) {
    if (radii.empty()) throw Error("collision ladder needs at least one radius");
    std::vector<CollisionReport> out;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw Error("ladder radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw Error("radius ladder must be strictly increasing");
        const double scale = radii[0] / radii[i];
        out.push_back(fiber_collision_sample(p, basis, radii[i], base_tol * scale * scale));
    }
    return out;
}

}  // namespace apd
