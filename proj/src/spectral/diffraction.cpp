#include <algorithm>
#include <cmath>
#include <numbers>

#include "apd/parallel.hpp"
#include "apd/spectral.hpp"

namespace apd {

std::string to_string(PeakVerdict v) {
    switch (v) {
        case PeakVerdict::topological: return "topological";
        case PeakVerdict::l2_candidate_only: return "l2_candidate_only";
        case PeakVerdict::extinct_topological: return "extinct_topological";
        case PeakVerdict::none: return "none";
    }
    return "none";
}

std::complex<double> diffraction_amplitude(const PointPattern& p, const WaveVector& k) {
    if (p.empty()) throw Error("diffraction amplitude of an empty pattern");
    if (!std::isfinite(k.k[0]) || !std::isfinite(k.k[1])) throw Error("wave vector components must be finite");
    const Point kk = p.dimension() == 1 ? Point{k.k[0], 0.0} : k.k;
    // Phases are reduced mod 1 before the trigonometric call so large coordinates keep full
    // precision; the sum is compensated (Neumaier) per component.
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    auto add = [](double& sum, double& comp, double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    for (const Point& x : p.points()) {
        const double phase = -2.0 * std::numbers::pi * phase_fraction(kk, x);
        add(re, cre, std::cos(phase));
        add(im, cim, std::sin(phase));
    }
    const double n = static_cast<double>(p.size());
    return {(re + cre) / n, (im + cim) / n};
}

double bragg_intensity(const PointPattern& p, const WaveVector& k) { return std::norm(diffraction_amplitude(p, k)); }

namespace {

void check_ladder(const PointPattern& p, std::span<const Box> ladder) {
    if (ladder.size() < 3) throw Error("window ladder needs at least 3 windows");
    const int dim = p.dimension();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i].is_empty(dim)) throw Error("window ladder contains an empty window");
        if (!p.window().contains_box(ladder[i], dim)) throw Error("ladder window exceeds the pattern window");
        if (i > 0 && !ladder[i].contains_box(ladder[i - 1], dim)) throw Error("ladder windows are not nested");
    }
}

// Golden-section maximization of |A| along one axis, inside [center - half, center + half].
Point refine_axis(const PointPattern& p, Point k, int axis, double half, int iterations) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = k[axis] - half;
    double b = k[axis] + half;
    auto f = [&](double v) {
        Point q = k;
        q[axis] = v;
        return std::abs(diffraction_amplitude(p, {q}));
    };
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double best = fc >= fd ? c : d;
    // Keep the starting node when the bracket found nothing better (exact lattice peaks).
    if (std::max(fc, fd) > f(k[axis])) k[axis] = best;
    return k;
}

bool is_local_max(const std::vector<double>& values, const GridSpec& grid, std::size_t flat) {
    const double v = values[flat];
    if (grid.dimension == 1) {
        if (flat > 0 && values[flat - 1] > v) return false;
        if (flat + 1 < values.size() && values[flat + 1] > v) return false;
        return true;
    }
    const std::size_t nx = grid.count(0);
    const std::size_t ny = grid.count(1);
    const std::size_t ix = flat / ny;
    const std::size_t iy = flat % ny;
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            if (dx == 0 && dy == 0) continue;
            const long jx = static_cast<long>(ix) + dx;
            const long jy = static_cast<long>(iy) + dy;
            if (jx < 0 || jy < 0 || jx >= static_cast<long>(nx) || jy >= static_cast<long>(ny)) continue;
            if (values[static_cast<std::size_t>(jx) * ny + static_cast<std::size_t>(jy)] > v) return false;
        }
    }
    return true;
}

}  // namespace

SpectrumReport bragg_scan(const PointPattern& p, const GridSpec& k_grid, std::span<const Box> ladder,
                          const SpectralParams& params) {
    k_grid.validate();
    if (k_grid.dimension != p.dimension()) throw Error("k-grid dimension differs from the pattern dimension");
    check_ladder(p, ladder);

    SpectrumReport report;
    report.dimension = p.dimension();
    report.label = p.label();
    report.params = params;
    std::vector<PointPattern> views;
    for (const Box& w : ladder) {
        views.push_back(p.restricted(w));
        if (views.back().empty()) throw Error("ladder window contains no points");
        report.windows.push_back(w);
        report.window_sizes.push_back(views.back().size());
    }
    const PointPattern& largest = views.back();

    const std::size_t n = k_grid.size();
    std::vector<double> coarse(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) coarse[i] = bragg_intensity(largest, {k_grid.at(i)});
    });

    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < n; ++i) {
        if (coarse[i] >= params.theta_bragg / 4 && is_local_max(coarse, k_grid, i)) seeds.push_back(i);
    }

    std::vector<SpectrumEntry> found(seeds.size());
    std::vector<char> keep(seeds.size(), 0);
    parallel_for(seeds.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Point k = k_grid.at(seeds[s]);
            for (int axis = 0; axis < p.dimension(); ++axis) {
                k = refine_axis(largest, k, axis, k_grid.step, params.golden_iterations);
            }
            SpectrumEntry e;
            e.k = {k};
            bool stable = true;
            for (const auto& v : views) {
                const double in = bragg_intensity(v, e.k);
                e.ladder_intensities.push_back(in);
                stable = stable && in >= params.theta_bragg;
            }
            e.intensity = e.ladder_intensities.back();
            e.bragg_candidate = stable;
            e.verdict = stable ? PeakVerdict::l2_candidate_only : PeakVerdict::none;
            found[s] = std::move(e);
            keep[s] = stable ? 1 : 0;
        }
    });

    std::vector<SpectrumEntry> candidates;
    for (std::size_t s = 0; s < found.size(); ++s) {
        if (keep[s]) candidates.push_back(std::move(found[s]));
    }
    // A finite window of extent L resolves peaks only to about 1/L; its sinc ripples sit at
    // 1.4/L and 2.5/L from a peak and can keep theta_bragg on every ladder window. Candidates
    // within 3/L of a stronger one are absorbed, strongest first.
    double extent = ladder.back().extent(0);
    if (p.dimension() == 2) extent = std::min(extent, ladder.back().extent(1));
    const double resolution = std::max(k_grid.step, 3.0 / extent);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.intensity > b.intensity; });
    for (const auto& c : candidates) {
        const bool absorbed = std::any_of(report.entries.begin(), report.entries.end(), [&](const SpectrumEntry& e) {
            return distance(e.k.k, c.k.k) <= resolution;
        });
        if (!absorbed) report.entries.push_back(c);
    }

    const bool has_zero = std::any_of(report.entries.begin(), report.entries.end(),
                                      [&](const SpectrumEntry& e) { return norm(e.k.k) <= resolution; });
    if (!has_zero) {
        SpectrumEntry zero;
        for (const auto& v : views) zero.ladder_intensities.push_back(bragg_intensity(v, {}));
        zero.intensity = zero.ladder_intensities.back();
        zero.bragg_candidate = true;
        zero.verdict = PeakVerdict::l2_candidate_only;
        report.entries.insert(report.entries.begin(), zero);
    } else {
        for (auto& e : report.entries) {
            if (norm(e.k.k) > resolution) continue;
            e.k = {};
            for (std::size_t i = 0; i < views.size(); ++i) e.ladder_intensities[i] = bragg_intensity(views[i], {});
            e.intensity = e.ladder_intensities.back();
        }
    }
    std::sort(report.entries.begin(), report.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return compare_points(a.k.k, b.k.k, 0.0) < 0;
    });
    return report;
}

}  // namespace apd
