#include "apd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "apd/parallel.hpp"

namespace apd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> nearest_neighbor_distances(const PointPattern& p) {
    const auto pts = p.points();
    std::vector<double> out(pts.size(), kInf);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double best = kInf;
        for (std::size_t j = i + 1; j < pts.size() && pts[j][0] - pts[i][0] < best; ++j) {
            best = std::min(best, distance(pts[i], pts[j]));
        }
        for (std::size_t j = i; j-- > 0 && pts[i][0] - pts[j][0] < best;) {
            best = std::min(best, distance(pts[i], pts[j]));
        }
        out[i] = best;
    }
    return out;
}

// Sample positions covering `region` with spacing at most `step` along each axis.
struct SampleGrid {
    std::size_t n[2] = {1, 1};
    double h[2] = {0.0, 0.0};
    Box region;

    SampleGrid(const Box& r, double step, int dim, std::size_t max_nodes = 4'000'000) : region(r) {
        for (;;) {
            std::size_t total = 1;
            for (int d = 0; d < dim; ++d) {
                const double ext = region.extent(d);
                n[d] = ext > 0 ? static_cast<std::size_t>(std::ceil(ext / step)) + 1 : 1;
                h[d] = n[d] > 1 ? ext / static_cast<double>(n[d] - 1) : 0.0;
                total *= n[d];
            }
            if (total <= max_nodes) break;
            step *= 2;
        }
    }
    std::size_t size() const { return n[0] * n[1]; }
    Point at(std::size_t i) const {
        return {region.lo[0] + static_cast<double>(i % n[0]) * h[0],
                region.lo[1] + static_cast<double>(i / n[0]) * h[1]};
    }
    double half_cell_diagonal() const { return 0.5 * std::hypot(h[0], h[1]); }
};

// Max over region of the distance to the nearest indexed point.
double sampled_max_distance(const SortedPointIndex& index, const SampleGrid& grid) {
    std::vector<double> partial(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) partial[i] = index.nearest_distance(grid.at(i));
    });
    return *std::max_element(partial.begin(), partial.end());
}

// Exact sup over [a, b] of the distance to the nearest point of a sorted 1D list.
double exact_max_distance_1d(std::span<const Point> pts, double a, double b) {
    auto nearest = [&](double x) {
        auto it = std::lower_bound(pts.begin(), pts.end(), x, [](const Point& q, double v) { return q[0] < v; });
        double best = kInf;
        if (it != pts.end()) best = std::min(best, (*it)[0] - x);
        if (it != pts.begin()) best = std::min(best, x - (*(it - 1))[0]);
        return best;
    };
    double best = std::max(nearest(a), nearest(b));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i][0] + pts[i + 1][0]);
        if (mid >= a && mid <= b) best = std::max(best, 0.5 * (pts[i + 1][0] - pts[i][0]));
    }
    return best;
}

std::vector<std::size_t> interior_anchors(const PointPattern& p, double radius) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.window().contains_ball(p[i], radius, p.dimension())) out.push_back(i);
    }
    return out;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string to_string(RepetitivityStatus s) {
    switch (s) {
        case RepetitivityStatus::repetitive: return "repetitive";
        case RepetitivityStatus::not_repetitive: return "not_repetitive";
        case RepetitivityStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

double min_gap(const PointPattern& p) {
    if (p.size() < 2) throw Error("insufficient points: min_gap needs at least 2 points");
    return min_pairwise_distance(p.points());
}

double grid_step(const PointPattern& p) {
    if (p.size() >= 2) return min_gap(p) / 10.0;
    const double diag = p.window().diagonal(p.dimension());
    return diag > 0 ? diag / 1000.0 : 1e-3;
}

Interval covering_radius(const PointPattern& p) {
    if (p.empty()) throw Error("covering radius of an empty pattern is undefined");
    const int dim = p.dimension();
    double margin = 0.0;
    if (p.size() >= 2) {
        const auto nn = nearest_neighbor_distances(p);
        margin = *std::max_element(nn.begin(), nn.end());
    }
    Box region = p.window().shrunk(margin, dim);
    if (region.is_empty(dim)) region = p.window();

    if (dim == 1) {
        const double v = exact_max_distance_1d(p.points(), region.lo[0], region.hi[0]);
        return {v, v};
    }
    const SampleGrid grid(region, grid_step(p), dim);
    const double v = sampled_max_distance(p.index(), grid);
    return {v, v + grid.half_cell_diagonal()};
}

Patch r_patch(const PointPattern& p, std::size_t anchor_index, double radius) {
    if (anchor_index >= p.size()) throw Error("anchor index out of range");
    if (!(radius >= 0.0)) throw Error("patch radius must be non-negative");
    const Point& x = p[anchor_index];
    if (!p.window().contains_ball(x, radius, p.dimension())) {
        throw Error("anchor too close to boundary: B(x, R) leaves the observation window");
    }
    Patch patch{radius, {}};
    for (std::size_t j : p.index().within(x, radius)) patch.relative_points.push_back(p[j] - x);
    return patch;
}

PatchCensus patch_census(const PointPattern& p, double radius) {
    if (!(radius >= 0.0)) throw Error("census radius must be non-negative");
    const auto anchors = interior_anchors(p, radius);
    if (anchors.empty()) throw Error("no interior anchors: window too small for radius");

    // Neighbour lists as (offset, count) into `flat`. In dimension 1 a ball is a contiguous
    // index range of the sorted points, so `flat` is left empty and offsets index points directly.
    const bool contiguous = p.dimension() == 1;
    std::vector<std::size_t> flat;
    std::vector<std::pair<std::size_t, std::size_t>> span_of(anchors.size());
    for (std::size_t a = 0; a < anchors.size(); ++a) {
        const Point& x = p[anchors[a]];
        if (contiguous) {
            const auto [first, last] = p.index().x_range(x[0] - radius - kEqTol, x[0] + radius + kEqTol);
            span_of[a] = {first, last - first};
        } else {
            const auto nb = p.index().within(x, radius);
            span_of[a] = {flat.size(), nb.size()};
            flat.insert(flat.end(), nb.begin(), nb.end());
        }
    }
    auto neighbor = [&](std::size_t a, std::size_t i) {
        return contiguous ? span_of[a].first + i : flat[span_of[a].first + i];
    };
    auto compare = [&](std::size_t a, std::size_t b) {
        if (span_of[a].second != span_of[b].second) return span_of[a].second < span_of[b].second ? -1 : 1;
        const Point& xa = p[anchors[a]];
        const Point& xb = p[anchors[b]];
        for (std::size_t i = 0; i < span_of[a].second; ++i) {
            const int c = compare_points(p[neighbor(a, i)] - xa, p[neighbor(b, i)] - xb);
            if (c != 0) return c;
        }
        return 0;
    };

    std::vector<std::size_t> order(anchors.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(a, b) < 0; });

    PatchCensus census;
    census.radius = radius;
    census.class_of.assign(p.size(), -1);
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && compare(order[i], order[j]) == 0) ++j;
        PatchClass cls;
        for (std::size_t t = i; t < j; ++t) cls.members.push_back(anchors[order[t]]);
        std::sort(cls.members.begin(), cls.members.end());
        census.classes.push_back(std::move(cls));
        i = j;
    }
    std::sort(census.classes.begin(), census.classes.end(),
              [](const PatchClass& a, const PatchClass& b) { return a.members.front() < b.members.front(); });
    for (std::size_t c = 0; c < census.classes.size(); ++c) {
        auto& cls = census.classes[c];
        cls.representative = r_patch(p, cls.members.front(), radius);
        for (std::size_t m : cls.members) census.class_of[m] = static_cast<long>(c);
    }
    return census;
}

RepetitivityResult repetitivity_radius(const PointPattern& p, double radius) {
    const PatchCensus census = patch_census(p, radius);
    const int dim = p.dimension();
    const Box region = p.window().shrunk(radius, dim);

    RepetitivityResult result;
    result.class_count = census.class_count();
    for (const auto& c : census.classes) {
        if (c.members.size() == 1) ++result.singleton_classes;
    }

    // Return distance of one class: smallest M such that every ball of diameter M inside the
    // anchor region contains a member.
    auto class_return_1d = [&](const PatchClass& c) {
        double m = std::max(p[c.members.front()][0] - region.lo[0], region.hi[0] - p[c.members.back()][0]);
        for (std::size_t i = 0; i + 1 < c.members.size(); ++i) {
            m = std::max(m, p[c.members[i + 1]][0] - p[c.members[i]][0]);
        }
        return m;
    };

    Interval all{0.0, 0.0};
    Interval others{0.0, 0.0};
    bool have_others = false;
    const double step = grid_step(p);
    if (dim == 1) {
        for (const auto& c : census.classes) {
            const double m = class_return_1d(c);
            all.lower = all.upper = std::max(all.upper, m);
            if (c.members.size() > 1) {
                others.lower = others.upper = std::max(others.upper, m);
                have_others = true;
            }
        }
    } else {
        std::vector<SortedPointIndex> member_index;
        for (const auto& c : census.classes) {
            std::vector<Point> pts;
            for (std::size_t m : c.members) pts.push_back(p[m]);
            member_index.emplace_back(std::move(pts));
        }
        auto bracket = [&](bool skip_singletons) {
            // Every sampled centre c of a ball of radius M/2 inside the region must see each class
            // within M/2. The predicate is monotone in M, so bisect.
            auto ok = [&](double m) {
                const Box centres = region.shrunk(m / 2, dim);
                if (centres.is_empty(dim)) return true;
                const SampleGrid grid(centres, step, dim, 250'000);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const Point c = grid.at(i);
                    for (std::size_t k = 0; k < member_index.size(); ++k) {
                        if (skip_singletons && census.classes[k].members.size() == 1) continue;
                        if (member_index[k].nearest_distance(c) > m / 2) return false;
                    }
                }
                return true;
            };
            double lo = 0.0;
            double hi = region.diagonal(dim);
            while (hi - lo > step) {
                const double mid = 0.5 * (lo + hi);
                (ok(mid) ? hi : lo) = mid;
            }
            return Interval{lo, hi + std::sqrt(2.0) * step};
        };
        all = bracket(false);
        for (const auto& c : census.classes) have_others = have_others || c.members.size() > 1;
        if (have_others) others = bracket(true);
    }

    double span = kInf;
    for (int d = 0; d < dim; ++d) span = std::min(span, region.extent(d));

    if (result.singleton_classes == 0) {
        if (all.upper < span) {
            result.status = RepetitivityStatus::repetitive;
            result.return_distance = all;
        } else {
            result.status = RepetitivityStatus::inconclusive;
            result.return_distance = {all.lower, kInf};
            result.note = "return distance reaches the window size; enlarge the window";
        }
    } else if (have_others && span >= 2 * others.upper) {
        result.status = RepetitivityStatus::not_repetitive;
        result.return_distance = {all.lower, kInf};
        result.note = "not repetitive at this window: " + std::to_string(result.singleton_classes) +
                      " patch class(es) occur once although the window spans two return distances of the others";
    } else {
        result.status = RepetitivityStatus::inconclusive;
        result.return_distance = {all.lower, kInf};
        result.note = "singleton patch classes in a window too small to judge repetitivity";
    }
    return result;
}

DifferenceSet difference_set(const PointPattern& p, double cutoff) {
    if (!(cutoff > 0.0)) throw Error("difference set cutoff must be positive");
    if (p.empty()) throw Error("difference set of an empty pattern");
    const auto pts = p.points();
    DifferenceSet out;
    out.cutoff = cutoff;
    out.source_window = p.window();
    std::vector<Point>& v = out.vectors;
    v.push_back({0.0, 0.0});
    std::size_t compact_at = 1 << 20;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size() && pts[j][0] - pts[i][0] <= cutoff + kEqTol; ++j) {
            const Point d = pts[j] - pts[i];
            if (norm(d) <= cutoff + kEqTol) {
                v.push_back(d);
                v.push_back({-d[0], -d[1]});
            }
        }
        if (v.size() >= compact_at) {
            canonicalize(v);
            compact_at = std::max(compact_at, 2 * v.size());
        }
    }
    canonicalize(v);
    return out;
}

MeyerVerdict meyer_check(const PointPattern& p, double cutoff) {
    if (!(cutoff > 0.0)) throw Error("meyer_check cutoff must be positive");
    MeyerVerdict out;
    const int dim = p.dimension();
    for (const Box& w : centered_ladder(p.window(), dim, 4, 2.0)) {
        const PointPattern sub = p.restricted(w);
        MeyerLadderStep step{w, sub.size(), kInf};
        if (sub.size() >= 4) step.delta_min_gap = min_pairwise_distance(difference_set(sub, cutoff).vectors);
        out.ladder.push_back(step);
    }
    if (out.ladder.front().points < 4) {
        out.verdict = Verdict::inconclusive;
        out.note = "sample too small: the smallest ladder window holds fewer than 4 points";
        return out;
    }
    out.delta_min_gap = out.ladder.back().delta_min_gap;
    out.relatively_dense_gap = covering_radius(p).upper;

    std::vector<double> gaps;
    for (const auto& s : out.ladder) gaps.push_back(s.delta_min_gap);
    if (!std::isfinite(gaps.front())) {
        out.verdict = Verdict::inconclusive;
        out.note = "no difference vectors within the cutoff on the smallest window";
        return out;
    }
    const bool below_floor = std::any_of(gaps.begin(), gaps.end(), [](double g) { return g <= kMeyerFloor; });
    bool decaying = gaps.back() < gaps.front() / 4;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) decaying = decaying && gaps[i + 1] < gaps[i] - kEqTol;
    const bool stable = std::abs(gaps[gaps.size() - 1] - gaps[gaps.size() - 2]) <= kEqTol;
    double smallest_extent = kInf;
    for (int d = 0; d < dim; ++d) smallest_extent = std::min(smallest_extent, out.ladder.front().window.extent(d));
    const bool dense = out.relatively_dense_gap < smallest_extent / 2;

    if (below_floor) {
        out.verdict = Verdict::fail;
        out.note = "difference set not uniformly discrete: gap fell below the floor";
    } else if (decaying) {
        out.verdict = Verdict::fail;
        out.note = "difference set gap decays along the window ladder";
    } else if (stable && dense) {
        out.verdict = Verdict::pass;
    } else {
        out.verdict = Verdict::inconclusive;
        out.note = stable ? "covering radius too large for the ladder windows" : "difference set gap not yet stable";
    }
    return out;
}

EpsilonDualResult epsilon_dual(const PointPattern& p, double epsilon, const GridSpec& k_grid) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) throw Error("epsilon must lie in (0, 2)");
    k_grid.validate();
    if (k_grid.size() == 0) throw Error("empty k grid");
    if (p.empty()) throw Error("epsilon dual of an empty pattern");
    const auto pts = p.points();
    const std::size_t n = k_grid.size();
    std::vector<double> deviation(n, kInf);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const Point k = k_grid.at(i);
            double worst = 0.0;
            for (const Point& x : pts) {
                const double dev = 2.0 * std::abs(std::sin(M_PI * phase_fraction(k, x)));
                worst = std::max(worst, dev);
                if (worst > epsilon) break;
            }
            deviation[i] = worst;
        }
    });

    EpsilonDualResult out;
    out.grid_size = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (deviation[i] <= epsilon) out.accepted.push_back({k_grid.at(i), deviation[i]});
    }
    out.max_gap = kInf;
    if (out.accepted.size() >= 2) {
        if (k_grid.dimension == 1) {
            out.max_gap = 0.0;
            for (std::size_t i = 0; i + 1 < out.accepted.size(); ++i) {
                out.max_gap = std::max(out.max_gap, out.accepted[i + 1].k[0] - out.accepted[i].k[0]);
            }
        } else {
            std::vector<Point> acc;
            for (const auto& a : out.accepted) acc.push_back(a.k);
            std::sort(acc.begin(), acc.end());
            const SortedPointIndex index(std::move(acc));
            out.max_gap = 0.0;
            for (std::size_t i = 0; i < n; ++i) out.max_gap = std::max(out.max_gap, index.nearest_distance(k_grid.at(i)));
        }
    }
    return out;
}

}  // namespace apd
