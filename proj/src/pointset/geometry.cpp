#include "apd/geometry.hpp"

#include <algorithm>
#include <limits>

namespace apd {

bool Box::contains(const Point& p, int dim, double tol) const {
    for (int d = 0; d < dim; ++d) {
        if (p[d] < lo[d] - tol || p[d] > hi[d] + tol) return false;
    }
    return true;
}

bool Box::contains_ball(const Point& c, double r, int dim, double tol) const {
    for (int d = 0; d < dim; ++d) {
        if (c[d] - r < lo[d] - tol || c[d] + r > hi[d] + tol) return false;
    }
    return true;
}

bool Box::contains_box(const Box& other, int dim, double tol) const {
    return contains(other.lo, dim, tol) && contains(other.hi, dim, tol);
}

Box Box::shrunk(double margin, int dim) const {
    Box b = *this;
    for (int d = 0; d < dim; ++d) {
        b.lo[d] += margin;
        b.hi[d] -= margin;
    }
    return b;
}

bool Box::is_empty(int dim) const {
    for (int d = 0; d < dim; ++d) {
        if (hi[d] < lo[d]) return true;
    }
    return false;
}

double Box::diagonal(int dim) const {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += extent(d) * extent(d);
    return std::sqrt(s);
}

double Box::distance_to_boundary(const Point& c, int dim) const {
    double best = std::numeric_limits<double>::infinity();
    for (int d = 0; d < dim; ++d) {
        best = std::min({best, c[d] - lo[d], hi[d] - c[d]});
    }
    return best;
}

int compare_points(const Point& a, const Point& b, double tol) {
    for (int d = 0; d < 2; ++d) {
        if (a[d] < b[d] - tol) return -1;
        if (a[d] > b[d] + tol) return 1;
    }
    return 0;
}

void canonicalize(std::vector<Point>& points, double tol) {
    std::sort(points.begin(), points.end());
    std::vector<Point> kept;
    kept.reserve(points.size());
    for (const Point& p : points) {
        bool duplicate = false;
        for (auto it = kept.rbegin(); it != kept.rend() && (*it)[0] >= p[0] - tol; ++it) {
            if (std::abs((*it)[0] - p[0]) <= tol && std::abs((*it)[1] - p[1]) <= tol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.push_back(p);
    }
    points = std::move(kept);
}

double min_pairwise_distance(std::span<const Point> pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[j][0] - pts[i][0] >= best) break;
            best = std::min(best, distance(pts[i], pts[j]));
        }
    }
    return best;
}

SortedPointIndex::SortedPointIndex(std::vector<Point> sorted_points) : points_(std::move(sorted_points)) {}

std::pair<std::size_t, std::size_t> SortedPointIndex::x_range(double xlo, double xhi) const {
    auto first = std::lower_bound(points_.begin(), points_.end(), xlo,
                                  [](const Point& p, double v) { return p[0] < v; });
    auto last = std::upper_bound(first, points_.end(), xhi,
                                 [](double v, const Point& p) { return v < p[0]; });
    return {static_cast<std::size_t>(first - points_.begin()), static_cast<std::size_t>(last - points_.begin())};
}

std::size_t SortedPointIndex::nearest(const Point& q) const {
    if (points_.empty()) throw Error("nearest-point query on an empty point set");
    const auto start = x_range(q[0], q[0]).first;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    // Sweep right then left; stop once the x offset alone exceeds the best distance.
    for (std::size_t i = start; i < points_.size(); ++i) {
        if (points_[i][0] - q[0] > best) break;
        const double d = distance(points_[i], q);
        if (d < best) {
            best = d;
            best_index = i;
        }
    }
    for (std::size_t i = start; i-- > 0;) {
        if (q[0] - points_[i][0] > best) break;
        const double d = distance(points_[i], q);
        if (d < best) {
            best = d;
            best_index = i;
        }
    }
    return best_index;
}

double SortedPointIndex::nearest_distance(const Point& q) const { return distance(points_[nearest(q)], q); }

std::vector<std::size_t> SortedPointIndex::within(const Point& c, double r, double tol) const {
    std::vector<std::size_t> out;
    const auto [first, last] = x_range(c[0] - r - tol, c[0] + r + tol);
    for (std::size_t i = first; i < last; ++i) {
        if (distance(points_[i], c) <= r + tol) out.push_back(i);
    }
    return out;
}

void GridSpec::validate() const {
    if (dimension != 1 && dimension != 2) throw Error("grid dimension must be 1 or 2");
    if (!(step > 0.0) || !std::isfinite(step)) throw Error("grid step must be positive");
    for (int d = 0; d < dimension; ++d) {
        if (!std::isfinite(lo[d]) || !std::isfinite(hi[d])) throw Error("grid bounds must be finite");
        if (hi[d] < lo[d]) throw Error("empty grid: upper bound below lower bound");
    }
}

std::size_t GridSpec::count(int d) const {
    if (d >= dimension) return 1;
    return static_cast<std::size_t>(std::floor((hi[d] - lo[d]) / step + 1e-9)) + 1;
}

std::size_t GridSpec::size() const { return count(0) * count(1); }

Point GridSpec::at(std::size_t flat_index) const {
    const std::size_t n0 = count(0);
    const std::size_t idx[2] = {flat_index % n0, flat_index / n0};
    Point k{0.0, 0.0};
    for (int d = 0; d < dimension; ++d) {
        const double base = lo[d] / step;
        const double rounded = std::round(base);
        if (std::abs(base - rounded) < 1e-9) {
            k[d] = (rounded + static_cast<double>(idx[d])) * step;
        } else {
            k[d] = lo[d] + static_cast<double>(idx[d]) * step;
        }
    }
    return k;
}

double phase_fraction(const Point& k, const Point& x) {
    // Reduce each product separately so large coordinates keep their fractional precision.
    double f = 0.0;
    for (int d = 0; d < 2; ++d) {
        const double t = k[d] * x[d];
        f += t - std::round(t);
    }
    f -= std::round(f);
    if (f >= 0.5) f -= 1.0;
    return f;
}

}  // namespace apd
