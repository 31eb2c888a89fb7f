#include "apd/point_pattern.hpp"

#include <algorithm>
#include <cmath>

namespace apd {

PointPattern::PointPattern(int dimension, std::vector<Point> points, Box window, std::string label)
    : dimension_(dimension), window_(window), label_(std::move(label)) {
    if (dimension != 1 && dimension != 2) {
        throw Error("dimension must be 1 or 2, got " + std::to_string(dimension));
    }
    if (dimension == 1) {
        window_.lo[1] = window_.hi[1] = 0.0;
    }
    for (int d = 0; d < dimension; ++d) {
        if (!std::isfinite(window_.lo[d]) || !std::isfinite(window_.hi[d]) || window_.hi[d] < window_.lo[d]) {
            throw Error("window must be a finite, nonempty box");
        }
    }
    for (Point& p : points) {
        if (dimension == 1) p[1] = 0.0;
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw Error("point coordinates must be finite");
        if (!window_.contains(p, dimension)) {
            throw Error("point (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ") lies outside the window");
        }
    }
    canonicalize(points);
    index_ = std::make_shared<const SortedPointIndex>(std::move(points));
}

PointPattern PointPattern::restricted(const Box& sub) const {
    if (!window_.contains_box(sub, dimension_)) throw Error("restriction window exceeds the pattern window");
    std::vector<Point> kept;
    const auto [first, last] = index_->x_range(sub.lo[0] - kEqTol, sub.hi[0] + kEqTol);
    for (std::size_t i = first; i < last; ++i) {
        if (sub.contains((*this)[i], dimension_)) kept.push_back((*this)[i]);
    }
    return PointPattern(dimension_, std::move(kept), sub, label_);
}

PointPattern PointPattern::translated(const Point& t) const {
    std::vector<Point> moved(points().begin(), points().end());
    for (Point& p : moved) p = p + t;
    Box w{window_.lo + t, window_.hi + t};
    return PointPattern(dimension_, std::move(moved), w, label_);
}

PointPattern PointPattern::relabeled(std::string label) const {
    PointPattern copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

bool Patch::equals(const Patch& other, double tol) const {
    if (relative_points.size() != other.relative_points.size()) return false;
    for (std::size_t i = 0; i < relative_points.size(); ++i) {
        if (compare_points(relative_points[i], other.relative_points[i], tol) != 0) return false;
    }
    return true;
}

std::size_t PatchCensus::anchor_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.members.size();
    return n;
}

std::vector<Box> centered_ladder(const Box& window, int dim, int steps, double ratio) {
    if (steps < 1 || ratio <= 1.0) throw Error("ladder needs at least one step and ratio > 1");
    std::vector<Box> out;
    const Point c = window.center();
    for (int s = steps - 1; s >= 0; --s) {
        const double scale = std::pow(ratio, -s);
        Box b = window;
        for (int d = 0; d < dim; ++d) {
            const double half = window.extent(d) * scale / 2;
            b.lo[d] = s == 0 ? window.lo[d] : c[d] - half;
            b.hi[d] = s == 0 ? window.hi[d] : c[d] + half;
        }
        out.push_back(b);
    }
    return out;
}

std::vector<Box> anchored_ladder(const Box& window, int dim, int steps, double ratio) {
    if (steps < 1 || ratio <= 1.0) throw Error("ladder needs at least one step and ratio > 1");
    std::vector<Box> out;
    for (int s = steps - 1; s >= 0; --s) {
        const double scale = std::pow(ratio, -s);
        Box b = window;
        for (int d = 0; d < dim; ++d) {
            b.hi[d] = s == 0 ? window.hi[d] : window.lo[d] + window.extent(d) * scale;
        }
        out.push_back(b);
    }
    return out;
}

}  // namespace apd
