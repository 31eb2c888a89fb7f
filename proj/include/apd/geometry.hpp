#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apd {

/// Equality tolerance for coordinates, in length units.
inline constexpr double kEqTol = 1e-9;

/// Coordinates in dimension 1 or 2. In dimension 1 the second entry is zero.
using Point = std::array<double, 2>;

/// Raised for every precondition or input failure in the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Axis-aligned observation window.
struct Box {
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};

    bool contains(const Point& p, int dim, double tol = kEqTol) const;
    /// True when the closed ball B(c, r) lies inside the box.
    bool contains_ball(const Point& c, double r, int dim, double tol = kEqTol) const;
    bool contains_box(const Box& other, int dim, double tol = kEqTol) const;
    /// Box shrunk by `margin` on every side; empty when margin exceeds half an extent.
    Box shrunk(double margin, int dim) const;
    bool is_empty(int dim) const;
    double extent(int d) const { return hi[d] - lo[d]; }
    double diagonal(int dim) const;
    Point center() const { return {(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2}; }
    /// Distance from c to the nearest face of the box (c assumed inside).
    double distance_to_boundary(const Point& c, int dim) const;
};

inline double norm(const Point& p) { return std::hypot(p[0], p[1]); }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

/// Three-way lexicographic comparison where coordinates within `tol` count as equal.
int compare_points(const Point& a, const Point& b, double tol = kEqTol);

/// Sorts lexicographically and drops points within `tol` of an earlier kept point.
void canonicalize(std::vector<Point>& points, double tol = kEqTol);

/// Minimum pairwise distance of a canonical (x-sorted) point list; infinity for < 2 points.
double min_pairwise_distance(std::span<const Point> sorted_points);

/// Regular grid of wave vectors (or sample positions): lo + i * step per axis, inclusive of hi.
///
/// When lo is an integer multiple of step the nodes are generated as exact multiples of step,
/// so a grid symmetric about zero contains 0 and is closed under negation bit-for-bit.
struct GridSpec {
    int dimension = 1;
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};
    double step = 0.0;

    std::size_t count(int d) const;
    std::size_t size() const;
    Point at(std::size_t flat_index) const;
    void validate() const;
};

/// Fractional part of k·x in [-1/2, 1/2); the phase of e^{2πi k·x} divided by 2π.
double phase_fraction(const Point& k, const Point& x);

/// Nearest-point and ball queries over an x-sorted point list (sweep on the x coordinate).
class SortedPointIndex {
  public:
    SortedPointIndex() = default;
    explicit SortedPointIndex(std::vector<Point> sorted_points);

    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }

    /// Index of the nearest point; throws on an empty index.
    std::size_t nearest(const Point& q) const;
    double nearest_distance(const Point& q) const;
    /// Indices (ascending) of points with distance <= r + tol from c.
    std::vector<std::size_t> within(const Point& c, double r, double tol = kEqTol) const;
    /// Half-open index range of points with x in [xlo, xhi].
    std::pair<std::size_t, std::size_t> x_range(double xlo, double xhi) const;

  private:
    std::vector<Point> points_;
};

}  // namespace apd
