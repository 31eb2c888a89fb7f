#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "apd/geometry.hpp"

namespace apd {

/// Finite sample of a point set in dimension 1 or 2, together with its observation window.
///
/// Construction sorts the points lexicographically and merges points closer than kEqTol,
/// so every stored pattern is uniformly discrete. Points outside the window are rejected.
/// Instances are immutable and safe to share across threads.
class PointPattern {
  public:
    PointPattern(int dimension, std::vector<Point> points, Box window, std::string label = {});

    int dimension() const { return dimension_; }
    std::span<const Point> points() const { return index_->points(); }
    const Point& operator[](std::size_t i) const { return index_->points()[i]; }
    std::size_t size() const { return index_->size(); }
    bool empty() const { return index_->size() == 0; }
    const Box& window() const { return window_; }
    const std::string& label() const { return label_; }
    const SortedPointIndex& index() const { return *index_; }

    /// Points inside `sub` (which must lie inside the window), observed through `sub`.
    PointPattern restricted(const Box& sub) const;
    /// The pattern shifted by `t`, window included.
    PointPattern translated(const Point& t) const;
    PointPattern relabeled(std::string label) const;

  private:
    int dimension_;
    Box window_;
    std::string label_;
    std::shared_ptr<const SortedPointIndex> index_;
};

/// Local configuration B(0, R) ∩ (Λ − x), stored sorted relative to its anchor.
struct Patch {
    double radius = 0.0;
    std::vector<Point> relative_points;

    bool equals(const Patch& other, double tol = kEqTol) const;
};

struct PatchClass {
    Patch representative;
    std::vector<std::size_t> members;  // anchor indices into the pattern, ascending
};

/// Interior anchors of a pattern grouped by exact R-patch equality.
struct PatchCensus {
    double radius = 0.0;
    std::vector<PatchClass> classes;  // ordered by first member
    /// Class id per pattern point; -1 for points whose ball leaves the window.
    std::vector<long> class_of;

    std::size_t class_count() const { return classes.size(); }
    std::size_t anchor_count() const;
};

/// Difference vectors x − y of a pattern, cut off at a maximal norm.
struct DifferenceSet {
    std::vector<Point> vectors;  // canonical: sorted, deduplicated, symmetric, contains 0
    Box source_window;
    double cutoff = 0.0;
};

/// Nested observation windows, smallest first.
std::vector<Box> centered_ladder(const Box& window, int dim, int steps = 4, double ratio = 2.0);
/// Nested windows sharing the lower corner of `window`, smallest first.
std::vector<Box> anchored_ladder(const Box& window, int dim, int steps = 4, double ratio = 2.0);

}  // namespace apd
