#pragma once

#include <string>
#include <vector>

#include "apd/point_pattern.hpp"

namespace apd {

/// Closed bracket around a quantity that finite samples can only localize.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    double width() const { return upper - lower; }
    bool contains(double v, double slack = 0.0) const { return v >= lower - slack && v <= upper + slack; }
};

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

/// Smallest distance between distinct points. Throws for fewer than two points.
double min_gap(const PointPattern& p);

/// Sampling step used by the grid-bracketed analyzers: min_gap / 10.
double grid_step(const PointPattern& p);

/// Largest empty-ball radius inside the window, bracketed to grid precision.
///
/// The window is shrunk by the largest nearest-neighbour distance of the pattern before
/// sampling, so holes that only exist because the pattern continues outside the window are
/// not counted. A single point gets no margin. Dimension 1 is evaluated exactly.
Interval covering_radius(const PointPattern& p);

/// B(0, R) ∩ (Λ − x) for x = p[anchor_index]; the ball must lie inside the window.
Patch r_patch(const PointPattern& p, std::size_t anchor_index, double radius);

/// Groups every interior anchor (ball inside the window) by exact R-patch equality.
PatchCensus patch_census(const PointPattern& p, double radius);

enum class RepetitivityStatus { repetitive, not_repetitive, inconclusive };
std::string to_string(RepetitivityStatus s);

struct RepetitivityResult {
    RepetitivityStatus status = RepetitivityStatus::inconclusive;
    /// Return distance M: every ball of diameter M inside the anchor region holds an anchor of
    /// every patch class. Infinite unless status is repetitive.
    Interval return_distance;
    std::size_t class_count = 0;
    std::size_t singleton_classes = 0;
    std::string note;
};

RepetitivityResult repetitivity_radius(const PointPattern& p, double radius);

/// All x − y with |x − y| <= cutoff.
DifferenceSet difference_set(const PointPattern& p, double cutoff);

struct MeyerLadderStep {
    Box window;
    std::size_t points = 0;
    double delta_min_gap = 0.0;
};

struct MeyerVerdict {
    double delta_min_gap = 0.0;         // on the full window
    double relatively_dense_gap = 0.0;  // covering radius upper bound
    Verdict verdict = Verdict::inconclusive;
    std::vector<MeyerLadderStep> ladder;
    std::string note;
};

/// Meyer property on a 4-step window ladder (ratio 2).
MeyerVerdict meyer_check(const PointPattern& p, double cutoff);

/// Uniform-discreteness floor for the difference set used by meyer_check.
inline constexpr double kMeyerFloor = kEqTol * 1e3;

struct DualEntry {
    Point k{0.0, 0.0};
    double max_deviation = 0.0;
};

struct EpsilonDualResult {
    std::vector<DualEntry> accepted;  // grid order
    /// Largest gap between accepted wave vectors (dimension 2: farthest grid node from an
    /// accepted one). Infinite when fewer than two are accepted.
    double max_gap = 0.0;
    std::size_t grid_size = 0;
};

/// Wave vectors k on a grid with max_x |e^{2πi k·x} − 1| <= epsilon.
EpsilonDualResult epsilon_dual(const PointPattern& p, double epsilon, const GridSpec& k_grid);

}  // namespace apd
