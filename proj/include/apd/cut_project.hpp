#pragma once

#include <array>
#include <string>

#include "apd/point_pattern.hpp"

namespace apd {

/// Golden ratio and its algebraic conjugate.
inline const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;
inline const double kTauConjugate = (1.0 - std::sqrt(5.0)) / 2.0;

/// Lattice in physical ⊕ internal space. Column j of `basis` is the j-th lattice generator;
/// row 0 holds physical coordinates, row 1 internal ones.
struct LatticeEmbedding {
    std::array<std::array<double, 2>, 2> basis{{{1.0, 0.0}, {0.0, 1.0}}};

    double determinant() const { return basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]; }
};

using LatticePoint = std::array<long, 2>;

struct StarImage {
    double physical = 0.0;
    double internal = 0.0;
};

/// Both projections of basis · (m, n).
StarImage star_map(const LatticeEmbedding& e, const LatticePoint& point);

enum class WindowBoundary { half_open, closed };

/// Acceptance window in internal space. Membership near an endpoint is decided with kEqTol:
/// closed windows admit values within kEqTol outside, half-open ones admit the lower endpoint
/// and reject values within kEqTol below the upper endpoint.
struct AcceptanceWindow {
    double lo = 0.0;
    double hi = 0.0;
    WindowBoundary boundary = WindowBoundary::half_open;

    bool contains(double y) const;
    double length() const { return hi - lo; }
};

/// One-dimensional cut & project scheme (physical and internal space both R).
class CutProjectScheme {
  public:
    CutProjectScheme(std::string name, LatticeEmbedding embedding, AcceptanceWindow window);

    const std::string& name() const { return name_; }
    const LatticeEmbedding& embedding() const { return embedding_; }
    const AcceptanceWindow& window() const { return window_; }
    int physical_dim() const { return 1; }
    int internal_dim() const { return 1; }
    /// Interval windows have a null boundary.
    bool regular() const { return true; }

  private:
    std::string name_;
    LatticeEmbedding embedding_;
    AcceptanceWindow window_;
};

StarImage star_map(const CutProjectScheme& scheme, const LatticePoint& point);

/// Physical coordinates of lattice points whose internal coordinate is accepted and whose
/// physical coordinate lies in [phys_lo, phys_hi].
PointPattern cut_project(const CutProjectScheme& scheme, double phys_lo, double phys_hi);

}  // namespace apd
