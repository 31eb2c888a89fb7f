#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "apd/analysis.hpp"
#include "apd/point_pattern.hpp"

namespace apd {

/// Wave vector in inverse length units; plane waves are e^{2πi k·x}.
struct WaveVector {
    Point k{0.0, 0.0};
};

struct SpectralParams {
    double theta_bragg = 0.01;   // intensity a Bragg candidate keeps on every ladder window
    double epsilon_pe = 0.05;    // final phase spread (radians) for a topological verdict
    double mono_slack = 0.10;    // relative increase tolerated between consecutive radii
    double epsilon_ext = 1e-3;   // intensity at or below which a topological peak is extinct
    int golden_iterations = 40;  // candidate refinement steps within one grid cell
};

enum class PeakVerdict { topological, l2_candidate_only, extinct_topological, none };
std::string to_string(PeakVerdict v);

/// A(k) = (1/N) Σ_x e^{−2πi k·x}.
std::complex<double> diffraction_amplitude(const PointPattern& p, const WaveVector& k);
/// |A(k)|².
double bragg_intensity(const PointPattern& p, const WaveVector& k);

struct SpreadStep {
    double radius = 0.0;
    double spread = 0.0;  // radians, in [0, 2π]
};

struct SpectrumEntry {
    WaveVector k;
    double intensity = 0.0;                 // on the largest window
    std::vector<double> ladder_intensities;  // one per ladder window, smallest first
    std::vector<SpreadStep> phase_spread_ladder;
    bool bragg_candidate = false;  // intensity >= theta_bragg on every ladder window
    PeakVerdict verdict = PeakVerdict::none;
};

struct SpectrumReport {
    int dimension = 1;
    std::string label;
    SpectralParams params;
    std::vector<Box> windows;
    std::vector<std::size_t> window_sizes;
    std::vector<double> radii;  // empty until phase spreads are attached
    std::vector<SpectrumEntry> entries;
};

/// Bragg candidates: grid nodes whose intensity stays >= theta_bragg on every ladder window,
/// refined by golden-section search on |A|. Candidates within the resolution 3/L of the largest
/// window (L its extent) of a stronger candidate are absorbed as sinc ripples. k = 0 is always present.
/// `ladder` must be nested, smallest first, with at least three windows.
SpectrumReport bragg_scan(const PointPattern& p, const GridSpec& k_grid, std::span<const Box> ladder,
                          const SpectralParams& params = {});

/// Smallest arc (radians) containing all phases, given as fractions of a full turn.
double circular_diameter(std::vector<double> turns);

/// Max over census classes with >= 2 members of the circular diameter of {2π k·x}.
double phase_spread(const PointPattern& p, const PatchCensus& census, const WaveVector& k);
double phase_spread(const PointPattern& p, const WaveVector& k, double radius);

/// Censuses for a radius ladder, computed once and reused across wave vectors.
class EquivarianceProbe {
  public:
    EquivarianceProbe(const PointPattern& p, std::vector<double> radii);

    std::vector<SpreadStep> ladder(const WaveVector& k) const;
    const std::vector<double>& radii() const { return radii_; }
    const PatchCensus& census(std::size_t i) const { return censuses_[i]; }
    const PointPattern& pattern() const { return pattern_; }

  private:
    PointPattern pattern_;
    std::vector<double> radii_;
    std::vector<PatchCensus> censuses_;
};

struct EigenvalueVerdict {
    bool topological = false;
    bool monotone = false;
    double final_spread = 0.0;
    std::vector<SpreadStep> ladder;
};

/// Decision rule on a computed ladder: non-increasing within `mono_slack` relative increase
/// and final spread <= epsilon.
EigenvalueVerdict judge_spread_ladder(std::vector<SpreadStep> ladder, double epsilon, double mono_slack = 0.10);

/// Pattern-equivariance test of the plane wave f_k on an increasing ladder of >= 3 radii.
EigenvalueVerdict topological_eigenvalue_test(const PointPattern& p, const WaveVector& k,
                                              std::span<const double> radius_ladder, double epsilon,
                                              double mono_slack = 0.10);
EigenvalueVerdict topological_eigenvalue_test(const EquivarianceProbe& probe, const WaveVector& k, double epsilon,
                                              double mono_slack = 0.10);

/// Attaches spread ladders to every entry and assigns final verdicts.
void annotate_topological(SpectrumReport& report, const EquivarianceProbe& probe);

/// Report for explicit wave vectors: intensities on a 4-step centred ladder of the pattern
/// window plus spread ladders and verdicts.
SpectrumReport classify_wave_vectors(const PointPattern& p, std::span<const WaveVector> ks,
                                     std::span<const double> radii, const SpectralParams& params = {});

/// (k_j · x mod 1)_j in [0, 1).
std::vector<double> torus_coordinates(const PointPattern& p, std::span<const WaveVector> basis, const Point& x);

struct CollisionReport {
    double radius = 0.0;
    double tol = 0.0;
    std::size_t anchors = 0;  // anchors examined after subsampling
    std::size_t stride = 1;
    std::size_t close_pairs = 0;
    std::size_t colliding_pairs = 0;
    double fraction = 0.0;
    bool inconclusive = false;
    std::string note;
};

/// Pairs of interior anchors whose torus coordinates agree within `tol` (max-norm on the
/// circle) and the share of those pairs with different R-patches. Large pair counts are
/// subsampled with a deterministic anchor stride.
CollisionReport fiber_collision_sample(const PointPattern& p, std::span<const WaveVector> basis, double radius, double tol);
CollisionReport fiber_collision_sample(const PointPattern& p, const PatchCensus& census,
                                       std::span<const WaveVector> basis, double tol);

/// Collision sampling along a radius ladder with tol_R = base_tol · (R_0 / R)².
///
/// Injectivity is a joint limit: at radius R the R-patch partition of the torus has O(R)
/// boundary pieces, so a fixed tolerance would count more boundary straddlers as R grows.
/// Shrinking tol faster than 1/R lets the boundary share vanish when the torus
/// parametrisation is a.e. injective, while genuinely multiple fibers keep colliding.
std::vector<CollisionReport> collision_ladder(const PointPattern& p, std::span<const WaveVector> basis,
                                              std::span<const double> radii, double base_tol);

inline constexpr std::size_t kMinClosePairs = 20;
inline constexpr std::size_t kMaxClosePairs = 4'000'000;

}  // namespace apd
