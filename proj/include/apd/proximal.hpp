#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "apd/point_pattern.hpp"
#include "apd/substitution.hpp"

namespace apd {

inline constexpr int kDefaultPowerMax = 8;
/// Refuses column analyses with more columns than this (L^power).
inline constexpr std::size_t kMaxColumns = std::size_t{1} << 24;
/// Length of the fixed-point prefix used for the height computation.
inline constexpr std::size_t kHeightSampleLength = 100'000;

/// |{σ^power(a)[j] : a in the alphabet}| for every position j < L^power.
std::vector<std::size_t> column_cardinalities(const SubstitutionSystem& s, int power);

struct PowerColumns {
    int power = 0;
    std::vector<std::size_t> cardinalities;
    std::size_t min_cardinality = 0;
    /// Every column is a coincidence (1) or a permutation of the alphabet.
    bool coincident_or_bijective = false;
};

struct ColumnAnalysis {
    std::string system;
    std::size_t length = 0;
    std::vector<PowerColumns> per_power;  // powers 1..power_max
};

ColumnAnalysis column_analysis(const SubstitutionSystem& s, int power_max);

/// Largest divisor of g = gcd{k : u_k = u_0} coprime to L, on a one-sided fixed point u.
std::size_t substitution_height(const SubstitutionSystem& s, std::size_t sample_length = kHeightSampleLength);

struct CoincidenceRank {
    std::string system;
    std::size_t cr_estimate = 0;
    bool certified = false;
    std::size_t height = 1;
    ColumnAnalysis columns;
    std::string note;
};

/// Column-method coincidence rank. Certified when the minimal column cardinality is the same
/// at the last two powers and the system falls under the coincidence/bijective dichotomy;
/// otherwise cr_estimate is only an upper bound.
CoincidenceRank coincidence_rank(const SubstitutionSystem& s, int power_max = kDefaultPowerMax);

struct AgreementRadius {
    double radius = 0.0;
    double cap = 0.0;     // distance from the centre to the nearer window boundary
    bool capped = false;  // no disagreement found before the cap
};

/// Largest r such that a and b coincide (within kEqTol) on the open ball B(center, r), capped
/// by both windows. Disagreements are located by a doubling search around the centre.
AgreementRadius agreement_radius(const PointPattern& a, const PointPattern& b, const Point& center);

enum class ProximalVerdict { proximal_evidence, distal_evidence, inconclusive };
std::string to_string(ProximalVerdict v);

struct AgreementSample {
    Point center{0.0, 0.0};
    AgreementRadius agreement;
};

/// Finite-window evidence only; the verdict names say so.
struct ProximalityReport {
    std::string pattern_a;
    std::string pattern_b;
    std::vector<AgreementSample> agreement_radii;  // schedule order
    ProximalVerdict verdict = ProximalVerdict::inconclusive;
    std::size_t steps_completed = 0;
    std::string note;
};

/// Agreement radii along a shift schedule (steps numbered from 1). proximal_evidence when the
/// best radius seen so far exceeds k at every step k; distal_evidence when every radius stays
/// at most half the schedule length; inconclusive otherwise, or when a window is exhausted.
ProximalityReport proximality_probe(const PointPattern& a, const PointPattern& b, const std::vector<Point>& shift_schedule);

nlohmann::json coincidence_to_json(const CoincidenceRank& cr);
nlohmann::json proximality_to_json(const ProximalityReport& r);
std::string proximality_to_csv(const ProximalityReport& r);

}  // namespace apd
