#include <algorithm>
#include <cmath>
#include <numbers>

#include "apd/parallel.hpp"
#include "apd/spectral.hpp"

namespace apd {

double circular_diameter(std::vector<double> turns) {
    if (turns.size() < 2) return 0.0;
    for (double& t : turns) {
        t -= std::floor(t);
        if (t >= 1.0) t = 0.0;
    }
    std::sort(turns.begin(), turns.end());
    // The smallest containing arc is the complement of the widest gap between neighbours.
    double widest = turns.front() + 1.0 - turns.back();
    for (std::size_t i = 0; i + 1 < turns.size(); ++i) widest = std::max(widest, turns[i + 1] - turns[i]);
    return 2.0 * std::numbers::pi * std::clamp(1.0 - widest, 0.0, 1.0);
}

double phase_spread(const PointPattern& p, const PatchCensus& census, const WaveVector& k) {
    const Point kk = p.dimension() == 1 ? Point{k.k[0], 0.0} : k.k;
    double spread = 0.0;
    bool any = false;
    std::vector<double> turns;
    for (const auto& cls : census.classes) {
        if (cls.members.size() < 2) continue;
        any = true;
        turns.clear();
        for (std::size_t m : cls.members) turns.push_back(phase_fraction(kk, p[m]));
        spread = std::max(spread, circular_diameter(turns));
    }
    if (!any) throw Error("window too small: no patch class has two members at radius " + std::to_string(census.radius));
    return spread;
}

double phase_spread(const PointPattern& p, const WaveVector& k, double radius) {
    return phase_spread(p, patch_census(p, radius), k);
}

EquivarianceProbe::EquivarianceProbe(const PointPattern& p, std::vector<double> radii)
    : pattern_(p), radii_(std::move(radii)) {
    if (radii_.size() < 3) throw Error("radius ladder needs at least 3 radii");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) throw Error("ladder radii must be positive");
        if (i > 0 && !(radii_[i] > radii_[i - 1])) throw Error("radius ladder must be strictly increasing");
    }
    censuses_.resize(radii_.size());
    for (std::size_t i = 0; i < radii_.size(); ++i) censuses_[i] = patch_census(pattern_, radii_[i]);
}

std::vector<SpreadStep> EquivarianceProbe::ladder(const WaveVector& k) const {
    std::vector<SpreadStep> out;
    for (std::size_t i = 0; i < radii_.size(); ++i) out.push_back({radii_[i], phase_spread(pattern_, censuses_[i], k)});
    return out;
}

EigenvalueVerdict judge_spread_ladder(std::vector<SpreadStep> ladder, double epsilon, double mono_slack) {
    if (ladder.empty()) throw Error("empty spread ladder");
    EigenvalueVerdict v;
    v.monotone = true;
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        // Absolute kEqTol absorbs rounding when both spreads are essentially zero.
        if (ladder[i].spread > ladder[i - 1].spread * (1.0 + mono_slack) + kEqTol) v.monotone = false;
    }
    v.final_spread = ladder.back().spread;
    v.topological = v.monotone && v.final_spread <= epsilon;
    v.ladder = std::move(ladder);
    return v;
}

EigenvalueVerdict topological_eigenvalue_test(const EquivarianceProbe& probe, const WaveVector& k, double epsilon,
                                              double mono_slack) {
    if (!(epsilon >= 0.0)) throw Error("epsilon must be non-negative");
    return judge_spread_ladder(probe.ladder(k), epsilon, mono_slack);
}

EigenvalueVerdict topological_eigenvalue_test(const PointPattern& p, const WaveVector& k,
                                              std::span<const double> radius_ladder, double epsilon,
                                              double mono_slack) {
    const EquivarianceProbe probe(p, {radius_ladder.begin(), radius_ladder.end()});
    return topological_eigenvalue_test(probe, k, epsilon, mono_slack);
}

namespace {

PeakVerdict final_verdict(const SpectrumEntry& e, bool topological, const SpectralParams& params) {
    if (topological) return e.intensity <= params.epsilon_ext ? PeakVerdict::extinct_topological : PeakVerdict::topological;
    return e.bragg_candidate ? PeakVerdict::l2_candidate_only : PeakVerdict::none;
}

}  // namespace

void annotate_topological(SpectrumReport& report, const EquivarianceProbe& probe) {
    report.radii = probe.radii();
    parallel_for(report.entries.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& e = report.entries[i];
            const auto v = judge_spread_ladder(probe.ladder(e.k), report.params.epsilon_pe, report.params.mono_slack);
            e.phase_spread_ladder = v.ladder;
            e.verdict = final_verdict(e, v.topological, report.params);
        }
    });
}

SpectrumReport classify_wave_vectors(const PointPattern& p, std::span<const WaveVector> ks,
                                     std::span<const double> radii, const SpectralParams& params) {
    SpectrumReport report;
    report.dimension = p.dimension();
    report.label = p.label();
    report.params = params;
    std::vector<PointPattern> views;
    for (const Box& w : centered_ladder(p.window(), p.dimension())) {
        views.push_back(p.restricted(w));
        if (views.back().empty()) throw Error("ladder window contains no points");
        report.windows.push_back(w);
        report.window_sizes.push_back(views.back().size());
    }
    for (const auto& k : ks) {
        SpectrumEntry e;
        e.k = k;
        bool stable = true;
        for (const auto& v : views) {
            e.ladder_intensities.push_back(bragg_intensity(v, k));
            stable = stable && e.ladder_intensities.back() >= params.theta_bragg;
        }
        e.intensity = e.ladder_intensities.back();
        e.bragg_candidate = stable;
        report.entries.push_back(std::move(e));
    }
    const EquivarianceProbe probe(p, {radii.begin(), radii.end()});
    annotate_topological(report, probe);
    return report;
}

}  // namespace apd
