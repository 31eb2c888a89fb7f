#include <algorithm>
#include <cmath>
#include <sstream>

#include "apd/pattern_io.hpp"
#include "apd/spectral_io.hpp"

namespace apd {

namespace {

nlohmann::json wave_json(const WaveVector& k, int dim) {
    return dim == 1 ? nlohmann::json::array({k.k[0]}) : nlohmann::json::array({k.k[0], k.k[1]});
}

nlohmann::json ladder_json(const std::vector<SpreadStep>& ladder) {
    auto out = nlohmann::json::array();
    for (const auto& s : ladder) out.push_back({{"radius", s.radius}, {"spread", s.spread}});
    return out;
}

const char* verdict_colour(PeakVerdict v) {
    switch (v) {
        case PeakVerdict::topological: return "#1f77b4";
        case PeakVerdict::extinct_topological: return "#2ca02c";
        case PeakVerdict::l2_candidate_only: return "#d62728";
        case PeakVerdict::none: return "#7f7f7f";
    }
    return "#7f7f7f";
}

}  // namespace

nlohmann::json spectrum_to_json(const SpectrumReport& r) {
    nlohmann::json j;
    j["label"] = r.label;
    j["dimension"] = r.dimension;
    j["params"] = {{"theta_bragg", r.params.theta_bragg},
                   {"epsilon_pe", r.params.epsilon_pe},
                   {"mono_slack", r.params.mono_slack},
                   {"epsilon_ext", r.params.epsilon_ext},
                   {"golden_iterations", r.params.golden_iterations}};
    auto stats = nlohmann::json::array();
    for (std::size_t i = 0; i < r.windows.size(); ++i) {
        const Box& w = r.windows[i];
        stats.push_back({{"lo", wave_json({w.lo}, r.dimension)},
                         {"hi", wave_json({w.hi}, r.dimension)},
                         {"points", r.window_sizes[i]}});
    }
    j["window_stats"] = stats;
    j["radii"] = r.radii;
    auto entries = nlohmann::json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"k", wave_json(e.k, r.dimension)},
                           {"intensity", e.intensity},
                           {"ladder_intensities", e.ladder_intensities},
                           {"bragg_candidate", e.bragg_candidate},
                           {"phase_spread_ladder", ladder_json(e.phase_spread_ladder)},
                           {"verdict", to_string(e.verdict)}});
    }
    j["entries"] = entries;
    return j;
}

std::string spectrum_to_csv(const SpectrumReport& r) {
    std::ostringstream out;
    out << (r.dimension == 1 ? "k" : "k_x,k_y") << ",intensity";
    for (double radius : r.radii) out << ",spread@" << format_double(radius);
    out << ",verdict\n";
    for (const auto& e : r.entries) {
        out << format_double(e.k.k[0]);
        if (r.dimension == 2) out << ',' << format_double(e.k.k[1]);
        out << ',' << format_double(e.intensity);
        for (std::size_t i = 0; i < r.radii.size(); ++i) {
            out << ',';
            if (i < e.phase_spread_ladder.size()) out << format_double(e.phase_spread_ladder[i].spread);
        }
        out << ',' << to_string(e.verdict) << '\n';
    }
    return out.str();
}

std::string spectrum_to_svg(const SpectrumReport& r) {
    constexpr double width = 800, height = 400, margin = 40;
    double kmin = 0.0, kmax = 1.0;
    if (!r.entries.empty()) {
        kmin = kmax = r.entries.front().k.k[0];
        for (const auto& e : r.entries) {
            kmin = std::min(kmin, e.k.k[0]);
            kmax = std::max(kmax, e.k.k[0]);
        }
    }
    if (kmax - kmin < 1e-12) {
        kmin -= 0.5;
        kmax += 0.5;
    }
    auto xpos = [&](double k) { return margin + (k - kmin) / (kmax - kmin) * (width - 2 * margin); };
    auto ypos = [&](double in) { return height - margin - std::clamp(in, 0.0, 1.0) * (height - 2 * margin); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << height - 10 << "\">k from " << format_double(kmin) << " to "
        << format_double(kmax) << "</text>\n";
    for (const auto& e : r.entries) {
        const double x = xpos(e.k.k[0]);
        out << "<line x1=\"" << x << "\" y1=\"" << height - margin << "\" x2=\"" << x << "\" y2=\"" << ypos(e.intensity)
            << "\" stroke=\"" << verdict_colour(e.verdict) << "\" stroke-width=\"2\"><title>k="
            << format_double(e.k.k[0]) << " I=" << format_double(e.intensity) << ' ' << to_string(e.verdict)
            << "</title></line>\n";
    }
    out << "</svg>\n";
    return out.str();
}

nlohmann::json eigenvalue_to_json(const WaveVector& k, const EigenvalueVerdict& v, double epsilon) {
    return {{"k", {k.k[0], k.k[1]}},
            {"epsilon", epsilon},
            {"monotone", v.monotone},
            {"final_spread", v.final_spread},
            {"verdict", v.topological ? "topological" : "not_topological"},
            {"phase_spread_ladder", ladder_json(v.ladder)}};
}

nlohmann::json collision_to_json(const CollisionReport& r) {
    nlohmann::json j = {{"radius", r.radius},
                        {"tol", r.tol},
                        {"anchors", r.anchors},
                        {"stride", r.stride},
                        {"close_pairs", r.close_pairs},
                        {"colliding_pairs", r.colliding_pairs},
                        {"fraction", r.fraction},
                        {"inconclusive", r.inconclusive}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string collisions_to_csv(const std::vector<CollisionReport>& rs) {
    std::ostringstream out;
    out << "radius,tol,anchors,stride,close_pairs,colliding_pairs,fraction,inconclusive\n";
    for (const auto& r : rs) {
        out << format_double(r.radius) << ',' << format_double(r.tol) << ',' << r.anchors << ',' << r.stride << ','
            << r.close_pairs << ',' << r.colliding_pairs << ',' << format_double(r.fraction) << ','
            << (r.inconclusive ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace apd
