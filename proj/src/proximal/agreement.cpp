#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "apd/parallel.hpp"
#include "apd/pattern_io.hpp"
#include "apd/proximal.hpp"

namespace apd {

std::string to_string(ProximalVerdict v) {
    switch (v) {
        case ProximalVerdict::proximal_evidence: return "proximal_evidence";
        case ProximalVerdict::distal_evidence: return "distal_evidence";
        case ProximalVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

// Distance from c to the nearest point present in exactly one of the two ball queries, or
// infinity when the lists match. Both lists are in the canonical lexicographic order.
double first_mismatch(const PointPattern& a, const std::vector<std::size_t>& ia, const PointPattern& b,
                      const std::vector<std::size_t>& ib, const Point& c) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t i = 0, j = 0;
    while (i < ia.size() || j < ib.size()) {
        if (i == ia.size()) {
            best = std::min(best, distance(b[ib[j++]], c));
        } else if (j == ib.size()) {
            best = std::min(best, distance(a[ia[i++]], c));
        } else {
            const int cmp = compare_points(a[ia[i]], b[ib[j]]);
            if (cmp == 0) {
                ++i;
                ++j;
            } else if (cmp < 0) {
                best = std::min(best, distance(a[ia[i++]], c));
            } else {
                best = std::min(best, distance(b[ib[j++]], c));
            }
        }
    }
    return best;
}

}  // namespace

AgreementRadius agreement_radius(const PointPattern& a, const PointPattern& b, const Point& center) {
    if (a.dimension() != b.dimension()) throw Error("patterns have different dimensions");
    const int dim = a.dimension();
    if (!a.window().contains(center, dim, 0.0) || !b.window().contains(center, dim, 0.0)) {
        throw Error("agreement centre lies outside a pattern window");
    }
    AgreementRadius r;
    r.cap = std::min(a.window().distance_to_boundary(center, dim), b.window().distance_to_boundary(center, dim));

    // Grow the ball until it contains a disagreement or reaches the cap. Every point closer than
    // the query radius is in both lists, so the nearest mismatch found is exact.
    double query = std::max(r.cap / 1048576.0, kEqTol);
    while (true) {
        const double q = std::min(query, r.cap);
        const double d = first_mismatch(a, a.index().within(center, q), b, b.index().within(center, q), center);
        if (d <= q + kEqTol) {
            r.radius = std::min(d, r.cap);
            r.capped = false;
            return r;
        }
        if (q >= r.cap) break;
        query *= 2;
    }
    r.radius = r.cap;
    r.capped = true;
    return r;
}

ProximalityReport proximality_probe(const PointPattern& a, const PointPattern& b, const std::vector<Point>& shift_schedule) {
    if (shift_schedule.empty()) throw Error("shift schedule is empty");
    ProximalityReport r;
    r.pattern_a = a.label();
    r.pattern_b = b.label();
    std::vector<AgreementRadius> radii(shift_schedule.size());
    parallel_for(shift_schedule.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) radii[i] = agreement_radius(a, b, shift_schedule[i]);
    });

    const double steps = static_cast<double>(shift_schedule.size());
    double best = 0.0;
    double largest = 0.0;
    bool growing = true;
    for (std::size_t i = 0; i < shift_schedule.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const AgreementRadius& ar = radii[i];
        r.agreement_radii.push_back({shift_schedule[i], ar});
        r.steps_completed = i + 1;
        best = std::max(best, ar.radius);
        largest = std::max(largest, ar.radius);
        if (ar.capped && ar.cap <= k) {
            r.verdict = ProximalVerdict::inconclusive;
            r.note = "window exhausted at step " + std::to_string(i + 1);
            return r;
        }
        growing = growing && best > k;
    }
    if (growing) {
        r.verdict = ProximalVerdict::proximal_evidence;
    } else if (largest <= steps / 2) {
        r.verdict = ProximalVerdict::distal_evidence;
        r.note = "agreement radii bounded by " + format_double(largest);
    } else {
        r.verdict = ProximalVerdict::inconclusive;
        r.note = "agreement radii neither grow with the schedule nor stay bounded";
    }
    return r;
}

nlohmann::json proximality_to_json(const ProximalityReport& r) {
    auto table = nlohmann::json::array();
    for (const auto& s : r.agreement_radii) {
        table.push_back({{"center", {s.center[0], s.center[1]}},
                         {"radius", s.agreement.radius},
                         {"cap", s.agreement.cap},
                         {"capped", s.agreement.capped}});
    }
    nlohmann::json j = {{"pair", nlohmann::json::array({r.pattern_a, r.pattern_b})},
                        {"verdict", to_string(r.verdict)},
                        {"evidence_grade", "finite window"},
                        {"steps_completed", r.steps_completed},
                        {"agreement_radii", table}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string proximality_to_csv(const ProximalityReport& r) {
    std::ostringstream out;
    out << "step,center_x,center_y,radius,cap,capped\n";
    for (std::size_t i = 0; i < r.agreement_radii.size(); ++i) {
        const auto& s = r.agreement_radii[i];
        out << i + 1 << ',' << format_double(s.center[0]) << ',' << format_double(s.center[1]) << ','
            << format_double(s.agreement.radius) << ',' << format_double(s.agreement.cap) << ','
            << (s.agreement.capped ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace apd
