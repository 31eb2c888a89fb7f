// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "apd/cli.hpp"
#include "apd/presets.hpp"
#include "apd/spectral.hpp"
#include "oracle_suite.hpp"

using namespace apd;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> info;  // printed under the verdict line, not part of it
};

PointPattern tm_ones(int iterations) {
    const auto tm = thue_morse();
    return realize(tm, substitute(tm, "0", iterations), 0.0, std::set<Symbol>{'1'});
}

WaveVector wv(double k) { return {{k, 0.0}}; }

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

nlohmann::json cli_json(std::vector<std::string> args, int& code) {
    std::vector<const char*> argv{"apd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return code == 2 || code == 0 ? nlohmann::json::parse(out.str()) : nlohmann::json{};
}

Outcome expansion() {
    const std::string expected = "0110100110010110100101100110100110010110011010010110100110010110";
    const auto w = substitute(thue_morse(), "0", 3);
    return {w == expected, w == expected ? "64-letter word matches" : "got " + w};
}

Outcome thue_morse_meyer() {
    const auto v = meyer_check(tm_ones(10), 8.0);
    bool ok = v.verdict == Verdict::pass && v.ladder.size() == 4 && v.delta_min_gap == 1.0;
    std::string gaps;
    for (const auto& s : v.ladder) {
        ok = ok && s.delta_min_gap == 1.0;
        gaps += (gaps.empty() ? "" : ",") + fmt(s.delta_min_gap);
    }
    return {ok, "verdict " + to_string(v.verdict) + ", ladder delta_min_gap " + gaps};
}

Outcome coincidence() {
    int c1 = 0, c2 = 0;
    const auto tm = cli_json({"cr", "--preset", "thue_morse"}, c1).value("result", nlohmann::json::object());
    const auto pd = cli_json({"cr", "--preset", "period_doubling"}, c2).value("result", nlohmann::json::object());
    const bool ok = c1 == 0 && c2 == 0 && tm.value("cr_estimate", 0) == 2 && tm.value("certified", false) &&
                    pd.value("cr_estimate", 0) == 1 && pd.value("certified", false);
    return {ok, "thue_morse cr=" + std::to_string(tm.value("cr_estimate", 0)) + (tm.value("certified", false) ? " certified" : "") +
                    ", period_doubling cr=" + std::to_string(pd.value("cr_estimate", 0)) +
                    (pd.value("certified", false) ? " certified" : "")};
}

Outcome extinct_peak() {
    const auto p = tm_ones(8);  // 4^8 letters
    const std::vector<WaveVector> ks{wv(0.5), wv(0.25), wv(1.0 / 3)};
    const std::vector<double> radii{2, 8, 32, 128};
    const auto r = classify_wave_vectors(p, ks, radii);
    bool ok = r.entries.size() == 3;
    std::string detail;
    for (const auto& e : r.entries) {
        const double k = e.k.k[0];
        const double final = e.phase_spread_ladder.back().spread;
        double plateau = INFINITY;
        for (const auto& s : e.phase_spread_ladder) plateau = std::min(plateau, s.spread);
        if (k == 0.5) {
            ok = ok && e.verdict == PeakVerdict::extinct_topological && final <= 0.05 && e.intensity <= 1e-3;
        } else if (k == 0.25) {
            ok = ok && (e.verdict == PeakVerdict::topological || e.verdict == PeakVerdict::extinct_topological) && final <= 0.05;
        } else {
            ok = ok && e.verdict != PeakVerdict::topological && e.verdict != PeakVerdict::extinct_topological && plateau >= 0.5;
        }
        detail += (detail.empty() ? "" : "; ") + std::string("k=") + fmt(k) + " " + to_string(e.verdict) + " final " + fmt(final) +
                  " I=" + fmt(e.intensity, 2);
    }
    return {ok, detail};
}

Outcome fibonacci_duality() {
    const Box window{{0, 0}, {723, 0}};
    const auto cp = cut_project(fibonacci_cut_project(), window.lo[0], window.hi[0]);
    const auto fs = fibonacci_substitution();
    const auto sub = realize(fs, substitute(fs, "a", 16), 0.0).restricted(window);

    const auto cc = patch_census(cp, 5.0);
    const auto cs = patch_census(sub, 5.0);
    bool same_census = cc.class_count() == cs.class_count() && cc.class_of == cs.class_of;
    for (const auto& a : cc.classes) {
        same_census = same_census && std::any_of(cs.classes.begin(), cs.classes.end(), [&](const PatchClass& b) {
                          return a.representative.equals(b.representative) && a.members == b.members;
                      });
    }
    const bool meyer = meyer_check(cp, 10.0).verdict == Verdict::pass && meyer_check(sub, 10.0).verdict == Verdict::pass;

    const auto ladder = centered_ladder(cp.window(), 1);
    const auto scan = bragg_scan(cp, GridSpec{1, {0, 0}, {3, 0}, 1e-3}, ladder);
    const auto& es = scan.entries;
    const double tol = 2e-3;
    std::size_t pairs = 0, misses = 0;
    double strongest_missing = 0.0;  // max over unmatched sums of the min intensity over ladder windows
    std::string example;
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i; j < es.size(); ++j) {
            const double sum = es[i].k.k[0] + es[j].k.k[0];
            if (sum > 3.0 - tol) continue;
            ++pairs;
            const bool hit = std::any_of(es.begin(), es.end(), [&](const SpectrumEntry& e) { return std::abs(e.k.k[0] - sum) <= tol; });
            if (hit) continue;
            ++misses;
            double weakest = INFINITY;
            for (const Box& w : ladder) weakest = std::min(weakest, bragg_intensity(cp.restricted(w), wv(sum)));
            strongest_missing = std::max(strongest_missing, weakest);
            if (example.empty()) example = fmt(es[i].k.k[0], 6) + "+" + fmt(es[j].k.k[0], 6);
        }
    }
    const bool closed = misses == 0;

    Outcome o;
    o.pass = same_census && meyer && closed;
    o.detail = "censuses " + std::string(same_census ? "identical" : "differ") + " (" + std::to_string(cc.class_count()) +
               " classes, " + std::to_string(cp.size()) + "/" + std::to_string(sub.size()) + " points), meyer " +
               (meyer ? "pass" : "fail") + ", closure " + std::to_string(pairs - misses) + "/" + std::to_string(pairs) +
               " sums within 2e-3 of a candidate (" + std::to_string(es.size()) + " candidates)";
    if (!closed) {
        const double theta = scan.params.theta_bragg;
        o.info.push_back("first unmatched sum " + example + "; largest ladder-minimum intensity at an unmatched sum " +
                         fmt(strongest_missing, 3) + " vs theta_bragg " + fmt(theta) +
                         (strongest_missing < theta ? ": every missing sum is a peak too weak to stay a candidate on all windows"
                                                    : ": some missing sum stays above threshold"));
    }
    return o;
}

Outcome torus_trichotomy() {
    const std::vector<double> radii{2, 4, 8, 16};
    const double tol = 0.02;
    const double W = 20000;

    auto fractions = [&](const PointPattern& p, const std::vector<WaveVector>& basis, bool& conclusive) {
        std::vector<double> out;
        for (const auto& r : collision_ladder(p, basis, radii, tol)) {
            conclusive = conclusive && !r.inconclusive;
            out.push_back(r.fraction);
        }
        return out;
    };
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) s += (s.empty() ? "" : ",") + fmt(x, 3);
        return s;
    };

    bool conclusive = true;
    const auto z = fractions(lattice(1, {1.0, 0.0}, Box{{0, 0}, {W, 0}}), {wv(1.0)}, conclusive);
    const auto f = fractions(cut_project(fibonacci_cut_project(), 0, W),
                             {wv(1.0 / std::sqrt(5.0)), wv((kTau - 1) / std::sqrt(5.0))}, conclusive);
    const auto t = fractions(tm_ones(7), {wv(0.5), wv(0.25), wv(0.125)}, conclusive);

    bool ok = conclusive;
    for (double x : z) ok = ok && x == 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) ok = ok && f[i] < f[i - 1];
    const double decay = f.front() > 0 ? 1.0 - f.back() / f.front() : 0.0;
    ok = ok && decay >= 0.30;
    for (double x : t) ok = ok && x >= 0.05;
    return {ok, "Z " + list(z) + "; Fibonacci " + list(f) + " (decay " + fmt(100 * decay, 3) + "%); Thue-Morse " + list(t)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 20; ++i) {
        const auto s = oracle::random_sample(i);
        if (s.pattern.size() > 200) return {false, "case " + std::to_string(i) + " has more than 200 points"};
        const auto diff = oracle::compare_sample(s, rng);
        if (!diff.empty()) return {false, "case " + std::to_string(i) + ": " + diff};
    }
    return {true, "20 random patterns: min_gap, difference_set, patch_census, amplitude agree"};
}

Outcome invariants() {
    std::mt19937_64 rng(99);
    const auto f = cut_project(fibonacci_cut_project(), 0, 2000);
    const auto a0 = diffraction_amplitude(f, {});
    bool amp = a0 == std::complex<double>(1.0, 0.0);
    std::uniform_real_distribution<double> uk(-10, 10);
    for (int i = 0; i < 1000; ++i) amp = amp && std::abs(diffraction_amplitude(f, wv(uk(rng)))) <= 1.0 + 1e-12;

    bool symmetric = true;
    for (const auto& p : {tm_ones(6), f, oracle::random_sample(1).pattern}) {
        const auto d = difference_set(p, 6.0).vectors;
        for (const auto& v : d) {
            const Point m{-v[0], -v[1]};
            symmetric = symmetric && std::any_of(d.begin(), d.end(), [&](const Point& w) { return oracle::same(w, m, kEqTol); });
        }
    }

    bool composition = true;
    for (const auto& name : substitution_preset_names()) {
        const auto s = *find_substitution_preset(name);
        for (Symbol a : s.alphabet()) {
            for (int i = 0; i <= 5; ++i) {
                for (int j = 0; i + j <= 5; ++j) {
                    composition = composition && substitute(s, substitute(s, Word(1, a), i), j) == substitute(s, Word(1, a), i + j);
                }
            }
        }
    }

    bool additive = true;
    std::uniform_int_distribution<long> ui(-1000, 1000);
    const auto scheme = fibonacci_cut_project();
    for (int i = 0; i < 100; ++i) {
        const LatticePoint p{ui(rng), ui(rng)}, q{ui(rng), ui(rng)};
        const auto sp = star_map(scheme, p), sq = star_map(scheme, q), ss = star_map(scheme, {p[0] + q[0], p[1] + q[1]});
        additive = additive && std::abs(ss.physical - sp.physical - sq.physical) <= 1e-9 &&
                   std::abs(ss.internal - sp.internal - sq.internal) <= 1e-9;
    }
    auto word = [](bool b) { return b ? "ok" : "FAILED"; };
    return {amp && symmetric && composition && additive,
            std::string("amplitude ") + word(amp) + ", difference-set symmetry " + word(symmetric) + ", composition law " +
                word(composition) + ", star-map additivity " + word(additive)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Thue-Morse expansion", 0.001, expansion},
        {2, "Thue-Morse Meyer property", 1, thue_morse_meyer},
        {3, "coincidence rank", 1, coincidence},
        {4, "topological vs extinct Bragg peak", 30, extinct_peak},
        {5, "Fibonacci dual characterizations", 60, fibonacci_duality},
        {6, "torus parametrisation trichotomy", 120, torus_trichotomy},
        {7, "oracle equivalence", 10, oracle_equivalence},
        {8, "invariant suite", 10, invariants},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what(), {}};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs <= c.budget_s;
        const bool pass = o.pass && in_budget;
        failures += pass ? 0 : 1;
        std::printf("criterion %d %s: %s  %s [%.3f s, budget %g s%s]\n", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                    c.budget_s, in_budget ? "" : ", over budget");
        for (const auto& line : o.info) std::printf("    info: %s\n", line.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
