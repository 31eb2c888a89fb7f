#include "apd/presets.hpp"

#include <cmath>

namespace apd {

PointPattern lattice(int dimension, const Point& spacings, const Box& window) {
    if (dimension != 1 && dimension != 2) throw Error("lattice dimension must be 1 or 2");
    long first[2] = {0, 0};
    long last[2] = {0, 0};
    for (int d = 0; d < dimension; ++d) {
        if (!(spacings[d] > 0.0) || !std::isfinite(spacings[d])) throw Error("lattice spacings must be positive");
        first[d] = static_cast<long>(std::ceil(window.lo[d] / spacings[d] - kEqTol));
        last[d] = static_cast<long>(std::floor(window.hi[d] / spacings[d] + kEqTol));
        if (last[d] < first[d]) throw Error("window too small to contain a lattice point");
    }
    std::vector<Point> pts;
    for (long i = first[0]; i <= last[0]; ++i) {
        for (long j = first[1]; j <= last[1]; ++j) {
            pts.push_back({static_cast<double>(i) * spacings[0], dimension == 2 ? static_cast<double>(j) * spacings[1] : 0.0});
        }
    }
    return PointPattern(dimension, std::move(pts), window, "lattice");
}

SubstitutionSystem thue_morse() {
    return SubstitutionSystem("thue_morse", {'0', '1'}, {{'0', "0110"}, {'1', "1001"}}, {{'0', 1.0}, {'1', 1.0}});
}

SubstitutionSystem fibonacci_substitution() {
    return SubstitutionSystem("fibonacci_sub", {'a', 'b'}, {{'a', "ab"}, {'b', "a"}}, {{'a', kTau}, {'b', 1.0}});
}

SubstitutionSystem period_doubling() {
    return SubstitutionSystem("period_doubling", {'a', 'b'}, {{'a', "ab"}, {'b', "aa"}}, {{'a', 1.0}, {'b', 1.0}});
}

CutProjectScheme fibonacci_cut_project() {
    LatticeEmbedding e;
    e.basis = {{{1.0, kTau}, {1.0, kTauConjugate}}};
    return CutProjectScheme("fibonacci_cp", e, AcceptanceWindow{-1.0, kTau - 1.0, WindowBoundary::half_open});
}

std::vector<std::string> substitution_preset_names() { return {"thue_morse", "fibonacci_sub", "period_doubling"}; }

std::vector<std::string> scheme_preset_names() { return {"fibonacci_cp"}; }

std::optional<SubstitutionSystem> find_substitution_preset(const std::string& name) {
    if (name == "thue_morse") return thue_morse();
    if (name == "fibonacci_sub") return fibonacci_substitution();
    if (name == "period_doubling") return period_doubling();
    return std::nullopt;
}

std::optional<CutProjectScheme> find_scheme_preset(const std::string& name) {
    if (name == "fibonacci_cp") return fibonacci_cut_project();
    return std::nullopt;
}

namespace {

Symbol symbol_from(const std::string& s) {
    if (s.size() != 1) throw Error("substitution symbols must be single characters, got '" + s + "'");
    return s[0];
}

}  // namespace

SubstitutionSystem substitution_from_json(const nlohmann::json& j, const std::string& name) {
    try {
        std::vector<Symbol> alphabet;
        for (const auto& a : j.at("alphabet")) alphabet.push_back(symbol_from(a.get<std::string>()));
        std::map<Symbol, Word> rules;
        for (const auto& [k, v] : j.at("rules").items()) rules[symbol_from(k)] = v.get<std::string>();
        std::map<Symbol, double> lengths;
        for (const auto& [k, v] : j.at("lengths").items()) lengths[symbol_from(k)] = v.get<double>();
        return SubstitutionSystem(j.value("name", name), std::move(alphabet), std::move(rules), std::move(lengths));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid substitution JSON: ") + e.what());
    }
}

nlohmann::json substitution_to_json(const SubstitutionSystem& s) {
    nlohmann::json j;
    j["name"] = s.name();
    j["alphabet"] = nlohmann::json::array();
    for (Symbol a : s.alphabet()) j["alphabet"].push_back(std::string(1, a));
    for (const auto& [k, v] : s.rules()) j["rules"][std::string(1, k)] = v;
    for (const auto& [k, v] : s.tile_lengths()) j["lengths"][std::string(1, k)] = v;
    return j;
}

CutProjectScheme scheme_from_json(const nlohmann::json& j, const std::string& name) {
    try {
        LatticeEmbedding e;
        const auto& rows = j.at("basis");
        if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) throw Error("basis must be a 2x2 array");
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) e.basis[r][c] = rows[r][c].get<double>();
        }
        const auto& w = j.at("window");
        if (w.size() < 2 || w.size() > 3) throw Error("window must read [lo, hi] or [lo, hi, boundary]");
        AcceptanceWindow window{w[0].get<double>(), w[1].get<double>(), WindowBoundary::half_open};
        if (w.size() == 3) {
            const auto kind = w[2].get<std::string>();
            if (kind == "closed") {
                window.boundary = WindowBoundary::closed;
            } else if (kind != "half-open") {
                throw Error("window boundary must be \"half-open\" or \"closed\", got \"" + kind + "\"");
            }
        }
        return CutProjectScheme(j.value("name", name), e, window);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid cut & project JSON: ") + e.what());
    }
}

nlohmann::json scheme_to_json(const CutProjectScheme& s) {
    const auto& b = s.embedding().basis;
    const auto& w = s.window();
    return {{"name", s.name()},
            {"basis", {{b[0][0], b[0][1]}, {b[1][0], b[1][1]}}},
            {"window", {w.lo, w.hi, w.boundary == WindowBoundary::closed ? "closed" : "half-open"}}};
}

}  // namespace apd
