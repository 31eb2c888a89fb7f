#include <algorithm>
#include <numeric>

#include "apd/parallel.hpp"
#include "apd/pattern_io.hpp"
#include "apd/proximal.hpp"

namespace apd {

namespace {

std::size_t require_constant_length(const SubstitutionSystem& s) {
    if (!s.constant_length()) throw Error("column analysis requires constant length");
    return *s.constant_length();
}

}  // namespace

std::vector<std::size_t> column_cardinalities(const SubstitutionSystem& s, int power) {
    const std::size_t length = require_constant_length(s);
    if (power < 1) throw Error("power must be at least 1");
    std::size_t columns = 1;
    for (int i = 0; i < power; ++i) {
        if (columns > kMaxColumns / length) throw Error("too many columns: L^power exceeds " + std::to_string(kMaxColumns));
        columns *= length;
    }
    std::vector<Word> images;
    for (Symbol a : s.alphabet()) images.push_back(substitute(s, Word(1, a), power));

    std::vector<std::size_t> out(columns);
    parallel_for(columns, [&](std::size_t begin, std::size_t end) {
        std::vector<Symbol> seen;
        for (std::size_t j = begin; j < end; ++j) {
            seen.clear();
            for (const Word& w : images) seen.push_back(w[j]);
            std::sort(seen.begin(), seen.end());
            out[j] = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
        }
    });
    return out;
}

ColumnAnalysis column_analysis(const SubstitutionSystem& s, int power_max) {
    ColumnAnalysis a;
    a.system = s.name();
    a.length = require_constant_length(s);
    if (power_max < 1) throw Error("power_max must be at least 1");
    const std::size_t alphabet = s.alphabet().size();
    for (int k = 1; k <= power_max; ++k) {
        PowerColumns pc;
        pc.power = k;
        pc.cardinalities = column_cardinalities(s, k);
        pc.min_cardinality = *std::min_element(pc.cardinalities.begin(), pc.cardinalities.end());
        pc.coincident_or_bijective = std::all_of(pc.cardinalities.begin(), pc.cardinalities.end(),
                                                 [&](std::size_t c) { return c == 1 || c == alphabet; });
        a.per_power.push_back(std::move(pc));
    }
    return a;
}

std::size_t substitution_height(const SubstitutionSystem& s, std::size_t sample_length) {
    const std::size_t length = require_constant_length(s);
    // One-sided fixed point of some power: a symbol that begins its own image.
    for (int power = 1; power <= kMaxSeedPower; ++power) {
        for (Symbol a : s.alphabet()) {
            if (substitute(s, Word(1, a), power).front() != a) continue;
            Word u(1, a);
            while (u.size() < sample_length) u = substitute(s, u, power);
            std::size_t g = 0;
            for (std::size_t k = 1; k < u.size(); ++k) {
                if (u[k] == u[0]) g = std::gcd(g, k);
            }
            if (g == 0) return 1;
            std::size_t h = 1;
            for (std::size_t d = 1; d <= g; ++d) {
                if (g % d == 0 && std::gcd(d, length) == 1) h = d;
            }
            return h;
        }
    }
    throw Error("no one-sided fixed point found for the height computation");
}

CoincidenceRank coincidence_rank(const SubstitutionSystem& s, int power_max) {
    require_constant_length(s);
    CoincidenceRank cr;
    cr.system = s.name();
    cr.height = substitution_height(s);
    if (cr.height != 1) throw Error("pure base required (height = " + std::to_string(cr.height) + ")");
    cr.columns = column_analysis(s, power_max);

    const auto& pp = cr.columns.per_power;
    cr.cr_estimate = pp.front().min_cardinality;
    for (const auto& p : pp) cr.cr_estimate = std::min(cr.cr_estimate, p.min_cardinality);
    const bool stable = pp.size() >= 2 && pp[pp.size() - 1].min_cardinality == pp[pp.size() - 2].min_cardinality;
    const bool dichotomy = cr.cr_estimate == 1 ||
                           std::any_of(pp.begin(), pp.end(), [](const PowerColumns& p) { return p.coincident_or_bijective; });
    cr.certified = stable && dichotomy;
    if (!stable) {
        cr.note = "minimal column cardinality not yet stable over two powers; value is an upper bound";
    } else if (!dichotomy) {
        cr.note = "columns are neither coincident nor bijective at any power; value is an upper bound";
    }
    return cr;
}

nlohmann::json coincidence_to_json(const CoincidenceRank& cr) {
    auto per_power = nlohmann::json::array();
    for (const auto& p : cr.columns.per_power) {
        per_power.push_back({{"power", p.power},
                             {"columns", p.cardinalities.size()},
                             {"min_cardinality", p.min_cardinality},
                             {"coincident_or_bijective", p.coincident_or_bijective}});
    }
    nlohmann::json j = {{"system", cr.system},
                        {"cr_estimate", cr.cr_estimate},
                        {"certified", cr.certified},
                        {"height", cr.height},
                        {"per_power", per_power}};
    if (!cr.note.empty()) j["note"] = cr.note;
    return j;
}

}  // namespace apd
