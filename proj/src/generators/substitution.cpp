#include "apd/substitution.hpp"

#include <algorithm>
#include <cmath>

namespace apd {

namespace {

std::string symbol_text(Symbol s) { return std::string(1, s); }

bool all_positive(const std::vector<std::vector<bool>>& m) {
    for (const auto& row : m) {
        for (bool v : row) {
            if (!v) return false;
        }
    }
    return true;
}

std::vector<std::vector<bool>> bool_product(const std::vector<std::vector<bool>>& a,
                                            const std::vector<std::vector<bool>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] = c[i][j] || b[k][j];
        }
    }
    return c;
}

}  // namespace

SubstitutionSystem::SubstitutionSystem(std::string name, std::vector<Symbol> alphabet, std::map<Symbol, Word> rules,
                                       std::map<Symbol, double> tile_lengths)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), rules_(std::move(rules)), lengths_(std::move(tile_lengths)) {
    if (alphabet_.empty()) throw Error("substitution alphabet is empty");
    std::vector<Symbol> sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("alphabet has repeated symbols");
    if (rules_.size() != alphabet_.size()) throw Error("every alphabet symbol needs exactly one rule");
    for (Symbol a : alphabet_) {
        const auto it = rules_.find(a);
        if (it == rules_.end()) throw Error("no rule for symbol '" + symbol_text(a) + "'");
        if (it->second.empty()) throw Error("rule image of '" + symbol_text(a) + "' is empty");
        for (Symbol b : it->second) {
            if (!std::binary_search(sorted.begin(), sorted.end(), b)) {
                throw Error("rule image of '" + symbol_text(a) + "' uses symbol '" + symbol_text(b) + "' outside the alphabet");
            }
        }
        const auto len = lengths_.find(a);
        if (len == lengths_.end() || !(len->second > 0.0) || !std::isfinite(len->second)) {
            throw Error("tile length of '" + symbol_text(a) + "' must be a positive number");
        }
    }
    if (lengths_.size() != alphabet_.size()) throw Error("tile lengths given for symbols outside the alphabet");

    const std::size_t first = rules_.at(alphabet_.front()).size();
    const bool same = std::all_of(rules_.begin(), rules_.end(), [&](const auto& r) { return r.second.size() == first; });
    if (same) constant_length_ = first;

    // Primitive iff some power of the incidence matrix is strictly positive; Wielandt's bound
    // (n-1)^2 + 1 limits the powers to check.
    const std::size_t n = alphabet_.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    const auto counts = incidence_matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = counts[i][j] > 0;
    }
    auto power = m;
    bool primitive = all_positive(power);
    for (std::size_t k = 1; !primitive && k < (n - 1) * (n - 1) + 1; ++k) {
        power = bool_product(power, m);
        primitive = all_positive(power);
    }
    if (!primitive) throw Error("substitution '" + name_ + "' is not primitive");
}

const Word& SubstitutionSystem::image(Symbol s) const {
    const auto it = rules_.find(s);
    if (it == rules_.end()) throw Error("symbol '" + symbol_text(s) + "' is not in the alphabet");
    return it->second;
}

double SubstitutionSystem::tile_length(Symbol s) const {
    const auto it = lengths_.find(s);
    if (it == lengths_.end()) throw Error("symbol '" + symbol_text(s) + "' is not in the alphabet");
    return it->second;
}

std::size_t SubstitutionSystem::symbol_index(Symbol s) const {
    const auto it = std::find(alphabet_.begin(), alphabet_.end(), s);
    if (it == alphabet_.end()) throw Error("symbol '" + symbol_text(s) + "' is not in the alphabet");
    return static_cast<std::size_t>(it - alphabet_.begin());
}

std::vector<std::vector<std::size_t>> SubstitutionSystem::incidence_matrix() const {
    const std::size_t n = alphabet_.size();
    std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (Symbol b : rules_.at(alphabet_[j])) ++m[symbol_index(b)][j];
    }
    return m;
}

Word substitute(const SubstitutionSystem& s, const Word& seed, int iterations) {
    if (iterations < 0) throw Error("iterations must be non-negative");
    if (seed.empty()) throw Error("seed word is empty");
    for (Symbol c : seed) s.image(c);
    Word w = seed;
    for (int i = 0; i < iterations; ++i) {
        std::size_t next_length = 0;
        for (Symbol c : w) next_length += s.image(c).size();
        if (next_length > kMaxWordLength) throw Error("substituted word would exceed the maximum length");
        Word next;
        next.reserve(next_length);
        for (Symbol c : w) next += s.image(c);
        w = std::move(next);
    }
    return w;
}

namespace {

bool selected(const std::optional<std::set<Symbol>>& select, Symbol c) { return !select || select->count(c) != 0; }

// Left endpoints of tiles read left to right, offset by `origin`. Positions are formed from
// exact per-symbol counts, so rounding does not accumulate along the word.
void lay_right(const SubstitutionSystem& s, const Word& word, double origin,
               const std::optional<std::set<Symbol>>& select, std::vector<Point>& out, double& total) {
    const auto& alphabet = s.alphabet();
    std::vector<double> len(alphabet.size());
    for (std::size_t i = 0; i < alphabet.size(); ++i) len[i] = s.tile_length(alphabet[i]);
    std::vector<long long> count(alphabet.size(), 0);
    auto position = [&] {
        double x = 0.0;
        for (std::size_t i = 0; i < count.size(); ++i) x += static_cast<double>(count[i]) * len[i];
        return x;
    };
    for (Symbol c : word) {
        const std::size_t idx = s.symbol_index(c);
        if (selected(select, c)) out.push_back({origin + position(), 0.0});
        ++count[idx];
    }
    total = position();
}

}  // namespace

PointPattern realize(const SubstitutionSystem& s, const Word& word, double origin,
                     const std::optional<std::set<Symbol>>& select) {
    if (word.empty()) throw Error("cannot realize an empty word");
    std::vector<Point> pts;
    double total = 0.0;
    lay_right(s, word, origin, select, pts, total);
    if (pts.empty()) throw Error("empty pattern: no tile carries a selected symbol");
    return PointPattern(1, std::move(pts), Box{{origin, 0.0}, {origin + total, 0.0}}, s.name());
}

PointPattern realize_two_sided(const SubstitutionSystem& s, const Word& left_word, const Word& right_word,
                               const std::optional<std::set<Symbol>>& select) {
    if (left_word.empty() || right_word.empty()) throw Error("cannot realize an empty word");
    std::vector<Point> pts;
    double right_total = 0.0;
    lay_right(s, right_word, 0.0, select, pts, right_total);
    // The left half is the mirror image: walk it backwards and negate right endpoints.
    const Word reversed(left_word.rbegin(), left_word.rend());
    std::vector<Point> mirrored;
    double left_total = 0.0;
    lay_right(s, reversed, 0.0, std::nullopt, mirrored, left_total);
    for (std::size_t i = 0; i < reversed.size(); ++i) {
        if (!selected(select, reversed[i])) continue;
        pts.push_back({-(mirrored[i][0] + s.tile_length(reversed[i])), 0.0});
    }
    if (pts.empty()) throw Error("empty pattern: no tile carries a selected symbol");
    return PointPattern(1, std::move(pts), Box{{-left_total, 0.0}, {right_total, 0.0}}, s.name());
}

std::set<Word> legal_words(const SubstitutionSystem& s, std::size_t length) {
    std::set<Word> out;
    for (Symbol a : s.alphabet()) {
        Word w(1, a);
        while (w.size() < 4096 * length) w = substitute(s, w, 1);
        for (std::size_t i = 0; i + length <= w.size(); ++i) out.insert(w.substr(i, length));
    }
    return out;
}

std::vector<SeedPair> bi_infinite_seed(const SubstitutionSystem& s) {
    const auto legal = legal_words(s, 2);
    std::string lefts_seen;
    std::string rights_seen;
    for (int power = 1; power <= kMaxSeedPower; ++power) {
        std::vector<Symbol> lefts;
        std::vector<Symbol> rights;
        for (Symbol a : s.alphabet()) {
            const Word img = substitute(s, Word(1, a), power);
            if (img.back() == a) lefts.push_back(a);
            if (img.front() == a) rights.push_back(a);
        }
        std::vector<SeedPair> found;
        for (Symbol l : lefts) {
            for (Symbol r : rights) {
                if (legal.count(Word{l, r})) found.push_back({l, r, power});
            }
        }
        if (!found.empty()) {
            std::sort(found.begin(), found.end(),
                      [](const SeedPair& x, const SeedPair& y) { return std::pair(x.left, x.right) < std::pair(y.left, y.right); });
            return found;
        }
        lefts_seen += " p" + std::to_string(power) + ":[" + std::string(lefts.begin(), lefts.end()) + "]";
        rights_seen += " p" + std::to_string(power) + ":[" + std::string(rights.begin(), rights.end()) + "]";
    }
    throw Error("no legal two-sided seed up to power " + std::to_string(kMaxSeedPower) +
                "; left candidates" + lefts_seen + "; right candidates" + rights_seen);
}

std::pair<Word, Word> two_sided_fixed_point(const SubstitutionSystem& s, const SeedPair& seed, std::size_t min_length) {
    Word left(1, seed.left);
    Word right(1, seed.right);
    if (substitute(s, left, seed.power).back() != seed.left || substitute(s, right, seed.power).front() != seed.right) {
        throw Error("seed pair is not fixed by the requested power of the substitution");
    }
    while (left.size() < min_length || right.size() < min_length) {
        left = substitute(s, left, seed.power);
        right = substitute(s, right, seed.power);
    }
    return {left, right};
}

}  // namespace apd
