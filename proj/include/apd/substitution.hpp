#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apd/point_pattern.hpp"

namespace apd {

using Symbol = char;
using Word = std::string;

/// Alphabet, rewrite rules and tile lengths of a primitive substitution.
///
/// The constructor rejects empty or foreign rule images, non-positive tile lengths and
/// non-primitive rule sets.
class SubstitutionSystem {
  public:
    SubstitutionSystem(std::string name, std::vector<Symbol> alphabet, std::map<Symbol, Word> rules,
                       std::map<Symbol, double> tile_lengths);

    const std::string& name() const { return name_; }
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::map<Symbol, Word>& rules() const { return rules_; }
    const std::map<Symbol, double>& tile_lengths() const { return lengths_; }
    const Word& image(Symbol s) const;
    double tile_length(Symbol s) const;
    /// Common image length when every rule image has the same number of symbols.
    std::optional<std::size_t> constant_length() const { return constant_length_; }
    bool contains(Symbol s) const { return rules_.count(s) != 0; }
    std::size_t symbol_index(Symbol s) const;

    /// Incidence matrix: entry [i][j] counts symbol i in the image of symbol j.
    std::vector<std::vector<std::size_t>> incidence_matrix() const;

  private:
    std::string name_;
    std::vector<Symbol> alphabet_;
    std::map<Symbol, Word> rules_;
    std::map<Symbol, double> lengths_;
    std::optional<std::size_t> constant_length_;
};

/// Upper bound on generated word lengths.
inline constexpr std::size_t kMaxWordLength = 100'000'000;

/// Applies the rules `iterations` times to `seed`.
Word substitute(const SubstitutionSystem& s, const Word& seed, int iterations);

/// Lays tiles left to right from `origin` and emits the left endpoint of every tile whose
/// symbol is selected (all symbols when `select` is empty). Window: [origin, origin + length].
PointPattern realize(const SubstitutionSystem& s, const Word& word, double origin = 0.0,
                     const std::optional<std::set<Symbol>>& select = std::nullopt);

/// Realizes left_word ending at 0 and right_word starting at 0.
PointPattern realize_two_sided(const SubstitutionSystem& s, const Word& left_word, const Word& right_word,
                               const std::optional<std::set<Symbol>>& select = std::nullopt);

/// Legal words of the given length: factors of long iterates of every symbol.
std::set<Word> legal_words(const SubstitutionSystem& s, std::size_t length);

/// Seed a|b of a two-sided fixed point of the power-th iterate: the image of `left` ends with
/// `left`, the image of `right` begins with `right`, and "left right" is a legal word.
struct SeedPair {
    Symbol left;
    Symbol right;
    int power;
};

inline constexpr int kMaxSeedPower = 4;

/// All seed pairs at the smallest power (<= 4) where any exists, sorted by (left, right).
std::vector<SeedPair> bi_infinite_seed(const SubstitutionSystem& s);

/// Iterates σ^power on both halves of the seed until each half reaches min_length symbols.
std::pair<Word, Word> two_sided_fixed_point(const SubstitutionSystem& s, const SeedPair& seed, std::size_t min_length);

}  // namespace apd
