#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "safecoal/types.hpp"

namespace safecoal {

/// Ordered set of at least two distinct notification tokens.
///
/// Declaration order fixes the symbol indices and therefore every iteration
/// order in the library.
class Alphabet {
  public:
    explicit Alphabet(std::vector<std::string> symbols);

    /// The alphabet {a, b, c, ...} with `n` single-letter symbols.
    static Alphabet letters(std::size_t n);

    std::size_t size() const { return symbols_.size(); }
    const std::string& operator[](Symbol n) const { return symbols_[n]; }
    const std::vector<std::string>& symbols() const { return symbols_; }

    std::optional<Symbol> find(std::string_view token) const;
    /// Like find() but throws std::invalid_argument for unknown tokens.
    Symbol at(std::string_view token) const;

    bool operator==(const Alphabet&) const = default;

  private:
    std::vector<std::string> symbols_;
};

/// Throws AlphabetMismatch unless the two alphabets are identical.
void require_same_alphabet(const Alphabet& a, const Alphabet& b);

/// Eventually periodic stream prefix · period^ω.
class Lasso {
  public:
    /// Throws std::invalid_argument if `period` is empty.
    Lasso(Word prefix, Word period);

    const Word& prefix() const { return prefix_; }
    const Word& period() const { return period_; }

    /// Number of distinct positions before the stream repeats structurally.
    std::size_t cycle_size() const { return prefix_.size() + period_.size(); }

    Symbol at(std::size_t k) const;

    /// Canonical representation: primitive period and shortest prefix.
    /// Two lassos denote the same stream iff their normal forms are equal.
    Lasso normalized() const;

    bool operator==(const Lasso&) const = default;

  private:
    Word prefix_;
    Word period_;
};

/// True iff both lassos denote the same stream.
bool same_stream(const Lasso& s, const Lasso& t);

Word concat(const Word& u, const Word& t);
Lasso concat(const Word& u, const Lasso& t);

/// Suffix starting at position m; empty when m is past the end.
Word slice_from(const Word& s, std::size_t m);
Lasso slice_from(const Lasso& s, std::size_t m);

/// Positions [m, l) that are defined.
Word slice_range(const Word& s, std::size_t m, std::size_t l);
Word slice_range(const Lasso& s, std::size_t m, std::size_t l);

bool is_proper_prefix(const Word& p, const Word& w);

/// Length first, then lexicographic on symbol indices.
struct ShortLex {
    bool operator()(const Word& u, const Word& v) const {
        if (u.size() != v.size())
            return u.size() < v.size();
        return u < v;
    }
};

/// Finite set of words in canonical (shortlex) order.
using WordSet = std::set<Word, ShortLex>;

/// n⁻¹·A = {u | n·u ∈ A}.
WordSet derivative_set(Symbol n, const WordSet& words);

/// No member is a proper prefix of another member.
bool is_prefix_free(const WordSet& words);

/// Throws EpsilonViolation or NotPrefixFree if `words` is not a valid
/// violation set (prefix-free, without ε).
void require_violation_set(const WordSet& words);

/// Disjoint splitting of a prefix-free set by its first symbol.
struct Decomposition {
    /// Symbols n with the one-letter word n in the set.
    std::set<Symbol> immediate;
    /// For every other symbol n, the derivative n⁻¹·P (possibly empty).
    std::map<Symbol, WordSet> residuals;

    bool operator==(const Decomposition&) const = default;
};

/// Throws on sets that contain ε or are not prefix-free.
Decomposition decompose(const WordSet& words, std::size_t alphabet_size);

/// Inverse of decompose(): N ∪ ⋃ n·P_n.
WordSet reassemble(const Decomposition& parts);

/// Whitespace-separated tokens. Unknown tokens throw std::invalid_argument.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// `prefix ; period` with a possibly empty prefix.
Lasso parse_lasso(const Alphabet& alphabet, std::string_view text);

std::string format_word(const Alphabet& alphabet, const Word& word);
std::string format_lasso(const Alphabet& alphabet, const Lasso& lasso);

}  // namespace safecoal
