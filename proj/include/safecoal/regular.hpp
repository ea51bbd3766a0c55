#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "safecoal/sequences.hpp"
#include "safecoal/types.hpp"

namespace safecoal {

/// Complete deterministic automaton over symbols 0..alphabet_size-1.
class Dfa {
  public:
    /// `delta[x * alphabet_size + n]` is the successor of x on n.
    Dfa(std::size_t alphabet_size, std::vector<State> delta, std::vector<bool> accepting, State initial);

    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t size() const { return accepting_.size(); }
    State initial() const { return initial_; }
    State next(State x, Symbol n) const { return delta_[x * alphabet_size_ + n]; }
    bool accepting(State x) const { return accepting_[x]; }

    State run(State from, const Word& w) const;
    bool accepts(const Word& w) const { return accepting(run(initial_, w)); }

    Dfa with_initial(State x) const;

    /// Restriction to the states reachable from the initial state, which
    /// becomes state 0.
    Dfa reachable() const;

    /// Minimal complete automaton for the same language.
    Dfa minimized() const;

    /// Accepted words of length at most `depth`.
    WordSet words_up_to(std::size_t depth) const;

    /// True iff the language is empty.
    bool empty() const;

    /// Kernel min(L): accepted words with no accepted proper prefix.
    /// Obtained by sending every transition out of an accepting state to a
    /// rejecting sink.
    Dfa prefix_kernel() const;

    /// Shortest pair (u, u·v) with v nonempty and both accepted, if any.
    std::optional<std::pair<Word, Word>> prefix_witness() const;

    bool operator==(const Dfa&) const = default;

  private:
    std::size_t alphabet_size_;
    std::vector<State> delta_;
    std::vector<bool> accepting_;
    State initial_;
};

/// Shortest word (shortlex-first among shortest) accepted by exactly one of
/// the automata; nullopt when the languages coincide.
std::optional<Word> shortest_difference(const Dfa& a, const Dfa& b);

inline bool equivalent(const Dfa& a, const Dfa& b) { return !shortest_difference(a, b).has_value(); }

/// Prefix-free, ε-free regular language given by a complete automaton.
///
/// This is the exact finite representation of a violation language ⟨a⟩(x)
/// of a finite detector.
class RegularPrefixFreeSet {
  public:
    /// Throws EpsilonViolation or NotPrefixFree if the language is not a
    /// valid violation language.
    explicit RegularPrefixFreeSet(Dfa dfa);

    const Dfa& dfa() const { return dfa_; }
    bool contains(const Word& w) const { return dfa_.accepts(w); }
    WordSet words_up_to(std::size_t depth) const { return dfa_.words_up_to(depth); }

    /// Language equality.
    bool same_language(const RegularPrefixFreeSet& other) const { return equivalent(dfa_, other.dfa_); }

  private:
    Dfa dfa_;
};

}  // namespace safecoal
