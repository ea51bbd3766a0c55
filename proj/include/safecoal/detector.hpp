#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safecoal/coalgebra.hpp"
#include "safecoal/regular.hpp"
#include "safecoal/sequences.hpp"

namespace safecoal {

/// Explicit-state detector: on every (state, symbol) it either faults or
/// moves to a successor state.
class FiniteDetector {
  public:
    /// `table[x * alphabet.size() + n]` is the step of x on n. State names
    /// default to s0, s1, ...
    FiniteDetector(Alphabet alphabet, std::vector<Next> table, std::vector<std::string> names = {});

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return names_.size(); }
    Next step(State x, Symbol n) const { return table_[x * alphabet_.size() + n]; }
    bool faults(State x, Symbol n) const { return step(x, n).is_fault(); }
    const std::vector<Next>& table() const { return table_; }
    const std::string& name(State x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const FiniteDetector&) const = default;

  private:
    Alphabet alphabet_;
    std::vector<Next> table_;
    std::vector<std::string> names_;
};

/// A detector together with a designated start state.
struct RootedDetector {
    FiniteDetector detector;
    State initial;
};

/// a⁺(x, u) for nonempty u: the detector run on u, faulting as soon as any
/// step faults. Throws std::invalid_argument on the empty word.
Next extend(const FiniteDetector& a, State x, const Word& u);

/// Words of length ≤ depth whose run from x faults exactly at the last
/// symbol: the depth-truncation of the violation language ⟨a⟩(x).
WordSet minimal_violation_words(const FiniteDetector& a, State x, std::size_t depth);

/// Exact violation language ⟨a⟩(x) as an automaton: the states reachable from
/// x, plus an accepting fault state and a rejecting sink behind it.
RegularPrefixFreeSet anamorphism_regular(const FiniteDetector& a, State x);

/// f is a detector morphism from a to b: fault profiles agree along f and
/// non-fault successors commute with f.
bool check_detector_morphism(std::span<const State> f, const FiniteDetector& a, const FiniteDetector& b);

/// Trie-shaped detector whose states are the distinct iterated derivatives of
/// a finite violation set, including the never-faulting ∅ when reachable.
/// The start state accepts exactly `words` as violation language.
RootedDetector detector_from_explicit_set(const Alphabet& alphabet, const WordSet& words);

/// Text table: `states: ...`, `alphabet: ...`, then `x: a->y b->FAULT ...`
/// for each state.
std::string write_detector(const FiniteDetector& a);
FiniteDetector read_detector(std::string_view text);

}  // namespace safecoal
