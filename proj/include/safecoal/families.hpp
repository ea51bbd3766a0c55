#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "safecoal/detector.hpp"
#include "safecoal/final_detector.hpp"
#include "safecoal/regular.hpp"
#include "safecoal/sequences.hpp"

namespace safecoal {

struct Transition {
    State from;
    Symbol symbol;
    State to;

    auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic finite automaton ⟨Q, T, I, F⟩ without ε-moves; several
/// initial states are allowed.
class EilenbergMachine {
  public:
    EilenbergMachine(Alphabet alphabet, std::size_t states, std::set<Transition> transitions,
                     std::set<State> initial, std::set<State> final_states, std::vector<std::string> names = {});

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return names_.size(); }
    const std::set<Transition>& transitions() const { return transitions_; }
    const std::set<State>& initial() const { return initial_; }
    const std::set<State>& final_states() const { return final_; }
    const std::vector<std::string>& names() const { return names_; }

    /// Successor set of `from` on n.
    std::set<State> post(const std::set<State>& from, Symbol n) const;

    bool accepts(const Word& w) const;

    bool operator==(const EilenbergMachine&) const = default;

  private:
    Alphabet alphabet_;
    std::set<Transition> transitions_;
    std::set<State> initial_;
    std::set<State> final_;
    std::vector<std::string> names_;
};

/// Subset construction; the empty subset is the rejecting sink. State i of
/// the automaton is `subsets[i]`.
struct SubsetAutomaton {
    Dfa dfa;
    std::vector<std::set<State>> subsets;
};
SubsetAutomaton determinize(const EilenbergMachine& m);

/// Accepted words of length at most `depth`.
WordSet accepted_words(const EilenbergMachine& m, std::size_t depth);

/// Detector faulting exactly when the subset construction enters an
/// accepting subset. Its states are the reachable non-accepting subsets that
/// can still reach an accepting one, plus one safe sink `{}` for the rest.
///
/// The language must be prefix-free and ε-free; this is decided exactly and a
/// shortest witness is reported through NotPrefixFree or EpsilonViolation.
RootedDetector machine_to_detector(const EilenbergMachine& m);

/// Machine for n⁻¹·L(M): same states and transitions, with the n-successors
/// of the initial states as the new initial states.
EilenbergMachine machine_derivative(const EilenbergMachine& m, Symbol n);

/// Detector for a decided violation set: a step faults iff the word read so
/// far is accepted. With `audit`, each step spot-checks prefix-freeness.
DetectorHandle decidable_detector(const Alphabet& alphabet, DecisionProcedure decide, bool audit);

/// Detector for an enumerated violation set, spending at most `budget`
/// enumeration steps per detector step.
DetectorHandle re_detector(const Alphabet& alphabet, Enumerator enumerator, std::size_t budget);

/// Outcome of the closure check: when not closed, `member` and `symbol`
/// identify a set P and symbol n with n ∉ P and n⁻¹·P missing from the
/// family.
struct FamilyCheck {
    bool closed = true;
    std::size_t member = 0;
    Symbol symbol = 0;
};

/// Every member P and symbol n have n ∈ P or n⁻¹·P in the family.
FamilyCheck check_universal_family(const std::vector<WordSet>& family, std::size_t alphabet_size);

struct UniversalDetector {
    FiniteDetector detector;
    std::map<WordSet, State> state_of;
};

/// One state per distinct member, faulting on membership and stepping by
/// derivative. Throws std::invalid_argument when the family is not closed.
UniversalDetector universal_detector_for(const Alphabet& alphabet, const std::vector<WordSet>& family);

/// `states`, `alphabet`, `initial`, `final` headers, then `q -a-> r` lines.
std::string write_machine(const EilenbergMachine& m);
EilenbergMachine read_machine(std::string_view text);

}  // namespace safecoal
