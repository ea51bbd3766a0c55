#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "safecoal/detector.hpp"
#include "safecoal/error.hpp"
#include "safecoal/families.hpp"
#include "safecoal/regular.hpp"
#include "safecoal/sequences.hpp"

namespace safecoal {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Error in a constraint specification, located at a line and column.
class SpecError : public Error {
  public:
    enum class Kind { lexical, syntax, undeclared_symbol, alphabet_too_small, duplicate_symbol };

    SpecError(Kind kind, SourcePos pos, const std::string& message);

    Kind kind;
    SourcePos pos;
};

/// Regular expression over declared notifications.
struct Regex {
    enum class Kind { symbol, concat, alternation, star, plus, optional };

    Kind kind = Kind::symbol;
    Symbol symbol = 0;
    /// Two or more for concat and alternation, exactly one for the postfix
    /// operators, none for symbols.
    std::vector<Regex> children;
    SourcePos pos;

    static Regex literal(Symbol n, SourcePos pos = {}) { return {Kind::symbol, n, {}, pos}; }
    static Regex node(Kind kind, std::vector<Regex> children, SourcePos pos = {}) {
        return {kind, 0, std::move(children), pos};
    }

    /// Structural equality; source positions are ignored.
    bool operator==(const Regex& other) const;
};

/// Parsed `alphabet ...; violation ...;` specification.
struct ConstraintSpec {
    std::string name;
    Alphabet alphabet;
    Regex pattern;
};

/// Throws SpecError.
ConstraintSpec parse_spec(std::string_view text, std::string name = "spec");

/// Minimal parenthesization; parse_spec(to_string(spec)) reproduces the AST.
std::string to_string(const Regex& r, const Alphabet& alphabet);
std::string to_string(const ConstraintSpec& spec);

/// Position (Glushkov) automaton of the pattern: one state per symbol
/// occurrence plus a start state, no ε-moves.
EilenbergMachine pattern_machine(const Regex& r, const Alphabet& alphabet);

/// Minimal automaton of the whole pattern language L.
Dfa pattern_dfa(const Regex& r, const Alphabet& alphabet);

/// min(L): words of L with no proper prefix in L. Throws EpsilonViolation
/// when ε ∈ L.
RegularPrefixFreeSet prefix_free_kernel(const Regex& r, const Alphabet& alphabet);

/// The automaton for a language, as a machine.
EilenbergMachine dfa_machine(const Dfa& dfa, const Alphabet& alphabet);

/// Minimal detector whose violation language from the start state is the
/// kernel of the pattern.
RootedDetector compile(const ConstraintSpec& spec);

/// True iff the pattern language is not already prefix-free.
bool kernel_changes_language(const ConstraintSpec& spec);

}  // namespace safecoal
