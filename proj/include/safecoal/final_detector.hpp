#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>

#include "safecoal/detector.hpp"
#include "safecoal/regular.hpp"
#include "safecoal/sequences.hpp"

namespace safecoal {

/// Total predicate on words, claimed to decide a prefix-free set.
using DecisionProcedure = std::function<bool(const Word&)>;

/// One step of an enumeration: a word, nothing this step, or the end of a
/// finite enumeration.
struct Emission {
    enum class Kind { word, idle, end };
    Kind kind = Kind::idle;
    Word word;

    static Emission of(Word w) { return {Kind::word, std::move(w)}; }
    static Emission idle() { return {Kind::idle, {}}; }
    static Emission end() { return {Kind::end, {}}; }
};

/// Deterministic, restartable enumeration of a set of words. Every call to
/// start() yields a fresh generator producing the same sequence.
class Enumerator {
  public:
    using Generator = std::function<Emission()>;

    explicit Enumerator(std::function<Generator()> start) : start_(std::move(start)) {}

    /// Emits the given words in order, then signals the end.
    static Enumerator listing(std::vector<Word> words);

    Generator start() const { return start_(); }

  private:
    std::function<Generator()> start_;
};

/// Finite violation set held explicitly.
struct ExplicitSet {
    /// Throws unless `words` is prefix-free and ε-free.
    ExplicitSet(WordSet words, std::size_t alphabet_size);

    WordSet words;
    std::size_t alphabet_size;
};

/// The set {u | consumed·u ∈ P} for a decided P.
struct DecidableSet {
    std::shared_ptr<const DecisionProcedure> decide;
    Word consumed;
    std::size_t alphabet_size;
    bool audit = false;
};

/// The set {u | consumed·u ∈ P} for an enumerated P, with a per-step budget
/// of enumeration steps.
struct EnumerableSet {
    Enumerator enumerator;
    Word consumed;
    std::size_t alphabet_size;
    std::size_t budget;
};

/// A state of the final detector: a prefix-free violation language in one of
/// four representations.
using PrefixFreeSet = std::variant<ExplicitSet, RegularPrefixFreeSet, DecidableSet, EnumerableSet>;

std::size_t alphabet_size(const PrefixFreeSet& set);

enum class StepKind { ok, fault, unknown };

struct FinalStep {
    StepKind kind;
    /// The derivative on ok; on unknown, the derivative assuming no fault.
    std::optional<PrefixFreeSet> next;
    /// Enumeration steps spent (enumerated sets only).
    std::size_t work = 0;
};

/// The transition of the final detector: fault when the one-letter word n is
/// a member, otherwise move to n⁻¹·P.
///
/// Enumerated sets run one membership search per prefix of consumed·n in
/// round-robin against fresh enumerations until a search halts or the budget
/// is spent. A hit on the whole word faults; a hit on a proper prefix, or the
/// end of the enumeration, rules membership out. Decidable sets in audit mode
/// throw NotPrefixFree when they observe a member with a member prefix or a
/// member one-symbol extension.
FinalStep final_step(const PrefixFreeSet& set, Symbol n);

struct HandleStep;

/// Value-semantic stepping interface over any detector state: a state of a
/// finite detector or a state of the final detector.
class DetectorHandle {
  public:
    DetectorHandle(std::shared_ptr<const FiniteDetector> detector, State x);
    explicit DetectorHandle(PrefixFreeSet set);

    std::size_t alphabet_size() const;
    HandleStep step(Symbol n) const;

  private:
    struct FiniteState {
        std::shared_ptr<const FiniteDetector> detector;
        State state;
    };
    std::variant<FiniteState, PrefixFreeSet> state_;
};

struct HandleStep {
    StepKind kind;
    std::optional<DetectorHandle> next;
    std::size_t work = 0;
};

/// Depth-truncated violation language of a handle. Throws BudgetExhausted
/// if any step is undecided.
WordSet minimal_violation_words(const DetectorHandle& handle, std::size_t depth);

}  // namespace safecoal
