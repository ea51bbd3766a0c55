#include "safecoal/final_detector.hpp"

#include <stdexcept>

#include "safecoal/error.hpp"

namespace safecoal {

Enumerator Enumerator::listing(std::vector<Word> words) {
    auto shared = std::make_shared<const std::vector<Word>>(std::move(words));
    return Enumerator([shared] {
        return Generator([shared, i = std::size_t{0}]() mutable {
            if (i >= shared->size())
                return Emission::end();
            return Emission::of((*shared)[i++]);
        });
    });
}

ExplicitSet::ExplicitSet(WordSet w, std::size_t k) : words(std::move(w)), alphabet_size(k) {
    require_violation_set(words);
}

std::size_t alphabet_size(const PrefixFreeSet& set) {
    struct {
        std::size_t operator()(const ExplicitSet& s) const { return s.alphabet_size; }
        std::size_t operator()(const RegularPrefixFreeSet& s) const { return s.dfa().alphabet_size(); }
        std::size_t operator()(const DecidableSet& s) const { return s.alphabet_size; }
        std::size_t operator()(const EnumerableSet& s) const { return s.alphabet_size; }
    } visitor;
    return std::visit(visitor, set);
}

namespace {

FinalStep step_explicit(const ExplicitSet& set, Symbol n) {
    if (set.words.count(Word{n}))
        return {StepKind::fault, std::nullopt};
    return {StepKind::ok, ExplicitSet(derivative_set(n, set.words), set.alphabet_size)};
}

FinalStep step_regular(const RegularPrefixFreeSet& set, Symbol n) {
    const Dfa& dfa = set.dfa();
    const State y = dfa.next(dfa.initial(), n);
    if (dfa.accepting(y))
        return {StepKind::fault, std::nullopt};
    return {StepKind::ok, RegularPrefixFreeSet(dfa.with_initial(y))};
}

FinalStep step_decidable(const DecidableSet& set, Symbol n) {
    const DecisionProcedure& decide = *set.decide;
    Word word = concat(set.consumed, Word{n});
    if (set.audit) {
        for (std::size_t k = 1; k < word.size(); ++k) {
            Word prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
            if (decide(prefix))
                throw NotPrefixFree("decision procedure accepts a word and its proper prefix", prefix, word);
        }
    }
    if (decide(word)) {
        if (set.audit)
            for (Symbol m = 0; m < set.alphabet_size; ++m) {
                Word longer = concat(word, Word{m});
                if (decide(longer))
                    throw NotPrefixFree("decision procedure accepts a word and its extension", word, longer);
            }
        return {StepKind::fault, std::nullopt};
    }
    DecidableSet next = set;
    next.consumed = std::move(word);
    return {StepKind::ok, std::move(next)};
}

FinalStep step_enumerable(const EnumerableSet& set, Symbol n) {
    const Word word = concat(set.consumed, Word{n});
    const std::size_t searches = word.size();
    std::vector<Enumerator::Generator> runs;
    runs.reserve(searches);
    for (std::size_t k = 0; k < searches; ++k)
        runs.push_back(set.enumerator.start());
    std::vector<bool> halted(searches, false);
    std::size_t running = searches;
    std::size_t spent = 0;

    EnumerableSet next = set;
    next.consumed = word;
    // search k looks for the prefix of length k + 1
    while (running > 0) {
        for (std::size_t k = 0; k < searches; ++k) {
            if (halted[k])
                continue;
            if (spent == set.budget)
                return {StepKind::unknown, std::move(next), spent};
            Emission e = runs[k]();
            ++spent;
            if (e.kind == Emission::Kind::end) {
                halted[k] = true;
                --running;
                continue;
            }
            if (e.kind == Emission::Kind::idle)
                continue;
            for (Symbol m : e.word)
                if (m >= set.alphabet_size)
                    throw Error("enumerator emitted a word outside the alphabet");
            if (e.word.size() == k + 1 && std::equal(e.word.begin(), e.word.end(), word.begin())) {
                if (k + 1 == searches)
                    return {StepKind::fault, std::nullopt, spent};
                // a proper prefix is a member, so the whole word is not
                return {StepKind::ok, std::move(next), spent};
            }
        }
    }
    return {StepKind::ok, std::move(next), spent};
}

}  // namespace

FinalStep final_step(const PrefixFreeSet& set, Symbol n) {
    if (n >= alphabet_size(set))
        throw std::out_of_range("symbol outside the alphabet");
    struct {
        Symbol n;
        FinalStep operator()(const ExplicitSet& s) const { return step_explicit(s, n); }
        FinalStep operator()(const RegularPrefixFreeSet& s) const { return step_regular(s, n); }
        FinalStep operator()(const DecidableSet& s) const { return step_decidable(s, n); }
        FinalStep operator()(const EnumerableSet& s) const { return step_enumerable(s, n); }
    } visitor{n};
    return std::visit(visitor, set);
}

DetectorHandle::DetectorHandle(std::shared_ptr<const FiniteDetector> detector, State x)
    : state_(FiniteState{std::move(detector), x}) {
    const auto& fs = std::get<FiniteState>(state_);
    if (!fs.detector || x >= fs.detector->size())
        throw std::out_of_range("unknown detector state");
}

DetectorHandle::DetectorHandle(PrefixFreeSet set) : state_(std::move(set)) {}

std::size_t DetectorHandle::alphabet_size() const {
    if (const auto* fs = std::get_if<FiniteState>(&state_))
        return fs->detector->alphabet().size();
    return safecoal::alphabet_size(std::get<PrefixFreeSet>(state_));
}

HandleStep DetectorHandle::step(Symbol n) const {
    if (const auto* fs = std::get_if<FiniteState>(&state_)) {
        if (n >= fs->detector->alphabet().size())
            throw std::out_of_range("symbol outside the alphabet");
        const Next next = fs->detector->step(fs->state, n);
        if (next.is_fault())
            return {StepKind::fault, std::nullopt};
        return {StepKind::ok, DetectorHandle(fs->detector, next.state())};
    }
    FinalStep s = final_step(std::get<PrefixFreeSet>(state_), n);
    HandleStep out{s.kind, std::nullopt, s.work};
    if (s.next)
        out.next = DetectorHandle(std::move(*s.next));
    return out;
}

WordSet minimal_violation_words(const DetectorHandle& handle, std::size_t depth) {
    if (depth == 0)
        throw std::invalid_argument("depth must be at least 1");
    const std::size_t k = handle.alphabet_size();
    WordSet out;
    std::vector<std::pair<DetectorHandle, Word>> live{{handle, {}}};
    for (std::size_t len = 1; len <= depth && !live.empty(); ++len) {
        std::vector<std::pair<DetectorHandle, Word>> next_live;
        for (const auto& [h, w] : live)
            for (Symbol n = 0; n < k; ++n) {
                HandleStep s = h.step(n);
                Word v = concat(w, Word{n});
                if (s.kind == StepKind::unknown)
                    throw BudgetExhausted("undecided step while enumerating violation words");
                if (s.kind == StepKind::fault)
                    out.insert(std::move(v));
                else if (len < depth)
                    next_live.emplace_back(std::move(*s.next), std::move(v));
            }
        live = std::move(next_live);
    }
    return out;
}

}  // namespace safecoal
