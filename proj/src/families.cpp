#include "safecoal/families.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "safecoal/error.hpp"
#include "safecoal/text.hpp"

namespace safecoal {

EilenbergMachine::EilenbergMachine(Alphabet alphabet, std::size_t states, std::set<Transition> transitions,
                                   std::set<State> initial, std::set<State> final_states,
                                   std::vector<std::string> names)
    : alphabet_(std::move(alphabet)), transitions_(std::move(transitions)), initial_(std::move(initial)),
      final_(std::move(final_states)), names_(std::move(names)) {
    if (names_.empty())
        for (std::size_t q = 0; q < states; ++q)
            names_.push_back("q" + std::to_string(q));
    if (names_.size() != states)
        throw std::invalid_argument("machine state names do not match the state count");
    for (const auto& t : transitions_)
        if (t.from >= states || t.to >= states || t.symbol >= alphabet_.size())
            throw std::out_of_range("machine transition out of range");
    for (State q : initial_)
        if (q >= states)
            throw std::out_of_range("initial state out of range");
    for (State q : final_)
        if (q >= states)
            throw std::out_of_range("final state out of range");
}

std::set<State> EilenbergMachine::post(const std::set<State>& from, Symbol n) const {
    std::set<State> out;
    for (State q : from)
        for (auto it = transitions_.lower_bound({q, n, 0}); it != transitions_.end() && it->from == q && it->symbol == n;
             ++it)
            out.insert(it->to);
    return out;
}

bool EilenbergMachine::accepts(const Word& w) const {
    std::set<State> cur = initial_;
    for (Symbol n : w)
        cur = post(cur, n);
    return std::any_of(cur.begin(), cur.end(), [&](State q) { return final_.count(q) > 0; });
}

namespace {

bool meets(const std::set<State>& subset, const std::set<State>& final_states) {
    return std::any_of(subset.begin(), subset.end(), [&](State q) { return final_states.count(q) > 0; });
}

}  // namespace

SubsetAutomaton determinize(const EilenbergMachine& m) {
    const std::size_t k = m.alphabet().size();
    std::map<std::set<State>, State> index{{m.initial(), 0}};
    std::vector<std::set<State>> subsets{m.initial()};
    std::vector<State> delta;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (Symbol n = 0; n < k; ++n) {
            std::set<State> next = m.post(subsets[i], n);
            auto [it, fresh] = index.emplace(next, static_cast<State>(subsets.size()));
            if (fresh)
                subsets.push_back(std::move(next));
            delta.push_back(it->second);
        }
    std::vector<bool> accepting;
    for (const auto& s : subsets)
        accepting.push_back(meets(s, m.final_states()));
    return {Dfa(k, std::move(delta), std::move(accepting), 0), std::move(subsets)};
}

WordSet accepted_words(const EilenbergMachine& m, std::size_t depth) {
    return determinize(m).dfa.words_up_to(depth);
}

RootedDetector machine_to_detector(const EilenbergMachine& m) {
    const SubsetAutomaton sa = determinize(m);
    const Dfa& dfa = sa.dfa;
    if (dfa.accepting(dfa.initial()))
        throw EpsilonViolation("machine accepts the empty word");
    if (auto w = dfa.prefix_witness())
        throw NotPrefixFree("machine language is not prefix-free", w->first, w->second);

    const std::size_t k = m.alphabet().size();
    // subsets that can still reach an accepting one; the rest share one sink
    std::vector<bool> live(dfa.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (State y = 0; y < dfa.size(); ++y)
            for (Symbol n = 0; n < k && !live[y]; ++n) {
                const State z = dfa.next(y, n);
                if (dfa.accepting(z) || live[z])
                    live[y] = changed = true;
            }
    }
    // detector states: live non-accepting subsets reachable without passing
    // through an accepting one, plus the sink
    constexpr State kSink = ~State{0} - 1;
    std::vector<State> index(dfa.size(), ~State{0});
    std::vector<State> order;
    State sink = ~State{0};
    auto number = [&](State y) {
        State& slot = live[y] ? index[y] : sink;
        if (slot == ~State{0}) {
            slot = static_cast<State>(order.size());
            order.push_back(live[y] ? y : kSink);
        }
        return slot;
    };
    number(dfa.initial());
    std::vector<Next> table;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol n = 0; n < k; ++n) {
            if (order[i] == kSink) {
                table.push_back(Next::to(static_cast<State>(i)));
                continue;
            }
            const State y = dfa.next(order[i], n);
            table.push_back(dfa.accepting(y) ? Next::fault() : Next::to(number(y)));
        }
    std::vector<std::string> names;
    for (State y : order) {
        std::string name = "{";
        bool first = true;
        if (y != kSink)
            for (State q : sa.subsets[y]) {
                if (!first)
                    name += ',';
                name += m.names()[q];
                first = false;
            }
        names.push_back(name + "}");
    }
    return {FiniteDetector(m.alphabet(), std::move(table), std::move(names)), 0};
}

EilenbergMachine machine_derivative(const EilenbergMachine& m, Symbol n) {
    if (n >= m.alphabet().size())
        throw std::out_of_range("symbol outside the alphabet");
    return EilenbergMachine(m.alphabet(), m.size(), m.transitions(), m.post(m.initial(), n), m.final_states(),
                            m.names());
}

DetectorHandle decidable_detector(const Alphabet& alphabet, DecisionProcedure decide, bool audit) {
    if (!decide)
        throw std::invalid_argument("empty decision procedure");
    return DetectorHandle(PrefixFreeSet(DecidableSet{
        std::make_shared<const DecisionProcedure>(std::move(decide)), {}, alphabet.size(), audit}));
}

DetectorHandle re_detector(const Alphabet& alphabet, Enumerator enumerator, std::size_t budget) {
    if (budget == 0)
        throw std::invalid_argument("budget must be at least 1");
    return DetectorHandle(PrefixFreeSet(EnumerableSet{std::move(enumerator), {}, alphabet.size(), budget}));
}

FamilyCheck check_universal_family(const std::vector<WordSet>& family, std::size_t alphabet_size) {
    std::set<WordSet> members(family.begin(), family.end());
    for (std::size_t i = 0; i < family.size(); ++i) {
        require_violation_set(family[i]);
        for (Symbol n = 0; n < alphabet_size; ++n) {
            if (family[i].count(Word{n}))
                continue;
            if (!members.count(derivative_set(n, family[i])))
                return {false, i, n};
        }
    }
    return {};
}

UniversalDetector universal_detector_for(const Alphabet& alphabet, const std::vector<WordSet>& family) {
    const FamilyCheck check = check_universal_family(family, alphabet.size());
    if (!check.closed)
        throw std::invalid_argument("family is not closed under derivatives");
    std::map<WordSet, State> state_of;
    std::vector<const WordSet*> order;
    for (const WordSet& p : family)
        if (state_of.emplace(p, static_cast<State>(order.size())).second)
            order.push_back(&p);
    std::vector<Next> table;
    for (const WordSet* p : order)
        for (Symbol n = 0; n < alphabet.size(); ++n)
            table.push_back(p->count(Word{n}) ? Next::fault() : Next::to(state_of.at(derivative_set(n, *p))));
    return {FiniteDetector(alphabet, std::move(table)), std::move(state_of)};
}

std::string write_machine(const EilenbergMachine& m) {
    std::ostringstream out;
    auto list = [&](const char* key, const auto& states) {
        out << key << ':';
        for (State q : states)
            out << ' ' << m.names()[q];
        out << '\n';
    };
    out << "states:";
    for (const auto& name : m.names())
        out << ' ' << name;
    out << "\nalphabet:";
    for (const auto& sym : m.alphabet().symbols())
        out << ' ' << sym;
    out << '\n';
    list("initial", m.initial());
    list("final", m.final_states());
    for (const auto& t : m.transitions())
        out << m.names()[t.from] << " -" << m.alphabet()[t.symbol] << "-> " << m.names()[t.to] << '\n';
    return out.str();
}

EilenbergMachine read_machine(std::string_view source) {
    auto fail = [](std::size_t line, const std::string& msg) {
        return std::invalid_argument("machine, line " + std::to_string(line) + ": " + msg);
    };
    const auto lines = text::content_lines(source);
    std::optional<std::vector<std::string>> names;
    std::optional<Alphabet> alphabet;
    std::optional<std::vector<std::string>> initial_names;
    std::optional<std::vector<std::string>> final_names;
    std::vector<std::pair<std::size_t, std::string_view>> transition_lines;
    for (const auto& [number, content] : lines) {
        std::string_view rest;
        if (content.find("->") != std::string_view::npos)
            transition_lines.emplace_back(number, content);
        else if (text::header(content, "states", rest))
            names = text::split_ws(rest);
        else if (text::header(content, "alphabet", rest))
            alphabet.emplace(text::split_ws(rest));
        else if (text::header(content, "initial", rest))
            initial_names = text::split_ws(rest);
        else if (text::header(content, "final", rest))
            final_names = text::split_ws(rest);
        else
            throw fail(number, "unrecognized line");
    }
    if (!names || !alphabet || !initial_names || !final_names)
        throw std::invalid_argument("machine needs 'states', 'alphabet', 'initial' and 'final' headers");

    auto state_index = [&](const std::string& name, std::size_t line) -> State {
        auto it = std::find(names->begin(), names->end(), name);
        if (it == names->end())
            throw fail(line, "unknown state '" + name + "'");
        return static_cast<State>(it - names->begin());
    };
    std::set<State> initial, final_states;
    for (const auto& q : *initial_names)
        initial.insert(state_index(q, 0));
    for (const auto& q : *final_names)
        final_states.insert(state_index(q, 0));

    std::set<Transition> transitions;
    for (const auto& [number, content] : transition_lines) {
        // q -a-> r
        const auto parts = text::split_ws(content);
        if (parts.size() != 3 || parts[1].size() < 4 || parts[1].front() != '-' ||
            parts[1].substr(parts[1].size() - 2) != "->")
            throw fail(number, "expected 'q -symbol-> r'");
        const std::string symbol = parts[1].substr(1, parts[1].size() - 3);
        const auto n = alphabet->find(symbol);
        if (!n)
            throw fail(number, "unknown symbol '" + symbol + "'");
        transitions.insert({state_index(parts[0], number), *n, state_index(parts[2], number)});
    }
    const std::size_t count = names->size();
    return EilenbergMachine(std::move(*alphabet), count, std::move(transitions), std::move(initial),
                            std::move(final_states), std::move(*names));
}

}  // namespace safecoal
