#include "safecoal/detector.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "safecoal/error.hpp"
#include "safecoal/text.hpp"

namespace safecoal {

namespace {

bool valid_state_name(std::string_view name) {
    if (name.empty() || name == "FAULT")
        return false;
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '#')
            return false;
    return name.find("->") == std::string_view::npos;
}

}  // namespace

FiniteDetector::FiniteDetector(Alphabet alphabet, std::vector<Next> table, std::vector<std::string> names)
    : alphabet_(std::move(alphabet)), table_(std::move(table)), names_(std::move(names)) {
    if (table_.empty() || table_.size() % alphabet_.size() != 0)
        throw std::invalid_argument("detector table size is not a positive multiple of the alphabet size");
    const std::size_t n_states = table_.size() / alphabet_.size();
    if (names_.empty())
        for (std::size_t x = 0; x < n_states; ++x)
            names_.push_back("s" + std::to_string(x));
    if (names_.size() != n_states)
        throw std::invalid_argument("detector has " + std::to_string(n_states) + " states but " +
                                    std::to_string(names_.size()) + " names");
    for (std::size_t x = 0; x < n_states; ++x) {
        if (!valid_state_name(names_[x]))
            throw std::invalid_argument("invalid state name '" + names_[x] + "'");
        for (std::size_t y = 0; y < x; ++y)
            if (names_[x] == names_[y])
                throw std::invalid_argument("duplicate state name '" + names_[x] + "'");
    }
    for (Next n : table_)
        if (!n.is_fault() && n.state() >= n_states)
            throw std::out_of_range("detector transition target out of range");
}

Next extend(const FiniteDetector& a, State x, const Word& u) {
    if (u.empty())
        throw std::invalid_argument("a+ is defined on nonempty words only");
    if (x >= a.size())
        throw std::out_of_range("unknown detector state");
    Next cur = Next::to(x);
    for (Symbol n : u) {
        cur = a.step(cur.state(), n);
        if (cur.is_fault())
            break;
    }
    return cur;
}

WordSet minimal_violation_words(const FiniteDetector& a, State x, std::size_t depth) {
    if (depth == 0)
        throw std::invalid_argument("depth must be at least 1");
    if (x >= a.size())
        throw std::out_of_range("unknown detector state");
    WordSet out;
    std::vector<std::pair<State, Word>> live{{x, {}}};
    for (std::size_t len = 1; len <= depth && !live.empty(); ++len) {
        std::vector<std::pair<State, Word>> next_live;
        for (const auto& [y, w] : live)
            for (Symbol n = 0; n < a.alphabet().size(); ++n) {
                Word v = concat(w, Word{n});
                Next step = a.step(y, n);
                if (step.is_fault())
                    out.insert(std::move(v));
                else if (len < depth)
                    next_live.emplace_back(step.state(), std::move(v));
            }
        live = std::move(next_live);
    }
    return out;
}

RegularPrefixFreeSet anamorphism_regular(const FiniteDetector& a, State x) {
    if (x >= a.size())
        throw std::out_of_range("unknown detector state");
    const std::size_t k = a.alphabet().size();
    std::vector<State> index(a.size(), ~State{0});
    std::vector<State> order{x};
    index[x] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol n = 0; n < k; ++n) {
            Next step = a.step(order[i], n);
            if (!step.is_fault() && index[step.state()] == ~State{0}) {
                index[step.state()] = static_cast<State>(order.size());
                order.push_back(step.state());
            }
        }
    const State fault = static_cast<State>(order.size());
    const State sink = fault + 1;
    std::vector<State> delta;
    std::vector<bool> accepting(order.size(), false);
    for (State y : order)
        for (Symbol n = 0; n < k; ++n) {
            Next step = a.step(y, n);
            delta.push_back(step.is_fault() ? fault : index[step.state()]);
        }
    accepting.push_back(true);
    accepting.push_back(false);
    for (int extra = 0; extra < 2; ++extra)
        for (Symbol n = 0; n < k; ++n)
            delta.push_back(sink);
    return RegularPrefixFreeSet(Dfa(k, std::move(delta), std::move(accepting), 0));
}

bool check_detector_morphism(std::span<const State> f, const FiniteDetector& a, const FiniteDetector& b) {
    if (!(a.alphabet() == b.alphabet()) || f.size() != a.size())
        return false;
    for (State x = 0; x < a.size(); ++x) {
        if (f[x] >= b.size())
            return false;
        for (Symbol n = 0; n < a.alphabet().size(); ++n) {
            const Next ax = a.step(x, n);
            const Next bfx = b.step(f[x], n);
            if (ax.is_fault() != bfx.is_fault())
                return false;
            if (!ax.is_fault() && f[ax.state()] != bfx.state())
                return false;
        }
    }
    return true;
}

RootedDetector detector_from_explicit_set(const Alphabet& alphabet, const WordSet& words) {
    require_violation_set(words);
    for (const Word& w : words)
        for (Symbol n : w)
            if (n >= alphabet.size())
                throw std::out_of_range("word symbol outside the alphabet");
    std::map<WordSet, State> index{{words, 0}};
    std::vector<WordSet> order{words};
    std::vector<Next> table;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol n = 0; n < alphabet.size(); ++n) {
            if (order[i].count(Word{n})) {
                table.push_back(Next::fault());
                continue;
            }
            WordSet d = derivative_set(n, order[i]);
            auto [it, fresh] = index.emplace(d, static_cast<State>(order.size()));
            if (fresh)
                order.push_back(std::move(d));
            table.push_back(Next::to(it->second));
        }
    return {FiniteDetector(alphabet, std::move(table)), 0};
}

std::string write_detector(const FiniteDetector& a) {
    std::ostringstream out;
    out << "states:";
    for (const auto& name : a.names())
        out << ' ' << name;
    out << "\nalphabet:";
    for (const auto& sym : a.alphabet().symbols())
        out << ' ' << sym;
    out << '\n';
    for (State x = 0; x < a.size(); ++x) {
        out << a.name(x) << ':';
        for (Symbol n = 0; n < a.alphabet().size(); ++n) {
            const Next step = a.step(x, n);
            out << ' ' << a.alphabet()[n] << "->" << (step.is_fault() ? std::string("FAULT") : a.name(step.state()));
        }
        out << '\n';
    }
    return out.str();
}

FiniteDetector read_detector(std::string_view source) {
    auto fail = [](std::size_t line, const std::string& msg) -> std::invalid_argument {
        return std::invalid_argument("detector table, line " + std::to_string(line) + ": " + msg);
    };
    const auto lines = text::content_lines(source);
    if (lines.size() < 2)
        throw std::invalid_argument("detector table needs 'states' and 'alphabet' headers");
    std::string_view rest;
    if (!text::header(lines[0].content, "states", rest))
        throw fail(lines[0].number, "expected 'states:' header");
    std::vector<std::string> names = text::split_ws(rest);
    if (!text::header(lines[1].content, "alphabet", rest))
        throw fail(lines[1].number, "expected 'alphabet:' header");
    Alphabet alphabet(text::split_ws(rest));
    const std::size_t k = alphabet.size();

    auto state_index = [&](const std::string& name, std::size_t line) -> State {
        for (State x = 0; x < names.size(); ++x)
            if (names[x] == name)
                return x;
        throw fail(line, "unknown state '" + name + "'");
    };

    std::vector<std::optional<Next>> table(names.size() * k);
    std::vector<bool> defined(names.size(), false);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& [number, content] = lines[i];
        const auto colon = content.find(':');
        if (colon == std::string_view::npos)
            throw fail(number, "expected 'state: symbol->target ...'");
        const State x = state_index(std::string(text::trim(content.substr(0, colon))), number);
        if (defined[x])
            throw fail(number, "state '" + names[x] + "' defined twice");
        defined[x] = true;
        for (const auto& entry : text::split_ws(content.substr(colon + 1))) {
            const auto arrow = entry.find("->");
            if (arrow == std::string::npos)
                throw fail(number, "malformed transition '" + entry + "'");
            const auto n = alphabet.find(entry.substr(0, arrow));
            if (!n)
                throw fail(number, "unknown symbol in '" + entry + "'");
            auto& slot = table[x * k + *n];
            if (slot)
                throw fail(number, "symbol '" + alphabet[*n] + "' given twice");
            const std::string target = entry.substr(arrow + 2);
            slot = target == "FAULT" ? Next::fault() : Next::to(state_index(target, number));
        }
        for (Symbol n = 0; n < k; ++n)
            if (!table[x * k + n])
                throw fail(number, "no transition for symbol '" + alphabet[n] + "'");
    }
    for (State x = 0; x < names.size(); ++x)
        if (!defined[x])
            throw std::invalid_argument("detector table: state '" + names[x] + "' has no transition line");
    std::vector<Next> steps;
    steps.reserve(table.size());
    for (const auto& slot : table)
        steps.push_back(*slot);
    return FiniteDetector(std::move(alphabet), std::move(steps), std::move(names));
}

}  // namespace safecoal
