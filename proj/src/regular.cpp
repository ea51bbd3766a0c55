#include "safecoal/regular.hpp"

#include <deque>
#include <map>
#include <stdexcept>

#include "safecoal/error.hpp"

namespace safecoal {

Dfa::Dfa(std::size_t alphabet_size, std::vector<State> delta, std::vector<bool> accepting, State initial)
    : alphabet_size_(alphabet_size), delta_(std::move(delta)), accepting_(std::move(accepting)), initial_(initial) {
    if (alphabet_size_ == 0)
        throw std::invalid_argument("automaton over an empty alphabet");
    if (accepting_.empty())
        throw std::invalid_argument("automaton without states");
    if (delta_.size() != accepting_.size() * alphabet_size_)
        throw std::invalid_argument("transition table has the wrong size");
    if (initial_ >= accepting_.size())
        throw std::out_of_range("initial state out of range");
    for (State y : delta_)
        if (y >= accepting_.size())
            throw std::out_of_range("transition target out of range");
}

State Dfa::run(State from, const Word& w) const {
    State cur = from;
    for (Symbol n : w)
        cur = next(cur, n);
    return cur;
}

Dfa Dfa::with_initial(State x) const { return Dfa(alphabet_size_, delta_, accepting_, x); }

Dfa Dfa::reachable() const {
    std::vector<State> index(size(), ~State{0});
    std::vector<State> order{initial_};
    index[initial_] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol n = 0; n < alphabet_size_; ++n) {
            State y = next(order[i], n);
            if (index[y] == ~State{0}) {
                index[y] = static_cast<State>(order.size());
                order.push_back(y);
            }
        }
    std::vector<State> delta;
    std::vector<bool> accepting;
    for (State x : order) {
        accepting.push_back(accepting_[x]);
        for (Symbol n = 0; n < alphabet_size_; ++n)
            delta.push_back(index[next(x, n)]);
    }
    return Dfa(alphabet_size_, std::move(delta), std::move(accepting), 0);
}

Dfa Dfa::minimized() const {
    const Dfa r = reachable();
    const std::size_t n_states = r.size();
    const std::size_t k = alphabet_size_;

    // Moore refinement: split by acceptance, then by successor blocks
    std::vector<State> block(n_states);
    for (State x = 0; x < n_states; ++x)
        block[x] = r.accepting(x) ? 1 : 0;
    std::size_t blocks = 0;
    for (;;) {
        std::map<std::vector<State>, State> ids;
        std::vector<State> refined(n_states);
        for (State x = 0; x < n_states; ++x) {
            std::vector<State> sig{block[x]};
            for (Symbol a = 0; a < k; ++a)
                sig.push_back(block[r.next(x, a)]);
            auto [it, fresh] = ids.emplace(std::move(sig), static_cast<State>(ids.size()));
            refined[x] = it->second;
        }
        block = std::move(refined);
        if (ids.size() == blocks)
            break;
        blocks = ids.size();
    }

    // renumber blocks in breadth-first order from the initial block
    std::vector<State> delta(blocks * k);
    std::vector<bool> accepting(blocks);
    for (State x = 0; x < n_states; ++x) {
        accepting[block[x]] = r.accepting(x);
        for (Symbol a = 0; a < k; ++a)
            delta[block[x] * k + a] = block[r.next(x, a)];
    }
    return Dfa(k, std::move(delta), std::move(accepting), block[0]).reachable();
}

WordSet Dfa::words_up_to(std::size_t depth) const {
    WordSet out;
    std::vector<std::pair<State, Word>> frontier{{initial_, {}}};
    for (std::size_t len = 0; len <= depth; ++len) {
        std::vector<std::pair<State, Word>> next_frontier;
        for (auto& [x, w] : frontier) {
            if (accepting(x))
                out.insert(w);
            if (len == depth)
                continue;
            for (Symbol n = 0; n < alphabet_size_; ++n) {
                Word v = w;
                v.push_back(n);
                next_frontier.emplace_back(next(x, n), std::move(v));
            }
        }
        frontier = std::move(next_frontier);
    }
    return out;
}

bool Dfa::empty() const {
    const Dfa r = reachable();
    for (State x = 0; x < r.size(); ++x)
        if (r.accepting(x))
            return false;
    return true;
}

Dfa Dfa::prefix_kernel() const {
    const State sink = static_cast<State>(size());
    std::vector<State> delta = delta_;
    std::vector<bool> accepting = accepting_;
    for (State x = 0; x < size(); ++x)
        if (accepting_[x])
            for (Symbol n = 0; n < alphabet_size_; ++n)
                delta[x * alphabet_size_ + n] = sink;
    for (Symbol n = 0; n < alphabet_size_; ++n)
        delta.push_back(sink);
    accepting.push_back(false);
    return Dfa(alphabet_size_, std::move(delta), std::move(accepting), initial_);
}

std::optional<std::pair<Word, Word>> Dfa::prefix_witness() const {
    // breadth-first search for the shortest accepted word u, then for the
    // shortest nonempty v leading from the state after u to acceptance;
    // iterate over accepted states in order of their shortest access word
    std::vector<std::optional<Word>> access(size());
    std::deque<State> queue{initial_};
    access[initial_] = Word{};
    std::vector<State> order;
    while (!queue.empty()) {
        State x = queue.front();
        queue.pop_front();
        order.push_back(x);
        for (Symbol n = 0; n < alphabet_size_; ++n) {
            State y = next(x, n);
            if (!access[y]) {
                access[y] = concat(*access[x], Word{n});
                queue.push_back(y);
            }
        }
    }
    std::optional<std::pair<Word, Word>> best;
    for (State x : order) {
        if (!accepting(x))
            continue;
        // shortest nonempty continuation from x into acceptance
        std::vector<std::optional<Word>> tail(size());
        std::deque<State> q;
        for (Symbol n = 0; n < alphabet_size_; ++n) {
            State y = next(x, n);
            if (!tail[y]) {
                tail[y] = Word{n};
                q.push_back(y);
            }
        }
        while (!q.empty()) {
            State y = q.front();
            q.pop_front();
            if (accepting(y)) {
                std::pair<Word, Word> candidate{*access[x], concat(*access[x], *tail[y])};
                if (!best || ShortLex{}(candidate.second, best->second))
                    best = std::move(candidate);
                break;
            }
            for (Symbol n = 0; n < alphabet_size_; ++n) {
                State z = next(y, n);
                if (!tail[z]) {
                    tail[z] = concat(*tail[y], Word{n});
                    q.push_back(z);
                }
            }
        }
    }
    return best;
}

std::optional<Word> shortest_difference(const Dfa& a, const Dfa& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw AlphabetMismatch("automata over alphabets of different size");
    const std::size_t k = a.alphabet_size();
    std::map<std::pair<State, State>, Word> seen;
    std::deque<std::pair<State, State>> queue;
    seen[{a.initial(), b.initial()}] = {};
    queue.emplace_back(a.initial(), b.initial());
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        const Word& w = seen[{x, y}];
        if (a.accepting(x) != b.accepting(y))
            return w;
        for (Symbol n = 0; n < k; ++n) {
            std::pair<State, State> succ{a.next(x, n), b.next(y, n)};
            if (!seen.count(succ)) {
                seen[succ] = concat(seen[{x, y}], Word{n});
                queue.push_back(succ);
            }
        }
    }
    return std::nullopt;
}

RegularPrefixFreeSet::RegularPrefixFreeSet(Dfa dfa) : dfa_(std::move(dfa)) {
    if (dfa_.accepting(dfa_.initial()))
        throw EpsilonViolation("violation language contains the empty word");
    if (auto w = dfa_.prefix_witness())
        throw NotPrefixFree("violation language is not prefix-free", w->first, w->second);
}

}  // namespace safecoal
