#pragma once

// Brute-force reference implementations and random generators shared by the
// unit tests and the acceptance binary. Everything here works directly from
// definitions and avoids the library's algorithms.

#include <cstddef>
#include <optional>
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "safecoal/coalgebra.hpp"
#include "safecoal/detector.hpp"
#include "safecoal/speclang.hpp"

namespace oracle {

using namespace safecoal;

/// All words over k symbols of length exactly n, shortlex order.
inline std::vector<Word> words_of_length(std::size_t k, std::size_t n) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Word> longer;
        for (const Word& w : out)
            for (Symbol s = 0; s < k; ++s) {
                Word v = w;
                v.push_back(s);
                longer.push_back(std::move(v));
            }
        out = std::move(longer);
    }
    return out;
}

/// All words of length 1..n (ε excluded unless with_empty).
inline std::vector<Word> words_up_to(std::size_t k, std::size_t n, bool with_empty = false) {
    std::vector<Word> out;
    for (std::size_t len = with_empty ? 0 : 1; len <= n; ++len)
        for (Word& w : words_of_length(k, len))
            out.push_back(std::move(w));
    return out;
}

/// Raw step table: -1 for fault, otherwise successor.
struct Table {
    std::size_t states;
    std::size_t k;
    std::vector<int> step;
    int at(std::size_t x, Symbol n) const { return step[x * k + n]; }
};

inline Table table_of(const FiniteDetector& a) {
    Table t{a.size(), a.alphabet().size(), {}};
    for (const Next& n : a.table())
        t.step.push_back(n.is_fault() ? -1 : static_cast<int>(n.state()));
    return t;
}

inline FiniteDetector detector_of(const Table& t) {
    std::vector<Next> table;
    for (int s : t.step)
        table.push_back(s < 0 ? Next::fault() : Next::to(static_cast<State>(s)));
    return FiniteDetector(Alphabet::letters(t.k), std::move(table));
}

/// Position at which the run from x on w first faults (1-based), or 0.
inline std::size_t first_fault(const Table& t, std::size_t x, const Word& w) {
    int cur = static_cast<int>(x);
    for (std::size_t i = 0; i < w.size(); ++i) {
        cur = t.at(static_cast<std::size_t>(cur), w[i]);
        if (cur < 0)
            return i + 1;
    }
    return 0;
}

/// -1 for fault, otherwise the state reached.
inline int run(const Table& t, std::size_t x, const Word& w) {
    int cur = static_cast<int>(x);
    for (Symbol n : w) {
        cur = t.at(static_cast<std::size_t>(cur), n);
        if (cur < 0)
            return -1;
    }
    return cur;
}

/// Words of length ≤ d whose run faults exactly at the last symbol.
inline WordSet violation_words(const Table& t, std::size_t x, std::size_t d) {
    WordSet out;
    for (const Word& w : words_up_to(t.k, d))
        if (first_fault(t, x, w) == w.size())
            out.insert(w);
    return out;
}

inline bool prefix_free(const WordSet& a) {
    for (const Word& u : a)
        for (const Word& v : a)
            if (u.size() < v.size() && std::equal(u.begin(), u.end(), v.begin()))
                return false;
    return true;
}

/// {u | n·u ∈ A} by trying every candidate u.
inline WordSet derivative(Symbol n, const WordSet& a, std::size_t k) {
    std::size_t longest = 0;
    for (const Word& w : a)
        longest = std::max(longest, w.size());
    WordSet out;
    for (const Word& u : words_up_to(k, longest, true)) {
        Word nu{n};
        nu.insert(nu.end(), u.begin(), u.end());
        if (a.count(nu))
            out.insert(u);
    }
    return out;
}

inline Symbol stream_at(const Word& prefix, const Word& period, std::size_t k) {
    return k < prefix.size() ? prefix[k] : period[(k - prefix.size()) % period.size()];
}

/// Verdict by unrolling: first faulting position (1-based) within a bound
/// that the pigeonhole principle makes sufficient, or 0 for safe.
inline std::size_t lasso_fault(const Table& t, std::size_t x, const Word& prefix, const Word& period) {
    const std::size_t bound = prefix.size() + t.states * period.size() + 1;
    int cur = static_cast<int>(x);
    for (std::size_t i = 0; i < bound; ++i) {
        cur = t.at(static_cast<std::size_t>(cur), stream_at(prefix, period, i));
        if (cur < 0)
            return i + 1;
    }
    return 0;
}

/// Does the regex match exactly w? Computed on sets of end positions.
inline std::set<std::size_t> ends(const Regex& r, const Word& w, std::set<std::size_t> from) {
    using K = Regex::Kind;
    switch (r.kind) {
    case K::symbol: {
        std::set<std::size_t> out;
        for (std::size_t i : from)
            if (i < w.size() && w[i] == r.symbol)
                out.insert(i + 1);
        return out;
    }
    case K::concat:
        for (const Regex& c : r.children)
            from = ends(c, w, from);
        return from;
    case K::alternation: {
        std::set<std::size_t> out;
        for (const Regex& c : r.children)
            for (std::size_t i : ends(c, w, from))
                out.insert(i);
        return out;
    }
    case K::optional: {
        auto out = ends(r.children[0], w, from);
        out.insert(from.begin(), from.end());
        return out;
    }
    case K::star:
    case K::plus: {
        std::set<std::size_t> reached = r.kind == K::star ? from : ends(r.children[0], w, from);
        std::set<std::size_t> frontier = reached;
        while (!frontier.empty()) {
            std::set<std::size_t> fresh;
            for (std::size_t i : ends(r.children[0], w, frontier))
                if (reached.insert(i).second)
                    fresh.insert(i);
            frontier = std::move(fresh);
        }
        return reached;
    }
    }
    return {};
}

inline bool matches(const Regex& r, const Word& w) { return ends(r, w, {0}).count(w.size()) > 0; }

/// min(L) ∩ Σ^{≤d} by filtering words with a matching proper prefix.
inline WordSet kernel_words(const Regex& r, std::size_t k, std::size_t d) {
    WordSet out;
    for (const Word& w : words_up_to(k, d)) {
        if (!matches(r, w))
            continue;
        bool minimal = true;
        for (std::size_t j = 1; j < w.size() && minimal; ++j)
            if (matches(r, Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j))))
                minimal = false;
        if (minimal)
            out.insert(w);
    }
    return out;
}

// random generation

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random detector table; each entry faults with probability about fault_pct%.
inline Table random_table(Rng& rng, std::size_t states, std::size_t k, unsigned fault_pct = 25) {
    Table t{states, k, {}};
    for (std::size_t i = 0; i < states * k; ++i)
        t.step.push_back(uniform(rng, 0, 99) < fault_pct ? -1 : static_cast<int>(uniform(rng, 0, states - 1)));
    return t;
}

inline Word random_word(Rng& rng, std::size_t k, std::size_t lo, std::size_t hi) {
    Word w(uniform(rng, lo, hi));
    for (Symbol& n : w)
        n = static_cast<Symbol>(uniform(rng, 0, k - 1));
    return w;
}

inline Regex random_regex(Rng& rng, std::size_t k, std::size_t depth) {
    using K = Regex::Kind;
    if (depth == 0 || uniform(rng, 0, 3) == 0)
        return Regex::literal(static_cast<Symbol>(uniform(rng, 0, k - 1)));
    switch (uniform(rng, 0, 4)) {
    case 0:
    case 1: {
        std::vector<Regex> c;
        for (std::size_t i = uniform(rng, 2, 3); i > 0; --i)
            c.push_back(random_regex(rng, k, depth - 1));
        return Regex::node(K::concat, std::move(c));
    }
    case 2: {
        std::vector<Regex> c;
        for (std::size_t i = uniform(rng, 2, 3); i > 0; --i)
            c.push_back(random_regex(rng, k, depth - 1));
        return Regex::node(K::alternation, std::move(c));
    }
    default: {
        const K kinds[] = {K::star, K::plus, K::optional};
        return Regex::node(kinds[uniform(rng, 0, 2)], {random_regex(rng, k, depth - 1)});
    }
    }
}

}  // namespace oracle
