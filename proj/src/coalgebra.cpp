#include "safecoal/coalgebra.hpp"

#include <stdexcept>

namespace safecoal {

namespace {

void require_state(std::size_t size, State x) {
    if (x >= size)
        throw std::out_of_range("unknown state " + std::to_string(x));
}

}  // namespace

TSystem::TSystem(std::vector<Next> step) : step_(std::move(step)) {
    for (Next n : step_)
        if (!n.is_fault())
            require_state(step_.size(), n.state());
}

Next t_iterate(const TSystem& g, State x, std::size_t k) {
    require_state(g.size(), x);
    if (k == 0)
        throw std::invalid_argument("iteration powers start at 1");
    Next cur = g.step(x);
    for (std::size_t i = 1; i < k && !cur.is_fault(); ++i)
        cur = g.step(cur.state());
    return cur;
}

TerminationTime t_anamorphism(const TSystem& g, State x) {
    require_state(g.size(), x);
    std::vector<bool> seen(g.size(), false);
    State cur = x;
    // after k+1 applications from x we are at the k-th successor
    for (std::size_t k = 0;; ++k) {
        seen[cur] = true;
        Next n = g.step(cur);
        if (n.is_fault())
            return TerminationTime::finite(k);
        if (seen[n.state()])
            return TerminationTime::infinite();
        cur = n.state();
    }
}

SSystem::SSystem(Alphabet alphabet, std::vector<Symbol> out, std::vector<State> tr)
    : alphabet_(std::move(alphabet)), out_(std::move(out)), tr_(std::move(tr)) {
    if (out_.size() != tr_.size())
        throw std::invalid_argument("output and transition maps differ in size");
    for (Symbol n : out_)
        if (n >= alphabet_.size())
            throw std::out_of_range("output symbol outside the alphabet");
    for (State y : tr_)
        require_state(tr_.size(), y);
}

Lasso s_anamorphism(const SSystem& sigma, State x) {
    require_state(sigma.size(), x);
    std::vector<std::size_t> first_visit(sigma.size(), SIZE_MAX);
    Word outputs;
    State cur = x;
    while (first_visit[cur] == SIZE_MAX) {
        first_visit[cur] = outputs.size();
        outputs.push_back(sigma.out(cur));
        cur = sigma.tr(cur);
    }
    const auto loop = static_cast<std::ptrdiff_t>(first_visit[cur]);
    return Lasso(Word(outputs.begin(), outputs.begin() + loop), Word(outputs.begin() + loop, outputs.end()));
}

RootedSSystem stream_system(const Alphabet& alphabet, const Lasso& s) {
    // position k of s is identified with every earlier position carrying the
    // same suffix
    const std::size_t positions = s.cycle_size();
    std::vector<Lasso> suffixes;
    std::vector<State> state_of(positions);
    for (std::size_t k = 0; k < positions; ++k) {
        Lasso suffix = slice_from(s, k).normalized();
        State id = static_cast<State>(suffixes.size());
        for (State j = 0; j < suffixes.size(); ++j)
            if (suffixes[j] == suffix) {
                id = j;
                break;
            }
        if (id == suffixes.size())
            suffixes.push_back(std::move(suffix));
        state_of[k] = id;
    }
    std::vector<Symbol> out(suffixes.size());
    std::vector<State> tr(suffixes.size());
    for (std::size_t k = 0; k < positions; ++k) {
        const std::size_t succ = k + 1 < positions ? k + 1 : s.prefix().size();
        out[state_of[k]] = s.at(k);
        tr[state_of[k]] = state_of[succ];
    }
    return {SSystem(alphabet, std::move(out), std::move(tr)), state_of[0]};
}

RootedSSystem positional_system(const Alphabet& alphabet, const Lasso& s) {
    const std::size_t positions = s.cycle_size();
    std::vector<Symbol> out(positions);
    std::vector<State> tr(positions);
    for (std::size_t k = 0; k < positions; ++k) {
        out[k] = s.at(k);
        tr[k] = static_cast<State>(k + 1 < positions ? k + 1 : s.prefix().size());
    }
    return {SSystem(alphabet, std::move(out), std::move(tr)), 0};
}

bool check_s_morphism(std::span<const State> f, const SSystem& sigma, const SSystem& tau) {
    if (f.size() != sigma.size())
        return false;
    for (State x = 0; x < sigma.size(); ++x) {
        if (f[x] >= tau.size())
            return false;
        if (tau.out(f[x]) != sigma.out(x) || tau.tr(f[x]) != f[sigma.tr(x)])
            return false;
    }
    return true;
}

bool check_t_morphism(std::span<const State> f, const TSystem& g, const TSystem& h) {
    if (f.size() != g.size())
        return false;
    for (State x = 0; x < g.size(); ++x) {
        if (f[x] >= h.size())
            return false;
        const Next gx = g.step(x);
        const Next hfx = h.step(f[x]);
        if (gx.is_fault() != hfx.is_fault())
            return false;
        if (!gx.is_fault() && f[gx.state()] != hfx.state())
            return false;
    }
    return true;
}

}  // namespace safecoal
