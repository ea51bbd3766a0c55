#include "safecoal/bisim.hpp"

#include <algorithm>
#include <numeric>

namespace safecoal {

namespace {

constexpr State kFaultMark = ~State{0};

/// Moore-style refinement. `fill(x, block, row)` writes the signature of x
/// under the current partition into `row`; states with equal signatures stay
/// together. Starts from a single block and stops when no block splits.
template <typename Fill>
std::vector<State> refine(std::size_t n, std::size_t width, Fill fill) {
    std::vector<State> block(n, 0);
    std::vector<State> rows(n * width);
    std::vector<std::size_t> order(n);
    std::size_t blocks = 1;
    for (;;) {
        for (std::size_t x = 0; x < n; ++x)
            fill(x, block, std::span<State>(rows.data() + x * width, width));
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto row = [&](std::size_t x) { return rows.begin() + static_cast<std::ptrdiff_t>(x * width); };
        std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
            return std::lexicographical_compare(row(u), row(u) + static_cast<std::ptrdiff_t>(width), row(v),
                                                row(v) + static_cast<std::ptrdiff_t>(width));
        });
        std::vector<State> refined(n);
        State id = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && !std::equal(row(order[i]), row(order[i]) + static_cast<std::ptrdiff_t>(width),
                                     row(order[i - 1])))
                ++id;
            refined[order[i]] = id;
        }
        const std::size_t count = n == 0 ? 0 : id + 1;
        block = std::move(refined);
        if (count == blocks)
            return block;
        blocks = count;
    }
}

}  // namespace

std::vector<State> detector_classes(const FiniteDetector& a, const FiniteDetector& b) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();
    const std::size_t na = a.size();
    auto fill = [&](std::size_t x, const std::vector<State>& block, std::span<State> row) {
        const bool in_a = x < na;
        const FiniteDetector& d = in_a ? a : b;
        const State local = static_cast<State>(in_a ? x : x - na);
        const std::size_t offset = in_a ? 0 : na;
        row[0] = block[x];
        for (Symbol n = 0; n < k; ++n) {
            const Next step = d.step(local, n);
            row[n + 1] = step.is_fault() ? kFaultMark : block[offset + step.state()];
        }
    };
    return refine(na + b.size(), k + 1, fill);
}

StatePairRelation largest_detector_bisimulation(const FiniteDetector& a, const FiniteDetector& b) {
    const std::vector<State> cls = detector_classes(a, b);
    StatePairRelation out;
    for (State x = 0; x < a.size(); ++x)
        for (State y = 0; y < b.size(); ++y)
            if (cls[x] == cls[a.size() + y])
                out.emplace(x, y);
    return out;
}

bool bisimilar(const FiniteDetector& a, State x, const FiniteDetector& b, State y) {
    const std::vector<State> cls = detector_classes(a, b);
    return cls.at(x) == cls.at(a.size() + y);
}

StatePairRelation largest_s_bisimulation(const SSystem& sigma, const SSystem& tau) {
    require_same_alphabet(sigma.alphabet(), tau.alphabet());
    const std::size_t ns = sigma.size();
    auto fill = [&](std::size_t x, const std::vector<State>& block, std::span<State> row) {
        const bool in_sigma = x < ns;
        const SSystem& s = in_sigma ? sigma : tau;
        const State local = static_cast<State>(in_sigma ? x : x - ns);
        row[0] = block[x];
        row[1] = s.out(local);
        row[2] = block[(in_sigma ? 0 : ns) + s.tr(local)];
    };
    const std::vector<State> cls = refine(ns + tau.size(), 3, fill);
    StatePairRelation out;
    for (State x = 0; x < ns; ++x)
        for (State y = 0; y < tau.size(); ++y)
            if (cls[x] == cls[ns + y])
                out.emplace(x, y);
    return out;
}

RootedDetector minimize(const FiniteDetector& a, State x) {
    if (x >= a.size())
        throw std::out_of_range("unknown detector state");
    const std::vector<State> cls = detector_classes(a, a);
    const std::size_t k = a.alphabet().size();
    // breadth-first over classes, using any member as representative
    std::vector<State> class_index(a.size() * 2, ~State{0});
    std::vector<State> representative{x};
    class_index[cls[x]] = 0;
    std::vector<Next> table;
    for (std::size_t i = 0; i < representative.size(); ++i)
        for (Symbol n = 0; n < k; ++n) {
            const Next step = a.step(representative[i], n);
            if (step.is_fault()) {
                table.push_back(Next::fault());
                continue;
            }
            State& idx = class_index[cls[step.state()]];
            if (idx == ~State{0}) {
                idx = static_cast<State>(representative.size());
                representative.push_back(step.state());
            }
            table.push_back(Next::to(idx));
        }
    return {FiniteDetector(a.alphabet(), std::move(table)), 0};
}

}  // namespace safecoal
