#include "safecoal/join.hpp"

#include <stdexcept>

namespace safecoal {

JoinSystem join(const SSystem& sigma, const FiniteDetector& a) {
    require_same_alphabet(sigma.alphabet(), a.alphabet());
    std::vector<Next> step;
    step.reserve(sigma.size() * a.size());
    for (State x = 0; x < sigma.size(); ++x)
        for (State y = 0; y < a.size(); ++y) {
            const Next d = a.step(y, sigma.out(x));
            step.push_back(d.is_fault() ? Next::fault()
                                        : Next::to(static_cast<State>(sigma.tr(x) * a.size() + d.state())));
        }
    return {TSystem(std::move(step)), a.size()};
}

std::vector<State> join_map(std::span<const State> f, std::span<const State> g, std::size_t target_detector_size) {
    std::vector<State> out;
    out.reserve(f.size() * g.size());
    for (State fx : f)
        for (State gy : g)
            out.push_back(static_cast<State>(fx * target_detector_size + gy));
    return out;
}

MonitorVerdict monitor_lasso(const FiniteDetector& a, State x, const Lasso& s, std::optional<std::size_t> max_steps) {
    if (x >= a.size())
        throw std::out_of_range("unknown detector state");
    for (Symbol n : s.prefix())
        if (n >= a.alphabet().size())
            throw std::out_of_range("lasso symbol outside the alphabet");
    for (Symbol n : s.period())
        if (n >= a.alphabet().size())
            throw std::out_of_range("lasso symbol outside the alphabet");

    const std::size_t loop_start = s.prefix().size();
    const std::size_t positions = s.cycle_size();
    // visited[(p - loop_start) * |Q| + q] for positions inside the period
    std::vector<bool> visited(s.period().size() * a.size(), false);
    std::size_t p = 0;
    State q = x;
    for (std::size_t m = 1;; ++m) {
        if (p >= loop_start) {
            const std::size_t key = (p - loop_start) * a.size() + q;
            if (visited[key])
                return CertifiedSafe{};
            visited[key] = true;
        }
        if (max_steps && m > *max_steps)
            return Unknown{*max_steps};
        const Next next = a.step(q, s.at(p));
        if (next.is_fault())
            return Violation{m, slice_range(s, 0, m), m - 1};
        q = next.state();
        p = p + 1 < positions ? p + 1 : loop_start;
    }
}

namespace {

bool same_state(const PrefixFreeSet& u, const PrefixFreeSet& v) {
    if (const auto* eu = std::get_if<ExplicitSet>(&u))
        return eu->words == std::get<ExplicitSet>(v).words;
    return std::get<RegularPrefixFreeSet>(u).same_language(std::get<RegularPrefixFreeSet>(v));
}

}  // namespace

MonitorVerdict monitor_lasso(const PrefixFreeSet& start, const Lasso& s) {
    if (!std::holds_alternative<ExplicitSet>(start) && !std::holds_alternative<RegularPrefixFreeSet>(start))
        throw std::invalid_argument("only explicit and regular violation sets can certify safety");
    const std::size_t loop_start = s.prefix().size();
    const std::size_t positions = s.cycle_size();
    // seen[p - loop_start] holds the final-detector states met at position p
    std::vector<std::vector<PrefixFreeSet>> seen(s.period().size());
    std::size_t p = 0;
    PrefixFreeSet cur = start;
    for (std::size_t m = 1;; ++m) {
        if (p >= loop_start) {
            auto& bucket = seen[p - loop_start];
            for (const auto& earlier : bucket)
                if (same_state(earlier, cur))
                    return CertifiedSafe{};
            bucket.push_back(cur);
        }
        FinalStep step = final_step(cur, s.at(p));
        if (step.kind == StepKind::fault)
            return Violation{m, slice_range(s, 0, m), m - 1};
        cur = std::move(*step.next);
        p = p + 1 < positions ? p + 1 : loop_start;
    }
}

bool constr_member(const FiniteDetector& a, State x, const Lasso& s) {
    return std::holds_alternative<CertifiedSafe>(monitor_lasso(a, x, s));
}

std::pair<MonitorVerdict, MonitorVerdict> transfer_to_universal(const FiniteDetector& a, State x, const Lasso& s) {
    const RegularPrefixFreeSet language = anamorphism_regular(a, x);
    return {monitor_lasso(a, x, s), monitor_lasso(PrefixFreeSet(language), s)};
}

OnlineMonitor::Feed OnlineMonitor::feed(Symbol n) {
    if (!handle_)
        throw std::logic_error("monitor already reported a terminal verdict");
    HandleStep step = handle_->step(n);
    ++position_;
    switch (step.kind) {
        case StepKind::ok:
            handle_ = std::move(step.next);
            return {Status::ok, position_, step.work};
        case StepKind::fault:
            handle_.reset();
            return {Status::violation, position_, step.work};
        case StepKind::unknown:
            break;
    }
    handle_.reset();
    return {Status::unknown, position_, step.work};
}

}  // namespace safecoal
