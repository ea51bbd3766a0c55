#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "safecoal/bisim.hpp"
#include "safecoal/error.hpp"
#include "safecoal/join.hpp"

using namespace safecoal;

namespace {

const Alphabet ab = Alphabet::letters(2);
const Next F = Next::fault();
Next to(State x) { return Next::to(x); }

const FiniteDetector first_b(ab, {to(0), F});
const FiniteDetector first_b_unrolled(ab, {to(1), F, to(0), F});
const FiniteDetector never2(ab, {to(1), to(1), to(0), to(0)});
const FiniteDetector on_a(ab, {F, to(0)});

}  // namespace

TEST_CASE("largest_detector_bisimulation") {
    CHECK(largest_detector_bisimulation(never2, never2) == StatePairRelation{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const StatePairRelation r = largest_detector_bisimulation(first_b, first_b_unrolled);
    CHECK(r.count({0, 0}));
    CHECK(r == StatePairRelation{{0, 0}, {0, 1}});
    CHECK(largest_detector_bisimulation(on_a, first_b).empty());
    CHECK_THROWS_AS(largest_detector_bisimulation(first_b, FiniteDetector(Alphabet::letters(3), {F, F, F})),
                    AlphabetMismatch);
}

TEST_CASE("bisimilar") {
    CHECK(bisimilar(first_b, 0, first_b, 0));
    CHECK(bisimilar(first_b, 0, first_b_unrolled, 0));
    CHECK_FALSE(bisimilar(on_a, 0, never2, 0));
}

TEST_CASE("largest_s_bisimulation") {
    const RootedSSystem ab_cycle = stream_system(ab, Lasso(Word{}, Word{0, 1}));
    const RootedSSystem abab = positional_system(ab, Lasso(Word{}, Word{0, 1, 0, 1}));
    CHECK(largest_s_bisimulation(ab_cycle.system, abab.system).count({ab_cycle.initial, abab.initial}));
    const SSystem sigma(ab, {0, 1, 1}, {1, 2, 0});
    const StatePairRelation diag = largest_s_bisimulation(sigma, sigma);
    for (State x = 0; x < 3; ++x)
        CHECK(diag.count({x, x}));
    CHECK(largest_s_bisimulation(SSystem(ab, {0}, {0}), SSystem(ab, {1}, {0})).empty());
}

TEST_CASE("s-bisimilarity is equality of behaviour") {
    oracle::Rng rng(61);
    for (int i = 0; i < 300; ++i) {
        auto random_system = [&] {
            const std::size_t n = oracle::uniform(rng, 1, 4);
            std::vector<Symbol> out(n);
            std::vector<State> tr(n);
            for (std::size_t x = 0; x < n; ++x) {
                out[x] = static_cast<Symbol>(oracle::uniform(rng, 0, 1));
                tr[x] = static_cast<State>(oracle::uniform(rng, 0, n - 1));
            }
            return SSystem(ab, out, tr);
        };
        const SSystem s = random_system(), t = random_system();
        const StatePairRelation r = largest_s_bisimulation(s, t);
        for (State x = 0; x < s.size(); ++x)
            for (State y = 0; y < t.size(); ++y) {
                bool equal = true;
                for (std::size_t j = 0; j < 20; ++j)
                    equal = equal && s_anamorphism(s, x).at(j) == s_anamorphism(t, y).at(j);
                REQUIRE(r.count({x, y}) == (equal ? 1u : 0u));
            }
    }
}

TEST_CASE("bisimilarity is equality of violation languages") {
    oracle::Rng rng(62);
    for (int i = 0; i < 500; ++i) {
        const auto ta = oracle::random_table(rng, oracle::uniform(rng, 1, 4), 2);
        const auto tb = oracle::random_table(rng, oracle::uniform(rng, 1, 4), 2);
        const FiniteDetector a = oracle::detector_of(ta), b = oracle::detector_of(tb);
        const std::size_t d = ta.states + tb.states;
        const StatePairRelation r = largest_detector_bisimulation(a, b);
        for (State x = 0; x < a.size(); ++x)
            for (State y = 0; y < b.size(); ++y) {
                const bool same = oracle::violation_words(ta, x, d) == oracle::violation_words(tb, y, d);
                REQUIRE(r.count({x, y}) == (same ? 1u : 0u));
                REQUIRE(bisimilar(a, x, b, y) == same);
                REQUIRE(same == anamorphism_regular(a, x).same_language(anamorphism_regular(b, y)));
            }
    }
}

TEST_CASE("self-bisimulation is an equivalence") {
    oracle::Rng rng(63);
    for (int i = 0; i < 200; ++i) {
        const FiniteDetector a = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 5), 2));
        const StatePairRelation r = largest_detector_bisimulation(a, a);
        for (State x = 0; x < a.size(); ++x) {
            REQUIRE(r.count({x, x}));
            for (State y = 0; y < a.size(); ++y) {
                REQUIRE(r.count({x, y}) == r.count({y, x}));
                for (State z = 0; z < a.size(); ++z)
                    if (r.count({x, y}) && r.count({y, z}))
                        REQUIRE(r.count({x, z}));
            }
        }
    }
}

TEST_CASE("morphism graphs are bisimulations") {
    oracle::Rng rng(64);
    std::size_t found = 0;
    for (int i = 0; i < 20000 && found < 200; ++i) {
        const FiniteDetector a = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 3), 2));
        const FiniteDetector b = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 2), 2));
        std::vector<State> f(a.size());
        for (State& y : f)
            y = static_cast<State>(oracle::uniform(rng, 0, b.size() - 1));
        if (!check_detector_morphism(f, a, b))
            continue;
        ++found;
        const StatePairRelation r = largest_detector_bisimulation(a, b);
        for (State x = 0; x < a.size(); ++x)
            REQUIRE(r.count({x, f[x]}));
    }
    CHECK(found > 50);
}

TEST_CASE("bisimilar states give equal monitor verdicts") {
    oracle::Rng rng(65);
    for (int i = 0; i < 100; ++i) {
        const FiniteDetector a = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 4), 2));
        const FiniteDetector b = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 4), 2));
        for (const auto& [x, y] : largest_detector_bisimulation(a, b))
            for (std::size_t len = 1; len <= 5; ++len)
                for (std::size_t split = 0; split < len; ++split)
                    for (const Word& u : oracle::words_of_length(2, len)) {
                        const Lasso s(Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(split)),
                                      Word(u.begin() + static_cast<std::ptrdiff_t>(split), u.end()));
                        REQUIRE(monitor_lasso(a, x, s) == monitor_lasso(b, y, s));
                    }
    }
}

TEST_CASE("minimize") {
    const RootedDetector m = minimize(first_b_unrolled, 1);
    CHECK(m.detector.size() == 1);
    CHECK(bisimilar(m.detector, m.initial, first_b, 0));
    oracle::Rng rng(66);
    for (int i = 0; i < 300; ++i) {
        const FiniteDetector a = oracle::detector_of(oracle::random_table(rng, oracle::uniform(rng, 1, 6), 2));
        const State x = static_cast<State>(oracle::uniform(rng, 0, a.size() - 1));
        const RootedDetector q = minimize(a, x);
        REQUIRE(bisimilar(a, x, q.detector, q.initial));
        REQUIRE(q.detector.size() <= a.size());
        // no two distinct states of the quotient are bisimilar
        const StatePairRelation r = largest_detector_bisimulation(q.detector, q.detector);
        REQUIRE(r.size() == q.detector.size());
        REQUIRE(minimize(q.detector, q.initial).detector == q.detector);
    }
}
