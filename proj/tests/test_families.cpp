#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "safecoal/error.hpp"
#include "safecoal/families.hpp"
#include "safecoal/join.hpp"

using namespace safecoal;

namespace {

const Alphabet ab = Alphabet::letters(2);

Word w(const char* text) { return parse_word(ab, text); }

WordSet set_of(std::initializer_list<const char*> words) {
    WordSet out;
    for (const char* t : words)
        out.insert(w(t));
    return out;
}

// accepts a*b: q0 -a-> q0, q0 -b-> q1, q1 final
EilenbergMachine astar_b() { return EilenbergMachine(ab, 2, {{0, 0, 0}, {0, 1, 1}}, {0}, {1}); }

// accepts exactly "a b"
EilenbergMachine just_ab() { return EilenbergMachine(ab, 3, {{0, 0, 1}, {1, 1, 2}}, {0}, {2}); }

EilenbergMachine random_machine(oracle::Rng& rng) {
    const std::size_t n = oracle::uniform(rng, 1, 4);
    std::set<Transition> t;
    for (State x = 0; x < n; ++x)
        for (Symbol s = 0; s < 2; ++s)
            for (State y = 0; y < n; ++y)
                if (oracle::uniform(rng, 0, 3) == 0)
                    t.insert({x, s, y});
    std::set<State> init, fin;
    for (State x = 0; x < n; ++x) {
        if (oracle::uniform(rng, 0, 2) == 0)
            init.insert(x);
        if (oracle::uniform(rng, 0, 2) == 0)
            fin.insert(x);
    }
    if (init.empty())
        init.insert(0);
    return EilenbergMachine(ab, n, t, init, fin);
}

/// Words of length ≤ d accepted by brute-force path search.
WordSet brute_accepted(const EilenbergMachine& m, std::size_t d) {
    WordSet out;
    for (const Word& u : oracle::words_up_to(2, d, true)) {
        std::set<State> cur = m.initial();
        for (Symbol n : u) {
            std::set<State> next;
            for (const Transition& t : m.transitions())
                if (t.symbol == n && cur.count(t.from))
                    next.insert(t.to);
            cur = std::move(next);
        }
        for (State x : cur)
            if (m.final_states().count(x))
                out.insert(u);
    }
    return out;
}

WordSet random_prefix_free(oracle::Rng& rng, std::size_t max_len) {
    WordSet out;
    for (const Word& u : oracle::words_up_to(2, max_len)) {
        if (oracle::uniform(rng, 0, 4) != 0)
            continue;
        bool ok = true;
        for (const Word& v : out)
            ok = ok && !is_proper_prefix(v, u);
        if (ok)
            out.insert(u);
    }
    return out;
}

/// 1-based fault position of a handle on u, 0 if none.
std::size_t handle_fault(DetectorHandle h, const Word& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const HandleStep s = h.step(u[i]);
        if (s.kind == StepKind::fault)
            return i + 1;
        REQUIRE(s.kind == StepKind::ok);
        h = *s.next;
    }
    return 0;
}

}  // namespace

TEST_CASE("machine_to_detector") {
    const EilenbergMachine only_b(ab, 2, {{0, 1, 1}}, {0}, {1});
    const RootedDetector d = machine_to_detector(only_b);
    CHECK(d.detector.faults(d.initial, 1));
    const Next a = d.detector.step(d.initial, 0);
    REQUIRE_FALSE(a.is_fault());
    CHECK_FALSE(d.detector.faults(a.state(), 0));
    CHECK_FALSE(d.detector.faults(a.state(), 1));

    const RootedDetector first_b = machine_to_detector(astar_b());
    CHECK(minimal_violation_words(first_b.detector, first_b.initial, 6) == accepted_words(astar_b(), 6));
    CHECK(first_b.detector.size() == 1);

    const RootedDetector none = machine_to_detector(EilenbergMachine(ab, 1, {{0, 0, 0}}, {0}, {}));
    CHECK(none.detector.size() == 1);
    CHECK(minimal_violation_words(none.detector, none.initial, 4).empty());
}

TEST_CASE("machine_to_detector rejects bad languages with witnesses") {
    // a and a b
    const EilenbergMachine not_pf(ab, 3, {{0, 0, 1}, {1, 1, 2}}, {0}, {1, 2});
    try {
        machine_to_detector(not_pf);
        FAIL("expected NotPrefixFree");
    } catch (const NotPrefixFree& e) {
        CHECK(e.shorter == w("a"));
        CHECK(e.longer == w("a b"));
    }
    CHECK_THROWS_AS(machine_to_detector(EilenbergMachine(ab, 1, {}, {0}, {0})), EpsilonViolation);
}

TEST_CASE("prefix-free machines compile to their language") {
    oracle::Rng rng(41);
    std::size_t compiled = 0;
    for (int i = 0; i < 2000; ++i) {
        const EilenbergMachine m = random_machine(rng);
        REQUIRE(accepted_words(m, 5) == brute_accepted(m, 5));
        std::optional<RootedDetector> d;
        try {
            d = machine_to_detector(m);
        } catch (const NotPrefixFree& e) {
            REQUIRE(m.accepts(e.shorter));
            REQUIRE(m.accepts(e.longer));
            REQUIRE(is_proper_prefix(e.shorter, e.longer));
            continue;
        } catch (const EpsilonViolation&) {
            REQUIRE(m.accepts(Word{}));
            continue;
        }
        ++compiled;
        REQUIRE(minimal_violation_words(d->detector, d->initial, 6) == brute_accepted(m, 6));
    }
    CHECK(compiled > 100);
}

TEST_CASE("machine_derivative") {
    const EilenbergMachine da = machine_derivative(just_ab(), 0);
    CHECK(accepted_words(da, 4) == set_of({"b"}));
    const EilenbergMachine empty(ab, 1, {}, {0}, {});
    CHECK(accepted_words(machine_derivative(empty, 0), 4).empty());
    CHECK(accepted_words(machine_derivative(astar_b(), 0), 6) == accepted_words(astar_b(), 6));
}

TEST_CASE("machine_derivative agrees with derivative_set") {
    oracle::Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        const EilenbergMachine m = random_machine(rng);
        const WordSet lang = brute_accepted(m, 5);
        for (Symbol n = 0; n < 2; ++n) {
            WordSet expected;
            for (const Word& u : oracle::derivative(n, lang, 2))
                if (u.size() <= 4)
                    expected.insert(u);
            REQUIRE(accepted_words(machine_derivative(m, n), 4) == expected);
        }
    }
}

TEST_CASE("machine text format") {
    const EilenbergMachine m = astar_b();
    const std::string text = write_machine(m);
    CHECK(read_machine(text) == m);
    const EilenbergMachine parsed = read_machine(
        "# a then b\nstates: p q r\nalphabet: a b\ninitial: p\nfinal: r\np -a-> q\nq -b-> r\n");
    CHECK(accepted_words(parsed, 4) == set_of({"a b"}));
    CHECK_THROWS(read_machine("states: p\nalphabet: a b\ninitial: x\nfinal:\n"));
    CHECK_THROWS(read_machine("states: p\nalphabet: a b\ninitial: p\nfinal:\np -c-> p\n"));
}

TEST_CASE("decidable_detector") {
    const DetectorHandle eq_b = decidable_detector(ab, [](const Word& u) { return u == Word{1}; }, false);
    CHECK(handle_fault(eq_b, w("a a b")) == 0);
    CHECK(handle_fault(eq_b, w("b")) == 1);

    const WordSet two = set_of({"a b", "b a"});
    const DetectorHandle in_two = decidable_detector(ab, [&](const Word& u) { return two.count(u) > 0; }, false);
    CHECK(handle_fault(in_two, w("a b")) == 2);

    const DetectorHandle never = decidable_detector(ab, [](const Word&) { return false; }, true);
    oracle::Rng rng(43);
    CHECK(handle_fault(never, oracle::random_word(rng, 2, 10, 10)) == 0);
}

TEST_CASE("decidable_detector audit catches non-prefix-free predicates") {
    const WordSet bad = set_of({"a", "a b"});
    const auto p = [&](const Word& u) { return bad.count(u) > 0; };
    DetectorHandle audited = decidable_detector(ab, p, true);
    CHECK_THROWS_AS(audited.step(0), NotPrefixFree);
    DetectorHandle plain = decidable_detector(ab, p, false);
    CHECK(plain.step(0).kind == StepKind::fault);
}

TEST_CASE("decidable detectors agree with explicit sets") {
    oracle::Rng rng(44);
    for (int i = 0; i < 50; ++i) {
        const WordSet p = random_prefix_free(rng, 4);
        const DetectorHandle dec = decidable_detector(ab, [&](const Word& u) { return p.count(u) > 0; }, true);
        const RootedDetector exp = detector_from_explicit_set(ab, p);
        const oracle::Table t = oracle::table_of(exp.detector);
        for (const Word& u : oracle::words_up_to(2, 6))
            REQUIRE(handle_fault(dec, u) == oracle::first_fault(t, exp.initial, u));
    }
}

TEST_CASE("re_detector") {
    const DetectorHandle b_first = re_detector(ab, Enumerator::listing({w("b")}), 10);
    CHECK(b_first.step(1).kind == StepKind::fault);

    // never emits anything, never ends
    const Enumerator silent([] { return Enumerator::Generator([] { return Emission::idle(); }); });
    const HandleStep stuck = re_detector(ab, silent, 10).step(0);
    CHECK(stuck.kind == StepKind::unknown);
    CHECK(stuck.work == 10);

    const DetectorHandle just = re_detector(ab, Enumerator::listing({w("a b")}), 10);
    const HandleStep s1 = just.step(0);
    REQUIRE(s1.kind != StepKind::fault);
    REQUIRE(s1.next.has_value());
    CHECK(s1.next->step(1).kind == StepKind::fault);
    CHECK(s1.next->step(0).kind == StepKind::ok);

    CHECK_THROWS(re_detector(ab, Enumerator::listing({}), 0));
    const DetectorHandle foreign = re_detector(ab, Enumerator::listing({Word{5}}), 10);
    CHECK_THROWS_AS(foreign.step(0), Error);
}

TEST_CASE("re detectors with a generous budget agree with explicit sets") {
    oracle::Rng rng(45);
    for (int i = 0; i < 50; ++i) {
        const WordSet p = random_prefix_free(rng, 3);
        std::vector<Word> listing(p.begin(), p.end());
        std::shuffle(listing.begin(), listing.end(), rng);
        const DetectorHandle re = re_detector(ab, Enumerator::listing(listing), 64 * (listing.size() + 1));
        const RootedDetector exp = detector_from_explicit_set(ab, p);
        const oracle::Table t = oracle::table_of(exp.detector);
        for (const Word& u : oracle::words_up_to(2, 4))
            REQUIRE(handle_fault(re, u) == oracle::first_fault(t, exp.initial, u));
    }
}

TEST_CASE("check_universal_family") {
    CHECK(check_universal_family({WordSet{}}, 2).closed);
    const FamilyCheck single = check_universal_family({set_of({"a b"})}, 2);
    CHECK_FALSE(single.closed);
    CHECK(single.member == 0);
    CHECK(single.symbol == 0);
    CHECK(check_universal_family({set_of({"a b"}), set_of({"b"}), WordSet{}}, 2).closed);
}

TEST_CASE("universal_detector_for") {
    const UniversalDetector trivial = universal_detector_for(ab, {WordSet{}});
    CHECK(trivial.detector.size() == 1);
    CHECK(minimal_violation_words(trivial.detector, 0, 4).empty());

    const UniversalDetector two = universal_detector_for(ab, {set_of({"b"}), WordSet{}});
    CHECK(two.detector.size() == 2);
    CHECK(two.detector.faults(two.state_of.at(set_of({"b"})), 1));

    const std::vector<WordSet> closure{set_of({"a b"}), set_of({"b"}), WordSet{}};
    const UniversalDetector u = universal_detector_for(ab, closure);
    for (const WordSet& p : closure)
        CHECK(minimal_violation_words(u.detector, u.state_of.at(p), 6) == p);
    const RootedDetector trie = detector_from_explicit_set(ab, set_of({"a b"}));
    CHECK(minimal_violation_words(trie.detector, trie.initial, 6) ==
          minimal_violation_words(u.detector, u.state_of.at(set_of({"a b"})), 6));
    CHECK(trie.detector.size() == u.detector.size());

    CHECK_THROWS_AS(universal_detector_for(ab, {set_of({"a b"})}), std::invalid_argument);
}

TEST_CASE("derivative closures are universal families") {
    oracle::Rng rng(46);
    for (int i = 0; i < 100; ++i) {
        const WordSet p = random_prefix_free(rng, 4);
        std::set<WordSet> closure{p};
        std::vector<WordSet> todo{p};
        while (!todo.empty()) {
            const WordSet cur = todo.back();
            todo.pop_back();
            for (Symbol n = 0; n < 2; ++n)
                if (!cur.count(Word{n}) && closure.insert(derivative_set(n, cur)).second)
                    todo.push_back(derivative_set(n, cur));
        }
        const std::vector<WordSet> family(closure.begin(), closure.end());
        REQUIRE(check_universal_family(family, 2).closed);
        const UniversalDetector u = universal_detector_for(ab, family);
        for (const WordSet& q : family)
            REQUIRE(minimal_violation_words(u.detector, u.state_of.at(q), 6) == q);
        if (closure.count(WordSet{}) && family.size() > 1) {
            std::vector<WordSet> missing(family.begin(), family.end());
            missing.erase(std::find(missing.begin(), missing.end(), WordSet{}));
            const FamilyCheck check = check_universal_family(missing, 2);
            // ∅ is reached here, so dropping it breaks closure
            REQUIRE_FALSE(check.closed);
            REQUIRE_THROWS(universal_detector_for(ab, missing));
        }
    }
}
