#include <doctest.h>

#include "qsl/formula.hpp"
#include "qsl/universe.hpp"

#include "support/generators.hpp"
#include "support/reference_eval.hpp"

using namespace qsl;

namespace {

Universe four_atoms() {
    UniverseBuilder b;
    b.add_m_atom("a1", "e");
    b.add_m_atom("a2", "e");
    b.add_m_atom("b1", "f");
    b.add_m_atom("b2", "f");
    return b.build();
}

} // namespace

TEST_CASE("indistinguishability transitivity holds as a formula everywhere") {
    auto f = parse("forall x forall y forall z ((x == y & y == z) -> x == z)");
    for (std::uint64_t seed = 700; seed < 712; ++seed)
        CHECK(evaluate(testgen::random_universe(seed), *f));
}

TEST_CASE("existsQ is bounded by the declared qsets") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    b.add_qset("pair", {e1, e2});
    Universe u = b.build();
    CHECK_FALSE(evaluate(u, *parse("existsQ z (qc(z) =E 3)")));
    CHECK(evaluate(u, *parse("existsQ z (qc(z) =E 2)")));
}

TEST_CASE("weak-pair witnesses survive weak-pair closure") {
    Universe closed = witness_closure(four_atoms(), ClosureOptions{true, false, 12});
    auto inner = parse("existsQ z forall t (t in z <-> (t == x | t == y))");
    for (EntityHandle x : closed.all_atoms())
        for (EntityHandle y : closed.all_atoms()) {
            Valuation v{{"x", x}, {"y", y}};
            CHECK(evaluate(closed, *inner, v));
        }
}

TEST_CASE("extensional equality on an m-atom is a sort error with a span") {
    UniverseBuilder b;
    b.add_m_atom("e1", "e");
    b.add_M_atom("fe", "Fe");
    Universe u = b.build();
    std::string src = "exists x exists y (m(x) & x =E y)";
    try {
        evaluate(u, *parse(src));
        FAIL("expected a sort error");
    } catch (const eval_error& e) {
        CHECK(src.substr(e.span().begin, e.span().end - e.span().begin) ==
              "x =E y");
    }
}

TEST_CASE("unknown free variables are rejected") {
    Universe u = four_atoms();
    CHECK_THROWS_AS(evaluate(u, *parse("m(loose)")), validation_error);
    Valuation v{{"loose", u.handle_at(0)}};
    CHECK(evaluate(u, *parse("m(loose)"), v));
}

TEST_CASE("cardinal machinery: qc, card, powers, Cd") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    b.add_qset("pair", {e1, e2});
    Universe u = b.build();
    CHECK(evaluate(u, *parse("forallQ x (qc(x) =E card(x))")));
    CHECK(evaluate(u, *parse("existsQ x (2^qc(x) =E 4)")));
    CHECK(evaluate(u, *parse("forallQ x (Cd(qc(x)))")));
    CHECK_FALSE(evaluate(u, *parse("exists x (Cd(x))")));
    CHECK_THROWS_AS(evaluate(u, *parse("exists x (qc(x) =E 0)")), eval_error);
}

TEST_CASE("existsQ! compares witnesses extensionally") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    b.add_qset("q1", {e1});
    b.add_qset("q2", {e1}); // same collection, different handle
    b.add_qset("q3", {e2});
    Universe u = b.build();
    // Both q1 and q2 satisfy the body, but they are extensionally one qset.
    Valuation v{{"a", e1}};
    CHECK(evaluate(u, *parse("existsQ! z (a in z)"), v));
    // e2's singleton and e1's singletons are extensionally different.
    CHECK_FALSE(evaluate(u, *parse("existsQ! z (qc(z) =E 1)")));
    CHECK_FALSE(evaluate(u, *parse("existsQ! z (qc(z) =E 5)")));
}

TEST_CASE("relativized quantifiers imply their plain forms") {
    testgen::Rng rng(424242);
    testgen::FormulaGenOptions opts;
    opts.max_depth = 2;
    opts.allow_ext_eq = false;
    for (std::uint64_t seed = 800; seed < 815; ++seed) {
        Universe u = testgen::random_universe(seed);
        for (int i = 0; i < 12; ++i) {
            auto body = testgen::random_formula(rng, opts);
            // Wrap the same body under each quantifier pair via text.
            std::string text = print(*body);
            auto exists_q = parse("existsQ w0 (" + text + ")");
            auto exists_plain = parse("exists w0 (" + text + ")");
            auto forall_plain = parse("forall w0 (" + text + ")");
            auto forall_q = parse("forallQ w0 (" + text + ")");
            Valuation v;
            // Bind the generated formula's own top binder chain: the random
            // body is closed, so only w0 is ours and stays unused inside.
            if (evaluate(u, *exists_q, v))
                CHECK(evaluate(u, *exists_plain, v));
            if (evaluate(u, *forall_plain, v))
                CHECK(evaluate(u, *forall_q, v));
        }
    }
}

TEST_CASE("evaluation is congruent under indistinguishable swaps on "
          "saturated universes") {
    testgen::Rng rng(31337);
    testgen::FormulaGenOptions opts;
    opts.max_depth = 3;
    opts.allow_ext_eq = false; // the pure language only
    std::size_t swaps_tested = 0;
    for (std::uint64_t seed = 900; seed < 915; ++seed) {
        testgen::UniverseGenOptions uopts;
        uopts.nested = false;
        uopts.weak_pair_closure = true; // saturate every collection
        Universe u = testgen::random_universe(seed, uopts);
        auto atoms = u.all_atoms();
        if (atoms.empty())
            continue;
        for (int i = 0; i < 8; ++i) {
            // Free variable v occurs under predicates, membership and a
            // closed random tail, all without =E.
            std::string text = print(*testgen::random_formula(rng, opts));
            auto probe = parse("exists w (v in w & m(v) | (" + text + "))");
            for (EntityHandle a : atoms)
                for (EntityHandle b2 : atoms) {
                    if (!indist(u, a, b2))
                        continue;
                    Valuation va{{"v", a}}, vb{{"v", b2}};
                    CHECK(evaluate(u, *probe, va) == evaluate(u, *probe, vb));
                    ++swaps_tested;
                }
        }
    }
    CHECK(swaps_tested > 100);
}

TEST_CASE("library evaluator agrees with the naive reference") {
    testgen::Rng rng(555);
    std::size_t compared = 0;
    for (std::uint64_t seed = 1000; seed < 1012; ++seed) {
        testgen::UniverseGenOptions uopts;
        uopts.max_atoms = 5;
        uopts.max_qsets = 3;
        Universe u = testgen::random_universe(seed, uopts);
        for (int i = 0; i < 25; ++i) {
            auto f = testgen::random_formula(rng);
            auto main = oracle::classified_evaluate(u, *f);
            auto ref = oracle::reference_evaluate(u, *f);
            CAPTURE(print(*f));
            CHECK(main.outcome == ref.outcome);
            ++compared;
        }
    }
    CHECK(compared == 300);
}
