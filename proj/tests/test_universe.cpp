#include <doctest.h>

#include <algorithm>
#include <set>

#include "qsl/universe.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qsl;

namespace {

// a1, a2 of species e; b1 of species mu (all m-atoms); one M-atom c of Fe.
Universe mixed_universe() {
    UniverseBuilder b;
    b.add_m_atom("a1", "e");
    b.add_m_atom("a2", "e");
    b.add_m_atom("b1", "mu");
    b.add_M_atom("c", "Fe");
    return b.build();
}

EntityHandle h(const Universe& u, const char* id) {
    auto found = u.find(id);
    REQUIRE(found);
    return *found;
}

} // namespace

TEST_CASE("builder validates its input") {
    UniverseBuilder b;
    b.add_m_atom("a", "e");
    CHECK_THROWS_AS(b.add_m_atom("a", "e"), validation_error);       // duplicate id
    CHECK_THROWS_AS(b.add_M_atom("b", "e"), validation_error);       // species crosses kinds
    CHECK_THROWS_AS(b.add_qset("q", {EntityHandle{42}}), validation_error);
    EntityHandle a = *b.current().find("a");
    CHECK_THROWS_AS(b.add_qset("q", {a, a}), validation_error);      // duplicate member
    CHECK_THROWS_AS(b.add_qset("q", {a}, true), validation_error);   // zfu lie
    b.add_qset("q", {a}, false);
    CHECK(b.current().size() == 2);
}

TEST_CASE("zfu flag is the transitive-closure predicate") {
    UniverseBuilder b;
    EntityHandle fe = b.add_M_atom("fe", "Fe");
    EntityHandle cu = b.add_M_atom("cu", "Cu");
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle zs = b.add_qset("zs", {fe, cu});
    EntityHandle deep = b.add_qset("deep", {zs});
    EntityHandle dirty = b.add_qset("dirty", {zs, e1});
    EntityHandle nested_dirty = b.add_qset("nested_dirty", {dirty});
    EntityHandle empty = b.add_qset("empty", {});
    Universe u = b.build();

    CHECK(u.is_zfu_set(zs));
    CHECK(u.is_zfu_set(deep));
    CHECK(u.is_zfu_set(empty));
    CHECK_FALSE(u.is_zfu_set(dirty));
    CHECK_FALSE(u.is_zfu_set(nested_dirty)); // m-atom sits two levels down
}

TEST_CASE("indistinguishability of atoms") {
    Universe u = mixed_universe();
    CHECK(indist(u, h(u, "a1"), h(u, "a2")));       // same species
    CHECK_FALSE(indist(u, h(u, "a1"), h(u, "b1"))); // distinct species
    CHECK_FALSE(indist(u, h(u, "a1"), h(u, "c")));  // kinds differ
    CHECK_THROWS_AS(indist(u, EntityHandle{99}, h(u, "a1")), validation_error);
}

TEST_CASE("indistinguishability of qsets follows matching quotients") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle e3 = b.add_m_atom("e3", "e");
    EntityHandle e4 = b.add_m_atom("e4", "e");
    EntityHandle mu1 = b.add_m_atom("mu1", "mu");
    EntityHandle x = b.add_qset("x", {e1, e2});
    EntityHandle y = b.add_qset("y", {e3, e4});
    EntityHandle w = b.add_qset("w", {e1, e2, e3});
    EntityHandle mixed = b.add_qset("mixed", {e1, mu1});
    Universe u = b.build();

    CHECK(indist(u, x, y));                 // both: one class of two e's
    CHECK(oracle::naive_indist(u, x, y));   // the explicit quotient matcher agrees
    CHECK_FALSE(indist(u, x, w));           // class sizes 2 vs 3
    CHECK_FALSE(indist(u, x, mixed));       // mu class unmatched
    CHECK_FALSE(indist(u, x, e1));          // qset vs atom
}

TEST_CASE("indist matches the naive oracle on random universes") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Universe u = testgen::random_universe(seed);
        auto entities = u.all_entities();
        for (EntityHandle a : entities)
            for (EntityHandle b : entities)
                CHECK(indist(u, a, b) == oracle::naive_indist(u, a, b));
    }
}

TEST_CASE("indist is an equivalence relation") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        Universe u = testgen::random_universe(seed);
        auto es = u.all_entities();
        for (EntityHandle a : es) {
            CHECK(indist(u, a, a));
            for (EntityHandle b : es) {
                CHECK(indist(u, a, b) == indist(u, b, a));
                for (EntityHandle c : es)
                    if (indist(u, a, b) && indist(u, b, c))
                        CHECK(indist(u, a, c));
            }
        }
    }
}

TEST_CASE("extensional equality") {
    UniverseBuilder b;
    EntityHandle fe1 = b.add_M_atom("fe1", "Fe");
    EntityHandle fe2 = b.add_M_atom("fe2", "Fe");
    EntityHandle cu = b.add_M_atom("cu", "Cu");
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle q1 = b.add_qset("q1", {fe1, cu});
    EntityHandle q2 = b.add_qset("q2", {cu, fe1}); // same collection, new handle
    EntityHandle q3 = b.add_qset("q3", {fe2, cu});
    Universe u = b.build();

    CHECK(ext_eq(u, q1, q2) == ExtEq::equal);
    CHECK(ext_eq(u, q1, q3) == ExtEq::distinct); // fe1 vs fe2 are distinct handles
    CHECK(ext_eq(u, fe1, fe2) == ExtEq::equal);  // M-atoms, same species
    CHECK(ext_eq(u, fe1, cu) == ExtEq::distinct);
    CHECK(ext_eq(u, e1, fe1) == ExtEq::not_applicable);
    CHECK(ext_eq(u, e1, e1) == ExtEq::not_applicable);
    CHECK(ext_eq(u, q1, fe1) == ExtEq::distinct);

    SUBCASE("equal qsets agree on qc and membership verdicts") {
        CHECK(qc(u, q1) == qc(u, q2));
        for (EntityHandle t : u.all_entities()) {
            const auto& m1 = u.members_of(q1);
            const auto& m2 = u.members_of(q2);
            CHECK(std::binary_search(m1.begin(), m1.end(), t) ==
                  std::binary_search(m2.begin(), m2.end(), t));
        }
    }
}

TEST_CASE("ext_eq is an equivalence on qsets and M-atoms") {
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        Universe u = testgen::random_universe(seed);
        std::vector<EntityHandle> domain;
        for (EntityHandle e : u.all_entities())
            if (!u.is_m_atom(e))
                domain.push_back(e);
        for (EntityHandle a : domain) {
            CHECK(ext_eq(u, a, a) == ExtEq::equal);
            for (EntityHandle b : domain) {
                CHECK(ext_eq(u, a, b) == ext_eq(u, b, a));
                for (EntityHandle c : domain)
                    if (ext_eq(u, a, b) == ExtEq::equal &&
                        ext_eq(u, b, c) == ExtEq::equal)
                        CHECK(ext_eq(u, a, c) == ExtEq::equal);
            }
        }
    }
}

TEST_CASE("ext_eq implies indist on qsets") {
    for (std::uint64_t seed = 300; seed < 315; ++seed) {
        Universe u = testgen::random_universe(seed);
        for (EntityHandle a : u.all_qsets())
            for (EntityHandle b : u.all_qsets())
                if (ext_eq(u, a, b) == ExtEq::equal)
                    CHECK(indist(u, a, b));
    }
}

TEST_CASE("quasi-cardinals") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle e3 = b.add_m_atom("e3", "e");
    EntityHandle fe = b.add_M_atom("fe", "Fe");
    EntityHandle empty = b.add_qset("empty", {});
    EntityHandle three = b.add_qset("three", {e1, e2, e3});
    EntityHandle zset = b.add_qset("zset", {fe});
    Universe u = b.build();

    CHECK(qc(u, empty).value == 0);
    CHECK(qc(u, three).value == 3);
    // For a ZFU-set the quasi-cardinal is the classical cardinal.
    CHECK(u.is_zfu_set(zset));
    CHECK(qc(u, zset).value == u.members_of(zset).size());
    CHECK_THROWS_AS(qc(u, e1), validation_error);
}

TEST_CASE("weak pair collects every indistinguishable entity") {
    Universe u = mixed_universe();
    EntityHandle a1 = h(u, "a1"), a2 = h(u, "a2"), b1 = h(u, "b1"), c = h(u, "c");

    SUBCASE("pair across species") {
        QSetResult r = weak_pair(u, a1, b1);
        std::vector<EntityHandle> expected{a1, a2, b1};
        CHECK(r.universe.members_of(r.qset) == expected);
        CHECK(qc(r.universe, r.qset).value == 3);
        CHECK(oracle::weak_pair_members(u, a1, b1) == expected);
    }
    SUBCASE("the 'singleton' can have qc greater than 1") {
        QSetResult r = weak_pair(u, a1, a2);
        CHECK(qc(r.universe, r.qset).value == 2);
        std::vector<EntityHandle> expected{a1, a2};
        CHECK(r.universe.members_of(r.qset) == expected);
    }
    SUBCASE("lone M-atom") {
        UniverseBuilder b;
        EntityHandle lone = b.add_M_atom("c", "Fe");
        Universe single = b.build();
        QSetResult r = weak_pair(single, lone, lone);
        CHECK(qc(r.universe, r.qset).value == 1);
    }
    SUBCASE("agrees with the linear-scan oracle on random triples") {
        for (std::uint64_t seed = 400; seed < 420; ++seed) {
            Universe v = testgen::random_universe(seed);
            testgen::Rng rng(seed * 7 + 1);
            auto es = v.all_entities();
            for (int i = 0; i < 10; ++i) {
                EntityHandle x = es[rng.below(es.size())];
                EntityHandle y = es[rng.below(es.size())];
                QSetResult r = weak_pair(v, x, y);
                CHECK(r.universe.members_of(r.qset) ==
                      oracle::weak_pair_members(v, x, y));
            }
        }
    }
    (void)c;
}

TEST_CASE("power qset enumerates every sub-collection") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle mu1 = b.add_m_atom("mu1", "mu");
    EntityHandle x = b.add_qset("x", {e1, e2, mu1});
    EntityHandle pair = b.add_qset("pair", {e1, e2});
    Universe u = b.build();

    SUBCASE("qc 3 gives 8") {
        QSetResult r = power_qset(u, x);
        CHECK(qc(r.universe, r.qset).value == 8);
        // Every bitmask subset occurs exactly once among the members.
        std::set<std::vector<EntityHandle>> seen;
        for (EntityHandle s : r.universe.members_of(r.qset))
            seen.insert(r.universe.members_of(s));
        std::set<std::vector<EntityHandle>> expected;
        std::vector<EntityHandle> ms = u.members_of(x);
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<EntityHandle> sub;
            for (unsigned i = 0; i < 3; ++i)
                if (mask & (1u << i))
                    sub.push_back(ms[i]);
            std::sort(sub.begin(), sub.end());
            expected.insert(sub);
        }
        CHECK(seen == expected);
    }
    SUBCASE("empty qset") {
        UniverseBuilder bb;
        EntityHandle empty = bb.add_qset("empty", {});
        Universe v = bb.build();
        QSetResult r = power_qset(v, empty);
        CHECK(qc(r.universe, r.qset).value == 1);
        CHECK(r.universe.members_of(r.qset) == std::vector<EntityHandle>{empty});
    }
    SUBCASE("two indistinguishable m-atoms give two distinct unitary sub-qsets") {
        QSetResult r = power_qset(u, pair);
        CHECK(qc(r.universe, r.qset).value == 4);
        std::size_t unitary = 0;
        for (EntityHandle s : r.universe.members_of(r.qset))
            if (qc(r.universe, s).value == 1)
                ++unitary;
        CHECK(unitary == 2);
    }
    SUBCASE("bound is enforced") {
        CHECK_THROWS_AS(power_qset(u, x, 2), resource_error);
    }
}

TEST_CASE("sub-qset witnesses for every cardinal") {
    UniverseBuilder b;
    std::vector<EntityHandle> atoms;
    for (int i = 0; i < 5; ++i)
        atoms.push_back(b.add_m_atom("e" + std::to_string(i), "e"));
    EntityHandle x = b.add_qset("x", atoms);
    Universe u = b.build();

    QSetResult r3 = sub_qset_of_card(u, x, 3);
    CHECK(qc(r3.universe, r3.qset).value == 3);
    for (EntityHandle m : r3.universe.members_of(r3.qset))
        CHECK(std::binary_search(u.members_of(x).begin(), u.members_of(x).end(), m));

    QSetResult r0 = sub_qset_of_card(u, x, 0);
    CHECK(qc(r0.universe, r0.qset).value == 0);

    QSetResult r5 = sub_qset_of_card(u, x, 5);
    CHECK(r5.universe.members_of(r5.qset) == u.members_of(x));
    CHECK(r5.qset == x); // reuse: same collection is the qset itself

    CHECK_THROWS_AS(sub_qset_of_card(u, x, 6), validation_error);

    SUBCASE("deterministic witness") {
        QSetResult again = sub_qset_of_card(u, x, 3);
        CHECK(again.universe.members_of(again.qset) ==
              r3.universe.members_of(r3.qset));
    }
}

TEST_CASE("quotient partitions an atom-level qset") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle mu1 = b.add_m_atom("mu1", "mu");
    EntityHandle x = b.add_qset("x", {e1, e2, mu1});
    EntityHandle pure = b.add_qset("pure", {e1, e2});
    EntityHandle empty = b.add_qset("empty", {});
    EntityHandle nested = b.add_qset("nested", {pure});
    Universe u = b.build();

    SUBCASE("two classes") {
        QSetResult r = quotient(u, x);
        const Universe& v = r.universe;
        auto classes = v.members_of(r.qset);
        REQUIRE(classes.size() == 2);
        CHECK(v.members_of(classes[0]) == std::vector<EntityHandle>{e1, e2});
        CHECK(v.members_of(classes[1]) == std::vector<EntityHandle>{mu1});
        // Union is x, classes disjoint and internally indistinguishable.
        std::vector<EntityHandle> all;
        for (EntityHandle cls : classes)
            for (EntityHandle m : v.members_of(cls))
                all.push_back(m);
        std::sort(all.begin(), all.end());
        CHECK(all == u.members_of(x));
    }
    SUBCASE("single class and empty") {
        QSetResult r = quotient(u, pure);
        CHECK(r.universe.members_of(r.qset).size() == 1);
        QSetResult re = quotient(u, empty);
        CHECK(re.universe.members_of(re.qset).empty());
    }
    SUBCASE("rank restriction") {
        CHECK_THROWS_AS(quotient(u, nested), validation_error);
    }
    SUBCASE("partition properties on random universes") {
        for (std::uint64_t seed = 500; seed < 510; ++seed) {
            testgen::UniverseGenOptions opts;
            opts.nested = false;
            Universe v = testgen::random_universe(seed, opts);
            for (EntityHandle q : v.all_qsets()) {
                QSetResult r = quotient(v, q);
                const Universe& w = r.universe;
                std::uint64_t total = 0;
                for (EntityHandle cls : w.members_of(r.qset)) {
                    auto ms = w.members_of(cls);
                    CHECK(!ms.empty());
                    total += ms.size();
                    for (EntityHandle p : ms)
                        for (EntityHandle s : ms)
                            CHECK(indist(w, p, s));
                }
                CHECK(total == qc(v, q).value);
                auto classes = w.members_of(r.qset);
                for (std::size_t i = 0; i < classes.size(); ++i)
                    for (std::size_t j = i + 1; j < classes.size(); ++j)
                        CHECK_FALSE(indist(w, w.members_of(classes[i]).front(),
                                           w.members_of(classes[j]).front()));
            }
        }
    }
}

TEST_CASE("similarity and Q-similarity") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle e3 = b.add_m_atom("e3", "e");
    EntityHandle mu1 = b.add_m_atom("mu1", "mu");
    EntityHandle x = b.add_qset("x", {e1});
    EntityHandle y = b.add_qset("y", {e2, e3});
    EntityHandle z = b.add_qset("z", {mu1});
    EntityHandle empty1 = b.add_qset("empty1", {});
    EntityHandle empty2 = b.add_qset("empty2", {});
    Universe u = b.build();

    CHECK(sim(u, x, y));
    CHECK_FALSE(qsim(u, x, y)); // qc 1 vs 2
    CHECK(sim(u, empty1, empty2));
    CHECK(qsim(u, empty1, empty2)); // vacuous
    CHECK_FALSE(sim(u, x, z));      // distinct species

    SUBCASE("qsim implies sim; symmetric and transitive; reflexive when "
            "internally homogeneous") {
        for (std::uint64_t seed = 600; seed < 615; ++seed) {
            Universe v = testgen::random_universe(seed);
            auto qs = v.all_qsets();
            for (EntityHandle a : qs) {
                bool homogeneous = true;
                for (EntityHandle p : v.members_of(a))
                    for (EntityHandle q : v.members_of(a))
                        if (!indist(v, p, q))
                            homogeneous = false;
                if (homogeneous)
                    CHECK(qsim(v, a, a));
                for (EntityHandle b2 : qs) {
                    if (qsim(v, a, b2))
                        CHECK(sim(v, a, b2));
                    CHECK(qsim(v, a, b2) == qsim(v, b2, a));
                    for (EntityHandle c : qs)
                        if (qsim(v, a, b2) && qsim(v, b2, c))
                            CHECK(qsim(v, a, c));
                }
            }
        }
    }
}

TEST_CASE("ordered pairs collapse on indistinguishable arguments") {
    Universe u = mixed_universe();
    EntityHandle a1 = h(u, "a1"), a2 = h(u, "a2"), b1 = h(u, "b1");

    SUBCASE("collapse") {
        QSetResult xy = ordered_qpair(u, a1, a2);
        QSetResult yx = ordered_qpair(xy.universe, a2, a1);
        CHECK(ext_eq(yx.universe, xy.qset, yx.qset) == ExtEq::equal);

        // [[x]] built in the same chain.
        QSetResult inner = weak_pair(yx.universe, a1, a1);
        QSetResult outer = weak_pair(inner.universe, inner.qset, inner.qset);
        CHECK(ext_eq(outer.universe, xy.qset, outer.qset) == ExtEq::equal);
    }
    SUBCASE("no collapse across species") {
        QSetResult xy = ordered_qpair(u, a1, b1);
        QSetResult yx = ordered_qpair(xy.universe, b1, a1);
        CHECK(ext_eq(yx.universe, xy.qset, yx.qset) == ExtEq::distinct);
    }
}

TEST_CASE("quasi-function condition") {
    UniverseBuilder b;
    EntityHandle e1 = b.add_m_atom("e1", "e");
    EntityHandle e2 = b.add_m_atom("e2", "e");
    EntityHandle mu1 = b.add_m_atom("mu1", "mu");
    EntityHandle mu2 = b.add_m_atom("mu2", "mu");
    EntityHandle fe = b.add_M_atom("fe", "Fe");
    EntityHandle cu = b.add_M_atom("cu", "Cu");
    Universe u = b.build();

    CHECK(check_quasi_function(u, {{e1, mu1}, {e2, mu2}}));
    CHECK_FALSE(check_quasi_function(u, {{e1, mu1}, {e2, fe}}));
    // Without m-atoms this is classical single-valuedness.
    CHECK(check_quasi_function(u, {{fe, cu}, {cu, fe}}));
    CHECK_FALSE(check_quasi_function(u, {{fe, cu}, {fe, fe}}));
    CHECK(check_quasi_function(u, {}));
}

TEST_CASE("witness closure adds the expected weak pairs once") {
    UniverseBuilder b;
    b.add_m_atom("a1", "e");
    b.add_m_atom("a2", "e");
    b.add_m_atom("b1", "f");
    b.add_m_atom("b2", "f");
    Universe u = b.build();

    ClosureStats stats;
    Universe closed = witness_closure(u, ClosureOptions{true, false, 12}, &stats);
    CHECK(stats.weak_pairs_added == 3); // {a}, {b}, {a,b} member sets
    CHECK(closed.size() == 7);

    // Idempotent on the already-present member sets.
    ClosureStats again;
    Universe twice = witness_closure(closed, ClosureOptions{true, false, 12}, &again);
    CHECK(twice.size() > closed.size()); // new pairs of the new qsets appear
    for (EntityHandle q : closed.all_qsets())
        CHECK(twice.find(closed.id_of(q)).has_value());
}
