#include "qsl/axiom_corpus.hpp"

#include <algorithm>
#include <map>

#include "qsl/formula.hpp"

namespace qsl {

const char* corpus_axiom_name(CorpusAxiom a) {
    switch (a) {
    case CorpusAxiom::weak_pair: return "weak_pair";
    case CorpusAxiom::separation: return "separation";
    case CorpusAxiom::quasi_cardinality: return "quasi_cardinality";
    case CorpusAxiom::subqset_cardinals: return "subqset_cardinals";
    case CorpusAxiom::power_qset: return "power_qset";
    case CorpusAxiom::weak_extensionality: return "weak_extensionality";
    }
    return "?";
}

std::optional<CorpusAxiom> corpus_axiom_from_name(std::string_view name) {
    for (CorpusAxiom a : all_corpus_axioms())
        if (name == corpus_axiom_name(a))
            return a;
    return std::nullopt;
}

std::vector<CorpusAxiom> all_corpus_axioms() {
    return {CorpusAxiom::weak_pair,         CorpusAxiom::separation,
            CorpusAxiom::quasi_cardinality, CorpusAxiom::subqset_cardinals,
            CorpusAxiom::power_qset,        CorpusAxiom::weak_extensionality};
}

namespace {

// The weak-pair biconditional factors entirely through indistinguishability
// signatures: the witness member set, t-membership, and t == x / t == y all
// depend on (sig(x), sig(y)) only. One witness per signature pair therefore
// verifies every pair with those signatures.
CorpusVerdict check_weak_pair(const Universe& u) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::weak_pair;
    auto entities = u.all_entities();
    auto bicond = parse("forall t (t in z <-> t == x | t == y)");

    std::map<std::pair<std::uint32_t, std::uint32_t>,
             std::pair<EntityHandle, EntityHandle>>
        representatives;
    std::size_t total_pairs = 0;
    for (std::size_t i = 0; i < entities.size(); ++i)
        for (std::size_t j = i; j < entities.size(); ++j) {
            ++total_pairs;
            std::uint32_t si = u.sig_of(entities[i]);
            std::uint32_t sj = u.sig_of(entities[j]);
            representatives.try_emplace({std::min(si, sj), std::max(si, sj)},
                                        entities[i], entities[j]);
        }

    for (const auto& [sigs, pair] : representatives) {
        (void)sigs;
        auto [x, y] = pair;
        QSetResult r = weak_pair(u, x, y);
        Valuation v{{"x", x}, {"y", y}, {"z", r.qset}};
        if (!evaluate(r.universe, *bicond, v)) {
            verdict.holds = false;
            verdict.violation = "weak pair of '" + u.id_of(x) + "' and '" +
                                u.id_of(y) + "' fails its biconditional";
            return verdict;
        }
        verdict.witnesses.push_back("[" + u.id_of(x) + "," + u.id_of(y) + "] = '" +
                                    r.universe.id_of(r.qset) + "' (qc " +
                                    std::to_string(qc(r.universe, r.qset).value) +
                                    ")");
    }
    verdict.instances_checked = total_pairs;
    return verdict;
}

CorpusVerdict check_separation(const Universe& u) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::separation;
    // Stock schema instances: m(t), M(t), t == c with c the first atom.
    std::vector<std::pair<std::string, std::string>> instances = {
        {"m(t)", "m(t)"}, {"M(t)", "M(t)"}};
    auto atoms = u.all_atoms();
    Valuation env;
    if (!atoms.empty()) {
        env["c"] = atoms.front();
        instances.push_back({"t == c", "t == c (c = '" + u.id_of(atoms.front()) + "')"});
    }
    auto bicond = parse("forall t (t in s <-> t in x & m(t))");

    for (EntityHandle x : u.all_qsets()) {
        for (const auto& [text, label] : instances) {
            auto alpha = parse(text);
            QSetResult r = separation(u, x, *alpha, "t", env);
            // Verify [t in x : alpha(t)] by the biconditional; the template's
            // m(t) conjunct is a placeholder swapped for the instance formula.
            auto check = bicond->clone();
            check->f1->f2->f2 = alpha->clone();
            Valuation v = env;
            v["x"] = x;
            v["s"] = r.qset;
            if (!evaluate(r.universe, *check, v)) {
                verdict.holds = false;
                verdict.violation = "separation of '" + u.id_of(x) + "' by " +
                                    label + " fails its biconditional";
                return verdict;
            }
            ++verdict.instances_checked;
        }
        verdict.witnesses.push_back("separations of '" + u.id_of(x) + "' verified");
    }
    return verdict;
}

CorpusVerdict check_quasi_cardinality(const Universe& u) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::quasi_cardinality;
    for (EntityHandle x : u.all_qsets()) {
        QuasiCardinal q = qc(u, x);
        // Independent recount of the member collection.
        std::uint64_t recount = 0;
        for (EntityHandle e : u.all_entities()) {
            const auto& ms = u.members_of(x);
            if (std::binary_search(ms.begin(), ms.end(), e))
                ++recount;
        }
        if (q.value != recount) {
            verdict.holds = false;
            verdict.violation = "qc('" + u.id_of(x) + "') = " +
                                std::to_string(q.value) + " but recount gives " +
                                std::to_string(recount);
            return verdict;
        }
        if (u.is_zfu_set(x) && q.value != u.members_of(x).size()) {
            verdict.holds = false;
            verdict.violation = "ZFU-set '" + u.id_of(x) +
                                "' has qc different from its classical cardinal";
            return verdict;
        }
        if (u.members_of(x).empty() && q.value != 0) {
            verdict.holds = false;
            verdict.violation = "empty qset '" + u.id_of(x) + "' has nonzero qc";
            return verdict;
        }
        ++verdict.instances_checked;
    }
    return verdict;
}

CorpusVerdict check_subqset_cardinals(const Universe& u) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::subqset_cardinals;
    auto subset_formula = parse("forall t (t in y -> t in x)");
    for (EntityHandle x : u.all_qsets()) {
        std::uint64_t alpha = qc(u, x).value;
        for (std::uint64_t beta = 0; beta <= alpha; ++beta) {
            QSetResult r = sub_qset_of_card(u, x, beta);
            Valuation v{{"x", x}, {"y", r.qset}};
            if (qc(r.universe, r.qset).value != beta ||
                !evaluate(r.universe, *subset_formula, v)) {
                verdict.holds = false;
                verdict.violation = "no verified sub-qset of '" + u.id_of(x) +
                                    "' with qc " + std::to_string(beta);
                return verdict;
            }
            ++verdict.instances_checked;
        }
        verdict.witnesses.push_back("'" + u.id_of(x) + "': sub-qsets for qc 0.." +
                                    std::to_string(alpha));
    }
    return verdict;
}

CorpusVerdict check_power_qset(const Universe& u, const CorpusOptions& opts) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::power_qset;
    auto count_formula = parse("qc(p) =E 2^qc(x)");
    for (EntityHandle x : u.all_qsets()) {
        std::uint64_t n = qc(u, x).value;
        if (n > opts.power_check_bound) {
            ++verdict.instances_skipped;
            continue;
        }
        QSetResult r = power_qset(u, x, opts.power_op_bound);
        Valuation v{{"x", x}, {"p", r.qset}};
        if (!evaluate(r.universe, *count_formula, v)) {
            verdict.holds = false;
            verdict.violation = "qc(P('" + u.id_of(x) + "')) = " +
                                std::to_string(qc(r.universe, r.qset).value) +
                                ", expected 2^" + std::to_string(n);
            return verdict;
        }
        ++verdict.instances_checked;
        verdict.witnesses.push_back("P('" + u.id_of(x) + "') has qc 2^" +
                                    std::to_string(n));
    }
    return verdict;
}

// Explicit quotient matching, independent of the interned signatures, so
// this check doubles as a cross-check of the indist implementation.
bool weak_ext_antecedent(const Universe& u, EntityHandle x, EntityHandle y) {
    auto classes_of = [&](EntityHandle q) {
        std::vector<std::vector<EntityHandle>> classes;
        for (EntityHandle member : u.members_of(q)) {
            bool placed = false;
            for (auto& cls : classes) {
                bool all = true;
                for (EntityHandle other : cls)
                    if (u.kind_of(other) != u.kind_of(member) ||
                        u.species_of(other) != u.species_of(member))
                        all = false;
                if (all) {
                    cls.push_back(member);
                    placed = true;
                    break;
                }
            }
            if (!placed)
                classes.push_back({member});
        }
        return classes;
    };
    auto qs_similar = [&](const std::vector<EntityHandle>& a,
                          const std::vector<EntityHandle>& b) {
        if (a.size() != b.size())
            return false;
        for (EntityHandle p : a)
            for (EntityHandle q : b)
                if (u.kind_of(p) != u.kind_of(q) ||
                    u.species_of(p) != u.species_of(q))
                    return false;
        return true;
    };
    auto cx = classes_of(x);
    auto cy = classes_of(y);
    for (const auto& z : cx) {
        bool found = false;
        for (const auto& t : cy)
            if (qs_similar(z, t))
                found = true;
        if (!found)
            return false;
    }
    for (const auto& t : cy) {
        bool found = false;
        for (const auto& z : cx)
            if (qs_similar(t, z))
                found = true;
        if (!found)
            return false;
    }
    return true;
}

CorpusVerdict check_weak_extensionality(const Universe& u) {
    CorpusVerdict verdict;
    verdict.axiom = CorpusAxiom::weak_extensionality;
    // Rank restriction: quotients of atom-level qsets only.
    std::vector<EntityHandle> rank1;
    for (EntityHandle q : u.all_qsets()) {
        bool atoms_only = true;
        for (EntityHandle m : u.members_of(q))
            if (u.is_qset(m))
                atoms_only = false;
        if (atoms_only)
            rank1.push_back(q);
    }
    for (std::size_t i = 0; i < rank1.size(); ++i)
        for (std::size_t j = i; j < rank1.size(); ++j) {
            bool antecedent = weak_ext_antecedent(u, rank1[i], rank1[j]);
            bool equivalent = indist(u, rank1[i], rank1[j]);
            if (antecedent != equivalent) {
                verdict.holds = false;
                verdict.violation =
                    "'" + u.id_of(rank1[i]) + "' vs '" + u.id_of(rank1[j]) +
                    "': quotient matching " + (antecedent ? "holds" : "fails") +
                    " but indistinguishability " + (equivalent ? "holds" : "fails");
                return verdict;
            }
            ++verdict.instances_checked;
            if (antecedent && i != j)
                verdict.witnesses.push_back("'" + u.id_of(rank1[i]) + "' == '" +
                                            u.id_of(rank1[j]) +
                                            "' via matching quotients");
        }
    return verdict;
}

} // namespace

CorpusVerdict check_axiom(const Universe& u, CorpusAxiom axiom,
                          const CorpusOptions& opts) {
    switch (axiom) {
    case CorpusAxiom::weak_pair: return check_weak_pair(u);
    case CorpusAxiom::separation: return check_separation(u);
    case CorpusAxiom::quasi_cardinality: return check_quasi_cardinality(u);
    case CorpusAxiom::subqset_cardinals: return check_subqset_cardinals(u);
    case CorpusAxiom::power_qset: return check_power_qset(u, opts);
    case CorpusAxiom::weak_extensionality: return check_weak_extensionality(u);
    }
    throw validation_error("unknown corpus axiom");
}

std::vector<CorpusVerdict> check_all_axioms(const Universe& u,
                                            const CorpusOptions& opts) {
    std::vector<CorpusVerdict> out;
    for (CorpusAxiom a : all_corpus_axioms())
        out.push_back(check_axiom(u, a, opts));
    return out;
}

} // namespace qsl
