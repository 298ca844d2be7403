#include <algorithm>

#include "qsl/formula.hpp"

namespace qsl {

namespace {

struct EvalValue {
    bool is_cardinal = false;
    EntityHandle entity{};
    std::uint64_t cardinal = 0;
};

class Evaluator {
public:
    Evaluator(const Universe& u, const Valuation& v) : u_(u), env_(v) {}

    bool formula(const Formula& f) {
        switch (f.kind) {
        case Formula::Kind::pred_m:
            return u_.is_m_atom(entity(*f.t1));
        case Formula::Kind::pred_M:
            return u_.is_M_atom(entity(*f.t1));
        case Formula::Kind::pred_Z: {
            EntityHandle h = entity(*f.t1);
            return u_.is_qset(h) && u_.is_zfu_set(h);
        }
        case Formula::Kind::pred_Q:
            return u_.is_qset(entity(*f.t1));
        case Formula::Kind::pred_Cd:
            return term(*f.t1).is_cardinal;
        case Formula::Kind::rel_indist: {
            EntityHandle a = entity(*f.t1);
            EntityHandle b = entity(*f.t2);
            return indist(u_, a, b);
        }
        case Formula::Kind::rel_member: {
            EntityHandle a = entity(*f.t1);
            EntityHandle b = entity(*f.t2);
            if (!u_.is_qset(b))
                return false; // atoms have no members
            const auto& ms = u_.members_of(b);
            return std::binary_search(ms.begin(), ms.end(), a);
        }
        case Formula::Kind::rel_ext_eq: {
            EvalValue a = term(*f.t1);
            EvalValue b = term(*f.t2);
            if (a.is_cardinal != b.is_cardinal)
                throw eval_error("'=E' mixes a cardinal with an entity", f.span);
            if (a.is_cardinal)
                return a.cardinal == b.cardinal;
            switch (ext_eq(u_, a.entity, b.entity)) {
            case ExtEq::equal: return true;
            case ExtEq::distinct: return false;
            case ExtEq::not_applicable:
                throw eval_error("'=E' is not applicable to m-atoms ('" +
                                     u_.id_of(a.entity) + "' or '" +
                                     u_.id_of(b.entity) + "')",
                                 f.span);
            }
            return false;
        }
        case Formula::Kind::rel_le: {
            EvalValue a = term(*f.t1);
            EvalValue b = term(*f.t2);
            if (!a.is_cardinal || !b.is_cardinal)
                throw eval_error("'<=' needs cardinal operands", f.span);
            return a.cardinal <= b.cardinal;
        }
        case Formula::Kind::logical_not:
            return !formula(*f.f1);
        case Formula::Kind::logical_and:
            return formula(*f.f1) && formula(*f.f2);
        case Formula::Kind::logical_or:
            return formula(*f.f1) || formula(*f.f2);
        case Formula::Kind::implies:
            return !formula(*f.f1) || formula(*f.f2);
        case Formula::Kind::iff:
            return formula(*f.f1) == formula(*f.f2);
        case Formula::Kind::forall:
            return quantify(f, u_.all_entities(), true);
        case Formula::Kind::exists:
            return quantify(f, u_.all_entities(), false);
        case Formula::Kind::forall_q:
            return quantify(f, u_.all_qsets(), true);
        case Formula::Kind::exists_q:
            return quantify(f, u_.all_qsets(), false);
        case Formula::Kind::exists_q_unique:
            return unique_qset(f);
        }
        return false;
    }

private:
    const Universe& u_;
    Valuation env_;

    bool quantify(const Formula& f, const std::vector<EntityHandle>& domain,
                  bool universal) {
        auto saved = env_.find(f.var) != env_.end()
                         ? std::optional<EntityHandle>(env_[f.var])
                         : std::nullopt;
        bool result = universal;
        for (EntityHandle h : domain) {
            env_[f.var] = h;
            bool v = formula(*f.f1);
            if (v != universal) {
                result = !universal;
                break;
            }
        }
        if (saved)
            env_[f.var] = *saved;
        else
            env_.erase(f.var);
        return result;
    }

    // existsQ!: some qset satisfies the body and all satisfying qsets are
    // pairwise extensionally equal (the only identity available for qsets).
    bool unique_qset(const Formula& f) {
        auto saved = env_.find(f.var) != env_.end()
                         ? std::optional<EntityHandle>(env_[f.var])
                         : std::nullopt;
        std::vector<EntityHandle> hits;
        for (EntityHandle h : u_.all_qsets()) {
            env_[f.var] = h;
            if (formula(*f.f1))
                hits.push_back(h);
        }
        if (saved)
            env_[f.var] = *saved;
        else
            env_.erase(f.var);
        if (hits.empty())
            return false;
        for (EntityHandle h : hits)
            if (ext_eq(u_, hits.front(), h) != ExtEq::equal)
                return false;
        return true;
    }

    EntityHandle entity(const Term& t) {
        EvalValue v = term(t);
        if (v.is_cardinal)
            throw eval_error("expected an entity, got the cardinal " +
                                 std::to_string(v.cardinal),
                             t.span);
        return v.entity;
    }

    EvalValue term(const Term& t) {
        switch (t.kind) {
        case Term::Kind::variable: {
            auto it = env_.find(t.var);
            if (it == env_.end())
                throw validation_error("unknown free variable '" + t.var + "'");
            return EvalValue{false, it->second, 0};
        }
        case Term::Kind::int_literal:
            return EvalValue{true, {}, t.value};
        case Term::Kind::qc_of:
        case Term::Kind::card_of: {
            EntityHandle h = entity(*t.arg);
            if (!u_.is_qset(h))
                throw eval_error("'" + std::string(t.kind == Term::Kind::qc_of
                                                       ? "qc"
                                                       : "card") +
                                     "' applied to the atom '" + u_.id_of(h) + "'",
                                 t.span);
            return EvalValue{true, {}, qc(u_, h).value};
        }
        case Term::Kind::power: {
            EvalValue e = term(*t.arg);
            if (!e.is_cardinal)
                throw eval_error("exponent must be a cardinal", t.span);
            if (e.cardinal > 63)
                throw resource_error("cardinal power exponent " +
                                     std::to_string(e.cardinal) + " too large");
            std::uint64_t result = 1;
            for (std::uint64_t i = 0; i < e.cardinal; ++i) {
                if (result > UINT64_MAX / t.value)
                    throw resource_error("cardinal power overflow");
                result *= t.value;
            }
            return EvalValue{true, {}, result};
        }
        }
        return {};
    }
};

} // namespace

bool evaluate(const Universe& u, const Formula& f, const Valuation& v) {
    return Evaluator(u, v).formula(f);
}

QSetResult separation(const Universe& u, EntityHandle x, const Formula& alpha,
                      const std::string& var, const Valuation& env) {
    const auto& members = u.members_of(x);

    std::set<std::string> free = free_variables(alpha);
    for (const auto& [name, handle] : env) {
        (void)handle;
        free.erase(name);
    }
    if (free != std::set<std::string>{var})
        throw validation_error(
            "separation formula must have exactly one free variable '" + var + "'");

    std::vector<EntityHandle> selected;
    for (EntityHandle t : members) {
        Valuation v = env;
        v[var] = t;
        if (evaluate(u, alpha, v))
            selected.push_back(t);
    }
    UniverseBuilder b(u);
    EntityHandle s = b.add_or_reuse_qset(std::move(selected));
    return {b.build(), s};
}

} // namespace qsl
