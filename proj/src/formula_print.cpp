#include "qsl/formula.hpp"

namespace qsl {

namespace {

int precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::iff: return 1;
    case Formula::Kind::implies: return 2;
    case Formula::Kind::logical_or: return 3;
    case Formula::Kind::logical_and: return 4;
    case Formula::Kind::logical_not: return 5;
    // A quantifier body extends maximally right, so a quantified formula can
    // only stand bare where nothing follows it; anywhere else it needs parens.
    case Formula::Kind::forall:
    case Formula::Kind::exists:
    case Formula::Kind::forall_q:
    case Formula::Kind::exists_q:
    case Formula::Kind::exists_q_unique: return 0;
    default: return 6;
    }
}

void print_term(const Term& t, std::string& out) {
    switch (t.kind) {
    case Term::Kind::variable:
        out += t.var;
        return;
    case Term::Kind::int_literal:
        out += std::to_string(t.value);
        return;
    case Term::Kind::qc_of:
    case Term::Kind::card_of:
        out += t.kind == Term::Kind::qc_of ? "qc(" : "card(";
        print_term(*t.arg, out);
        out += ')';
        return;
    case Term::Kind::power:
        out += std::to_string(t.value);
        out += '^';
        print_term(*t.arg, out);
        return;
    }
}

void print_formula(const Formula& f, int min_prec, std::string& out) {
    int prec = precedence(f.kind);
    bool parens = prec < min_prec;
    if (parens)
        out += '(';

    auto binary = [&](const char* op, bool right_assoc) {
        // The tighter-binding side needs one level more than the other.
        print_formula(*f.f1, right_assoc ? prec + 1 : prec, out);
        out += op;
        print_formula(*f.f2, right_assoc ? prec : prec + 1, out);
    };

    switch (f.kind) {
    case Formula::Kind::pred_m: out += "m("; print_term(*f.t1, out); out += ')'; break;
    case Formula::Kind::pred_M: out += "M("; print_term(*f.t1, out); out += ')'; break;
    case Formula::Kind::pred_Z: out += "Z("; print_term(*f.t1, out); out += ')'; break;
    case Formula::Kind::pred_Q: out += "Q("; print_term(*f.t1, out); out += ')'; break;
    case Formula::Kind::pred_Cd: out += "Cd("; print_term(*f.t1, out); out += ')'; break;
    case Formula::Kind::rel_indist:
        print_term(*f.t1, out); out += " == "; print_term(*f.t2, out); break;
    case Formula::Kind::rel_member:
        print_term(*f.t1, out); out += " in "; print_term(*f.t2, out); break;
    case Formula::Kind::rel_ext_eq:
        print_term(*f.t1, out); out += " =E "; print_term(*f.t2, out); break;
    case Formula::Kind::rel_le:
        print_term(*f.t1, out); out += " <= "; print_term(*f.t2, out); break;
    case Formula::Kind::logical_not:
        out += '~';
        print_formula(*f.f1, prec, out);
        break;
    case Formula::Kind::logical_and: binary(" & ", false); break;
    case Formula::Kind::logical_or: binary(" | ", false); break;
    case Formula::Kind::implies: binary(" -> ", true); break;
    case Formula::Kind::iff: binary(" <-> ", true); break;
    case Formula::Kind::forall:
    case Formula::Kind::exists:
    case Formula::Kind::forall_q:
    case Formula::Kind::exists_q:
    case Formula::Kind::exists_q_unique: {
        switch (f.kind) {
        case Formula::Kind::forall: out += "forall "; break;
        case Formula::Kind::exists: out += "exists "; break;
        case Formula::Kind::forall_q: out += "forallQ "; break;
        case Formula::Kind::exists_q: out += "existsQ "; break;
        default: out += "existsQ! "; break;
        }
        out += f.var;
        // Bodies always parenthesized; keeps maximal-right binding stable.
        out += " (";
        print_formula(*f.f1, 0, out);
        out += ')';
        break;
    }
    }

    if (parens)
        out += ')';
}

} // namespace

std::string print(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

std::string print(const Formula& f) {
    std::string out;
    print_formula(f, 0, out);
    return out;
}

} // namespace qsl
