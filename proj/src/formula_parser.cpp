#include <algorithm>

#include "qsl/formula.hpp"

namespace qsl {

namespace {

const char* token_name(TokenKind k) {
    switch (k) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::pred_m: return "'m'";
    case TokenKind::pred_M: return "'M'";
    case TokenKind::pred_Z: return "'Z'";
    case TokenKind::pred_Q: return "'Q'";
    case TokenKind::pred_Cd: return "'Cd'";
    case TokenKind::fn_qc: return "'qc'";
    case TokenKind::fn_card: return "'card'";
    case TokenKind::rel_indist: return "'=='";
    case TokenKind::rel_member: return "'in'";
    case TokenKind::rel_ext_eq: return "'=E'";
    case TokenKind::rel_le: return "'<='";
    case TokenKind::op_not: return "'~'";
    case TokenKind::op_and: return "'&'";
    case TokenKind::op_or: return "'|'";
    case TokenKind::op_implies: return "'->'";
    case TokenKind::op_iff: return "'<->'";
    case TokenKind::kw_forall: return "'forall'";
    case TokenKind::kw_exists: return "'exists'";
    case TokenKind::kw_forall_q: return "'forallQ'";
    case TokenKind::kw_exists_q: return "'existsQ'";
    case TokenKind::kw_exists_q_unique: return "'existsQ!'";
    case TokenKind::int_literal: return "integer";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::caret: return "'^'";
    case TokenKind::end_of_input: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    std::unique_ptr<Formula> run() {
        auto f = formula();
        expect(TokenKind::end_of_input, "end of input");
        return f;
    }

private:
    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    const Token& advance() { return toks_[pos_++]; }

    const Token& expect(TokenKind k, const char* what) {
        if (!at(k))
            throw parse_error(std::string("expected ") + what + ", found " +
                                  token_name(peek().kind),
                              peek().span);
        return advance();
    }

    [[noreturn]] void fail(const char* expected) const {
        throw parse_error(std::string("expected ") + expected + ", found " +
                              token_name(peek().kind),
                          peek().span);
    }

    static std::unique_ptr<Formula> binary(Formula::Kind kind,
                                           std::unique_ptr<Formula> lhs,
                                           std::unique_ptr<Formula> rhs) {
        auto f = std::make_unique<Formula>();
        f->kind = kind;
        f->span = SourceSpan{lhs->span.begin, rhs->span.end};
        f->f1 = std::move(lhs);
        f->f2 = std::move(rhs);
        return f;
    }

    // iff := implies ('<->' iff)?   (right-associative)
    std::unique_ptr<Formula> formula() {
        auto lhs = implication();
        if (at(TokenKind::op_iff)) {
            advance();
            return binary(Formula::Kind::iff, std::move(lhs), formula());
        }
        return lhs;
    }

    std::unique_ptr<Formula> implication() {
        auto lhs = disjunction();
        if (at(TokenKind::op_implies)) {
            advance();
            return binary(Formula::Kind::implies, std::move(lhs), implication());
        }
        return lhs;
    }

    std::unique_ptr<Formula> disjunction() {
        auto lhs = conjunction();
        while (at(TokenKind::op_or)) {
            advance();
            lhs = binary(Formula::Kind::logical_or, std::move(lhs), conjunction());
        }
        return lhs;
    }

    std::unique_ptr<Formula> conjunction() {
        auto lhs = unary();
        while (at(TokenKind::op_and)) {
            advance();
            lhs = binary(Formula::Kind::logical_and, std::move(lhs), unary());
        }
        return lhs;
    }

    std::unique_ptr<Formula> unary() {
        if (at(TokenKind::op_not)) {
            SourceSpan start = advance().span;
            auto f = std::make_unique<Formula>();
            f->kind = Formula::Kind::logical_not;
            f->f1 = unary();
            f->span = SourceSpan{start.begin, f->f1->span.end};
            return f;
        }
        if (at(TokenKind::kw_forall) || at(TokenKind::kw_exists) ||
            at(TokenKind::kw_forall_q) || at(TokenKind::kw_exists_q) ||
            at(TokenKind::kw_exists_q_unique))
            return quantified();
        return primary();
    }

    // The quantifier body extends maximally to the right.
    std::unique_ptr<Formula> quantified() {
        const Token& q = advance();
        Formula::Kind kind;
        switch (q.kind) {
        case TokenKind::kw_forall: kind = Formula::Kind::forall; break;
        case TokenKind::kw_exists: kind = Formula::Kind::exists; break;
        case TokenKind::kw_forall_q: kind = Formula::Kind::forall_q; break;
        case TokenKind::kw_exists_q: kind = Formula::Kind::exists_q; break;
        default: kind = Formula::Kind::exists_q_unique; break;
        }
        const Token& var = expect(TokenKind::identifier, "bound variable name");
        auto f = std::make_unique<Formula>();
        f->kind = kind;
        f->var = var.lexeme;
        f->f1 = formula();
        f->span = SourceSpan{q.span.begin, f->f1->span.end};
        return f;
    }

    std::unique_ptr<Formula> primary() {
        switch (peek().kind) {
        case TokenKind::lparen: {
            advance();
            auto f = formula();
            expect(TokenKind::rparen, "')'");
            return f;
        }
        case TokenKind::pred_m:
        case TokenKind::pred_M:
        case TokenKind::pred_Z:
        case TokenKind::pred_Q:
        case TokenKind::pred_Cd: {
            const Token& p = advance();
            Formula::Kind kind;
            switch (p.kind) {
            case TokenKind::pred_m: kind = Formula::Kind::pred_m; break;
            case TokenKind::pred_M: kind = Formula::Kind::pred_M; break;
            case TokenKind::pred_Z: kind = Formula::Kind::pred_Z; break;
            case TokenKind::pred_Q: kind = Formula::Kind::pred_Q; break;
            default: kind = Formula::Kind::pred_Cd; break;
            }
            expect(TokenKind::lparen, "'('");
            auto f = std::make_unique<Formula>();
            f->kind = kind;
            f->t1 = term();
            const Token& close = expect(TokenKind::rparen, "')'");
            f->span = SourceSpan{p.span.begin, close.span.end};
            return f;
        }
        case TokenKind::identifier:
        case TokenKind::fn_qc:
        case TokenKind::fn_card:
        case TokenKind::int_literal: {
            auto lhs = term();
            Formula::Kind kind;
            switch (peek().kind) {
            case TokenKind::rel_indist: kind = Formula::Kind::rel_indist; break;
            case TokenKind::rel_member: kind = Formula::Kind::rel_member; break;
            case TokenKind::rel_ext_eq: kind = Formula::Kind::rel_ext_eq; break;
            case TokenKind::rel_le: kind = Formula::Kind::rel_le; break;
            default: fail("a relation ('==', 'in', '=E' or '<=')");
            }
            advance();
            auto f = std::make_unique<Formula>();
            f->kind = kind;
            f->t1 = std::move(lhs);
            f->t2 = term();
            f->span = SourceSpan{f->t1->span.begin, f->t2->span.end};
            return f;
        }
        default:
            fail("a formula");
        }
    }

    std::unique_ptr<Term> term() {
        switch (peek().kind) {
        case TokenKind::identifier: {
            const Token& t = advance();
            auto out = std::make_unique<Term>();
            out->kind = Term::Kind::variable;
            out->var = t.lexeme;
            out->span = t.span;
            return out;
        }
        case TokenKind::fn_qc:
        case TokenKind::fn_card: {
            const Token& fn = advance();
            expect(TokenKind::lparen, "'('");
            auto out = std::make_unique<Term>();
            out->kind = fn.kind == TokenKind::fn_qc ? Term::Kind::qc_of
                                                    : Term::Kind::card_of;
            out->arg = term();
            const Token& close = expect(TokenKind::rparen, "')'");
            out->span = SourceSpan{fn.span.begin, close.span.end};
            return out;
        }
        case TokenKind::int_literal: {
            const Token& t = advance();
            auto out = std::make_unique<Term>();
            out->kind = Term::Kind::int_literal;
            out->value = t.value;
            out->span = t.span;
            if (at(TokenKind::caret)) {
                advance();
                auto pow = std::make_unique<Term>();
                pow->kind = Term::Kind::power;
                pow->value = t.value;
                pow->arg = term();
                pow->span = SourceSpan{t.span.begin, pow->arg->span.end};
                return pow;
            }
            return out;
        }
        default:
            fail("a term");
        }
    }
};

} // namespace

std::unique_ptr<Formula> parse(const std::vector<Token>& tokens) {
    return Parser(tokens).run();
}

std::unique_ptr<Formula> parse(std::string_view src) {
    return parse(tokenize(src));
}

// --- tree utilities -----------------------------------------------------------

std::unique_ptr<Term> Term::clone() const {
    auto out = std::make_unique<Term>();
    out->kind = kind;
    out->var = var;
    out->value = value;
    out->span = span;
    if (arg)
        out->arg = arg->clone();
    return out;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind || a.var != b.var || a.value != b.value)
        return false;
    if (!a.arg != !b.arg)
        return false;
    return !a.arg || *a.arg == *b.arg;
}

std::unique_ptr<Formula> Formula::clone() const {
    auto out = std::make_unique<Formula>();
    out->kind = kind;
    out->var = var;
    out->span = span;
    if (t1) out->t1 = t1->clone();
    if (t2) out->t2 = t2->clone();
    if (f1) out->f1 = f1->clone();
    if (f2) out->f2 = f2->clone();
    return out;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.var != b.var)
        return false;
    auto same_term = [](const std::unique_ptr<Term>& x,
                        const std::unique_ptr<Term>& y) {
        return !x == !y && (!x || *x == *y);
    };
    auto same_formula = [](const std::unique_ptr<Formula>& x,
                           const std::unique_ptr<Formula>& y) {
        return !x == !y && (!x || *x == *y);
    };
    return same_term(a.t1, b.t1) && same_term(a.t2, b.t2) &&
           same_formula(a.f1, b.f1) && same_formula(a.f2, b.f2);
}

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::variable)
        out.insert(t.var);
    if (t.arg)
        collect_term_vars(*t.arg, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
    auto term_vars = [&](const std::unique_ptr<Term>& t) {
        if (!t)
            return;
        std::set<std::string> vars;
        collect_term_vars(*t, vars);
        for (const auto& v : vars)
            if (!bound.contains(v))
                out.insert(v);
    };
    term_vars(f.t1);
    term_vars(f.t2);
    switch (f.kind) {
    case Formula::Kind::forall:
    case Formula::Kind::exists:
    case Formula::Kind::forall_q:
    case Formula::Kind::exists_q:
    case Formula::Kind::exists_q_unique: {
        bool fresh = bound.insert(f.var).second;
        collect_free(*f.f1, bound, out);
        if (fresh)
            bound.erase(f.var);
        return;
    }
    default:
        if (f.f1)
            collect_free(*f.f1, bound, out);
        if (f.f2)
            collect_free(*f.f2, bound, out);
    }
}

} // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

} // namespace qsl
