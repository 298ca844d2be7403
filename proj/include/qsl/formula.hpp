#ifndef QSL_FORMULA_HPP
#define QSL_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qsl/errors.hpp"
#include "qsl/universe.hpp"

namespace qsl {

// --- lexer -----------------------------------------------------------------

enum class TokenKind {
    identifier,
    pred_m, pred_M, pred_Z, pred_Q, pred_Cd,
    fn_qc, fn_card,
    rel_indist,   // ==  or ≡
    rel_member,   // in  or ∈
    rel_ext_eq,   // =E
    rel_le,       // <=  or ≤
    op_not,       // ~   or ¬
    op_and,       // &   or ∧
    op_or,        // |   or ∨
    op_implies,   // ->  or →
    op_iff,       // <-> or ↔
    kw_forall, kw_exists, kw_forall_q, kw_exists_q, kw_exists_q_unique,
    int_literal,
    lparen, rparen, caret,
    end_of_input,
};

struct Token {
    TokenKind kind;
    std::string lexeme;
    SourceSpan span;
    std::uint64_t value = 0; // int_literal only
};

/// ASCII aliases and the UTF-8 originals are both accepted; comments are
/// the caller's business (strip before tokenizing).
std::vector<Token> tokenize(std::string_view src);

// --- abstract syntax ---------------------------------------------------------

struct Term {
    enum class Kind { variable, qc_of, card_of, int_literal, power };
    Kind kind = Kind::variable;
    std::string var;              // variable
    std::uint64_t value = 0;      // int_literal; power base
    std::unique_ptr<Term> arg;    // qc_of / card_of argument, power exponent
    SourceSpan span;

    std::unique_ptr<Term> clone() const;
    friend bool operator==(const Term& a, const Term& b);
};

struct Formula {
    enum class Kind {
        pred_m, pred_M, pred_Z, pred_Q, pred_Cd,
        rel_indist, rel_member, rel_ext_eq, rel_le,
        logical_not, logical_and, logical_or, implies, iff,
        forall, exists, forall_q, exists_q, exists_q_unique,
    };
    Kind kind;
    std::unique_ptr<Term> t1, t2;     // predicates use t1, relations t1/t2
    std::unique_ptr<Formula> f1, f2;  // unary: f1; binary: f1,f2; quantifier body: f1
    std::string var;                  // quantifier binder
    SourceSpan span;

    std::unique_ptr<Formula> clone() const;
    friend bool operator==(const Formula& a, const Formula& b);
};

std::unique_ptr<Formula> parse(const std::vector<Token>& tokens);
std::unique_ptr<Formula> parse(std::string_view src);

/// Canonical text form; parse(print(f)) reconstructs an identical tree.
std::string print(const Formula& f);
std::string print(const Term& t);

/// Free variables in binding order of first occurrence.
std::set<std::string> free_variables(const Formula& f);

// --- evaluation ---------------------------------------------------------------

using Valuation = std::map<std::string, EntityHandle>;

/// Tarskian evaluation over the finite universe. Plain quantifiers range
/// over all entities, the Q-relativized ones over qsets. Throws eval_error
/// (with the node span) for sort errors such as =E touching an m-atom, and
/// validation_error for unbound variables.
bool evaluate(const Universe& u, const Formula& f, const Valuation& v = {});

/// Separation: sub-qset of x with the members t for which alpha(t) holds.
/// alpha must have exactly one free variable (`var`) beyond the ones bound
/// by `env`.
QSetResult separation(const Universe& u, EntityHandle x, const Formula& alpha,
                      const std::string& var, const Valuation& env = {});

} // namespace qsl

#endif
