#include <cctype>
#include <charconv>

#include "qsl/formula.hpp"

namespace qsl {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Multi-byte UTF-8 symbols we accept as aliases of the ASCII operators.
struct Utf8Alias {
    const char* bytes;
    TokenKind kind;
};

constexpr Utf8Alias utf8_aliases[] = {
    {"≡", TokenKind::rel_indist},  // ≡
    {"∈", TokenKind::rel_member},  // ∈
    {"≤", TokenKind::rel_le},      // ≤
    {"¬", TokenKind::op_not},      // ¬
    {"∧", TokenKind::op_and},      // ∧
    {"∨", TokenKind::op_or},       // ∨
    {"→", TokenKind::op_implies},  // →
    {"↔", TokenKind::op_iff},      // ↔
};

TokenKind keyword_kind(std::string_view word) {
    if (word == "m") return TokenKind::pred_m;
    if (word == "M") return TokenKind::pred_M;
    if (word == "Z") return TokenKind::pred_Z;
    if (word == "Q") return TokenKind::pred_Q;
    if (word == "Cd") return TokenKind::pred_Cd;
    if (word == "qc") return TokenKind::fn_qc;
    if (word == "card") return TokenKind::fn_card;
    if (word == "in") return TokenKind::rel_member;
    if (word == "forall") return TokenKind::kw_forall;
    if (word == "exists") return TokenKind::kw_exists;
    if (word == "forallQ") return TokenKind::kw_forall_q;
    if (word == "existsQ") return TokenKind::kw_exists_q;
    return TokenKind::identifier;
}

} // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](TokenKind k, std::size_t begin, std::size_t end,
                    std::uint64_t value = 0) {
        out.push_back(Token{k, std::string(src.substr(begin, end - begin)),
                            SourceSpan{begin, end}, value});
    };

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t begin = i;

        if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i]))
                ++i;
            std::string_view word = src.substr(begin, i - begin);
            TokenKind kind = keyword_kind(word);
            if (kind == TokenKind::kw_exists_q && i < src.size() && src[i] == '!') {
                ++i;
                push(TokenKind::kw_exists_q_unique, begin, i);
            } else {
                push(kind, begin, i);
            }
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                ++i;
            std::string_view digits = src.substr(begin, i - begin);
            std::uint64_t value = 0;
            auto [ptr, ec] =
                std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc() || ptr != digits.data() + digits.size())
                throw parse_error("integer literal out of range",
                                  SourceSpan{begin, i});
            push(TokenKind::int_literal, begin, i, value);
            continue;
        }

        auto two = src.substr(i, 2);
        auto three = src.substr(i, 3);
        if (three == "<->") {
            i += 3;
            push(TokenKind::op_iff, begin, i);
            continue;
        }
        if (two == "->") {
            i += 2;
            push(TokenKind::op_implies, begin, i);
            continue;
        }
        if (two == "==") {
            i += 2;
            push(TokenKind::rel_indist, begin, i);
            continue;
        }
        if (two == "=E") {
            i += 2;
            push(TokenKind::rel_ext_eq, begin, i);
            continue;
        }
        if (two == "<=") {
            i += 2;
            push(TokenKind::rel_le, begin, i);
            continue;
        }

        bool matched_utf8 = false;
        for (const auto& alias : utf8_aliases) {
            std::string_view pat(alias.bytes);
            if (src.substr(i, pat.size()) == pat) {
                i += pat.size();
                push(alias.kind, begin, i);
                matched_utf8 = true;
                break;
            }
        }
        if (matched_utf8)
            continue;

        switch (c) {
        case '~': ++i; push(TokenKind::op_not, begin, i); continue;
        case '&': ++i; push(TokenKind::op_and, begin, i); continue;
        case '|': ++i; push(TokenKind::op_or, begin, i); continue;
        case '(': ++i; push(TokenKind::lparen, begin, i); continue;
        case ')': ++i; push(TokenKind::rparen, begin, i); continue;
        case '^': ++i; push(TokenKind::caret, begin, i); continue;
        default:
            throw parse_error("unknown character '" + std::string(1, c) + "'",
                              SourceSpan{begin, begin + 1});
        }
    }
    out.push_back(Token{TokenKind::end_of_input, "", SourceSpan{src.size(), src.size()}, 0});
    return out;
}

} // namespace qsl
