#ifndef QSL_ERRORS_HPP
#define QSL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsl {

// Byte range [begin, end) into the source text a diagnostic refers to.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input or a violated operation precondition. CLI exit code 2.
class validation_error : public error {
public:
    using error::error;
};

// A configured size/depth bound was exceeded. CLI exit code 3.
class resource_error : public error {
public:
    using error::error;
};

// Lexical or syntax error in formula text.
class parse_error : public validation_error {
public:
    parse_error(const std::string& msg, SourceSpan span)
        : validation_error(msg), span_(span) {}
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

// Sort/type error raised while evaluating a formula (e.g. extensional
// equality applied to an m-atom).
class eval_error : public validation_error {
public:
    eval_error(const std::string& msg, SourceSpan span)
        : validation_error(msg), span_(span) {}
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

} // namespace qsl

#endif
