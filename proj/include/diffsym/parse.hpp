#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "core.hpp"

namespace diffsym {

/// Syntax error or undefined symbol, with the byte offset where it was detected.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at position " + std::to_string(position) + ": " + message), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

/// expr   := term (('+'|'-') term)*
/// term   := unary (('*'|'/') unary)*
/// unary  := '-' unary | factor
/// factor := atom ('^' '-'? int)?
/// atom   := int | name | '(' expr ')'
///
/// Names are resolved through `like.symbol(name)`.
template <RingElement E>
class Parser {
public:
    Parser(std::string_view src, const E& like) : src_(src), like_(like) {}

    E parse() {
        E v = expr();
        skip();
        if (pos_ < src_.size()) fail("expected operator or end of input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    E expr() {
        E v = term();
        for (;;) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    E term() {
        E v = unary();
        for (;;) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                const E d = unary();
                if (d.is_zero()) throw ParseError(at, "division by zero");
                if constexpr (FieldElement<E>) {
                    try {
                        v = v * d.inv();
                    } catch (const DivisionByZero&) {
                        throw ParseError(at, "divisor is not invertible");
                    }
                } else {
                    throw ParseError(at, "division is not available here");
                }
            } else {
                return v;
            }
        }
    }

    E unary() {
        if (accept('-')) return -unary();
        return factor();
    }

    E factor() {
        E base = atom();
        if (!accept('^')) return base;
        skip();
        const bool neg = accept('-');
        skip();
        const std::size_t start = pos_;
        long e = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            if (e > 100000) fail("exponent too large");
            e = e * 10 + (src_[pos_++] - '0');
        }
        if (pos_ == start) fail("expected integer exponent");
        if (neg && base.is_zero()) throw ParseError(start, "negative power of zero");
        try {
            return power(base, neg ? -e : e);
        } catch (const Error& err) {
            throw ParseError(start, err.what());
        }
    }

    E atom() {
        skip();
        if (pos_ >= src_.size()) fail("expected number, name or '('");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            E v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return like_.from_rational(Rational(Integer(std::string(src_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
            const std::string name(src_.substr(start, pos_ - start));
            if (auto v = like_.symbol(name)) return *v;
            throw ParseError(start, "undefined symbol '" + name + "' in this field");
        }
        fail(std::string("unexpected character '") + c + "', expected number, name or '('");
    }

    std::string_view src_;
    const E& like_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses src as an element of the parent of `like`.
template <RingElement E>
E parse_scalar(std::string_view src, const E& like) {
    return detail::Parser<E>(src, like).parse();
}

}  // namespace diffsym
