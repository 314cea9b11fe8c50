#include "msymp/parser.hpp"

#include <cctype>

#include "msymp/error.hpp"

namespace msymp {

namespace {

struct Parser {
    const std::string& src;
    size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    [[noreturn]] void fail(size_t at, const std::string& expected) {
        throw MsympError(Errc::SyntaxError,
                         "syntax error at offset " + std::to_string(at) + ": expected " + expected,
                         at, expected);
    }

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos != src.size()) fail(pos, "end of input, '+', '-', '*', '/' or '^'");
        return e;
    }

    ExprPtr parse_sum() {
        ExprPtr acc = parse_term();
        for (;;) {
            if (eat('+')) {
                acc = add(acc, parse_term());
            } else if (eat('-')) {
                acc = sub(acc, parse_term());
            } else {
                return acc;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_factor();
        for (;;) {
            if (eat('*')) {
                acc = mul(acc, parse_factor());
            } else if (eat('/')) {
                size_t at = pos;
                ExprPtr d = parse_factor();
                if (!is_rational(d)) fail(at, "a constant divisor");
                if (is_zero_literal(d)) fail(at, "a nonzero divisor");
                acc = div_const(acc, rational_value(d));
            } else {
                return acc;
            }
        }
    }

    // unary minus applies after the power: -x^2 == -(x^2)
    ExprPtr parse_factor() {
        if (eat('-')) return neg(parse_factor());
        ExprPtr b = parse_base();
        if (eat('^')) return make_power(b, parse_exponent());
        return b;
    }

    int parse_exponent() {
        skip_ws();
        size_t at = pos;
        bool negative = false;
        if (pos < src.size() && src[pos] == '-') {
            negative = true;
            ++pos;
        }
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            fail(at, "an integer exponent");
        long long v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + (src[pos] - '0');
            if (v > 1000000) fail(at, "an exponent below 10^6");
            ++pos;
        }
        return negative ? static_cast<int>(-v) : static_cast<int>(v);
    }

    ExprPtr parse_base() {
        skip_ws();
        if (pos >= src.size()) fail(pos, "a number, identifier or '('");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_sum();
            if (!eat(')')) fail(pos, "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(pos, "a number, identifier or '('");
    }

    ExprPtr parse_number() {
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                fail(pos, "digits after decimal point");
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        return constant(Rational::from_decimal_literal(src.substr(start, pos - start)));
    }

    ExprPtr parse_ident() {
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name = src.substr(start, pos - start);
        skip_ws();
        if (pos < src.size() && src[pos] == '(') {
            Fn f;
            if (name == "sin") {
                f = Fn::Sin;
            } else if (name == "cos") {
                f = Fn::Cos;
            } else if (name == "exp") {
                f = Fn::Exp;
            } else {
                fail(start, "one of the functions sin, cos, exp");
            }
            ++pos;
            ExprPtr arg = parse_sum();
            if (!eat(')')) fail(pos, "')'");
            return apply_fn(f, arg);
        }
        return symbol(name);
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& src) {
    Parser p(src);
    return p.parse();
}

}  // namespace msymp
