#include <doctest.h>

#include "msymp/error.hpp"
#include "msymp/identities.hpp"
#include "msymp/parser.hpp"

using namespace msymp;

namespace {

ExprPtr random_tree(SplitMix64& rng, int depth) {
    static const std::vector<std::string> syms{"x", "y", "t", "q_1"};
    if (depth == 0 || rng.next() % 4 == 0) {
        switch (rng.next() % 3) {
            case 0: return integer(rng.uniform_int(-12, 12));
            case 1: return constant(Rational(BigInt(rng.uniform_int(-9, 9)), BigInt(rng.uniform_int(1, 7))));
            default:
                return symbol(syms[static_cast<size_t>(rng.uniform_int(0, 3))]);
        }
    }
    switch (rng.next() % 5) {
        case 0: return add(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 1: return sub(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 2: return mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 3: return make_power(random_tree(rng, depth - 1), static_cast<int>(rng.uniform_int(0, 4)));
        default: return apply_fn(static_cast<Fn>(rng.next() % 3), random_tree(rng, depth - 1));
    }
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("grammar examples") {
    ExprPtr e = parse_expr("p*q - (1/2)*p^2");
    CHECK(equal(e, sub(mul(symbol("p"), symbol("q")), div_const(make_power(symbol("p"), 2), Rational(2)))));
    ExprPtr s = parse_expr("sin(t - x)");
    CHECK(s->kind == Kind::Func);
    CHECK(s->fn == Fn::Sin);
    CHECK(equal(s->kids[0], sub(symbol("t"), symbol("x"))));
}

TEST_CASE("syntax errors carry the position") {
    try {
        (void)parse_expr("x^");
        FAIL("expected a syntax error");
    } catch (const MsympError& e) {
        CHECK(e.code() == Errc::SyntaxError);
        CHECK(e.position() == 2);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS((void)parse_expr(""), MsympError);
    CHECK_THROWS_AS((void)parse_expr("(x + y"), MsympError);
    CHECK_THROWS_AS((void)parse_expr("x +"), MsympError);
    CHECK_THROWS_AS((void)parse_expr("log(x)"), MsympError);
    CHECK_THROWS_AS((void)parse_expr("x^y"), MsympError);
}

TEST_CASE("power binds tighter than unary minus") {
    CHECK(equal(parse_expr("-x^2"), neg(make_power(symbol("x"), 2))));
    CHECK(equal(parse_expr("(-x)^2"), make_power(symbol("x"), 2)));
    CHECK(equal(parse_expr("x^-2"), make_power(symbol("x"), -2)));
}

TEST_CASE("division requires a nonzero constant divisor") {
    CHECK(to_string(parse_expr("x/2")) == "1/2*x");
    CHECK(to_string(parse_expr("x/(1/2)")) == "2*x");
    CHECK_THROWS_AS((void)parse_expr("x/y"), MsympError);
    CHECK_THROWS_AS((void)parse_expr("x/0"), MsympError);
    CHECK_THROWS_AS((void)parse_expr("1/(2-2)"), MsympError);
}

TEST_CASE("decimal literals become exact rationals") {
    ExprPtr e = parse_expr("0.125*x");
    Rational c;
    ExprPtr mono;
    split_term(e, c, mono);
    CHECK(c.to_string() == "1/8");
    CHECK(to_string(parse_expr("3.25")) == "13/4");
}

TEST_CASE("hostile inputs fail cleanly") {
    SplitMix64 rng(88);
    const char alphabet[] = "xy01+-*/^(). 	sincoexp_";
    for (int i = 0; i < 2000; ++i) {
        std::string junk;
        int len = static_cast<int>(rng.uniform_int(1, 24));
        for (int k = 0; k < len; ++k)
            junk += alphabet[rng.next() % (sizeof(alphabet) - 1)];
        try {
            ExprPtr e = parse_expr(junk);
            // anything that parses must round-trip
            CHECK(equal(e, parse_expr(to_string(e))));
        } catch (const MsympError& err) {
            CHECK((err.code() == Errc::SyntaxError || err.code() == Errc::DivisionByZero ||
                   err.code() == Errc::InvalidArgument));
        }
    }
}

TEST_CASE("print/parse round trip preserves the canonical form") {
    SplitMix64 rng(77);
    for (int i = 0; i < 500; ++i) {
        ExprPtr e = random_tree(rng, 5);
        ExprPtr back = parse_expr(to_string(e));
        CHECK(equal(e, back));
    }
}

}  // TEST_SUITE
