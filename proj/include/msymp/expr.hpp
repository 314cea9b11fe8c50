#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "msymp/rational.hpp"

namespace msymp {

enum class Kind : uint8_t { Rational, Symbol, Func, Power, Product, Sum };
enum class Fn : uint8_t { Sin, Cos, Exp };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. All construction goes through the smart
/// constructors below, which maintain the canonical form:
///   - sums and products flattened, commutatively sorted, constants folded;
///   - like terms merged, equal factors collected into integer powers;
///   - products distributed over sums, positive integer powers of sums expanded;
///   - 0*e=0, 1*e=e, e^0=1, e^1=e.
/// Two canonical trees are equal as expressions iff they compare equal.
struct Expr {
    Kind kind;
    Fn fn = Fn::Sin;              // Func
    int exponent = 0;             // Power
    Rational value;               // Rational
    std::string name;             // Symbol
    std::vector<ExprPtr> kids;    // Func: [arg]; Power: [base]; Product/Sum: parts
};

ExprPtr constant(Rational r);
ExprPtr integer(long long v);
ExprPtr symbol(const std::string& name);
ExprPtr make_sum(std::vector<ExprPtr> parts);
ExprPtr make_product(std::vector<ExprPtr> parts);
ExprPtr make_power(const ExprPtr& base, int k);
ExprPtr apply_fn(Fn f, const ExprPtr& arg);

ExprPtr add(const ExprPtr& a, const ExprPtr& b);
ExprPtr sub(const ExprPtr& a, const ExprPtr& b);
ExprPtr neg(const ExprPtr& a);
ExprPtr mul(const ExprPtr& a, const ExprPtr& b);
ExprPtr div_const(const ExprPtr& a, const Rational& r);

ExprPtr zero();
ExprPtr one();

/// Fixed total order on canonical trees: node kind, then arity, then
/// recursive comparison; symbols by name.
int compare(const ExprPtr& a, const ExprPtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

bool is_rational(const ExprPtr& e);
bool is_zero_literal(const ExprPtr& e);
bool is_one_literal(const ExprPtr& e);
const Rational& rational_value(const ExprPtr& e);  // requires Kind::Rational

/// Re-canonicalizes a tree bottom-up. Identity on canonical input.
ExprPtr normalize(const ExprPtr& e);

ExprPtr differentiate(const ExprPtr& e, const std::string& sym);

enum class ZeroTest { Zero, NonZero, Unknown };
/// Exact for the polynomial subclass (also negative powers of symbols);
/// expressions containing elementary functions decide Zero only when the
/// canonical form is literally 0.
ZeroTest is_zero(const ExprPtr& e);

using Point = std::map<std::string, double>;
double eval(const ExprPtr& e, const Point& p);

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings);

/// Antiderivative with zero constant term; NotPolynomial when s occurs
/// inside an elementary function or with a negative power.
ExprPtr integrate_poly(const ExprPtr& e, const std::string& s);

void collect_symbols(const ExprPtr& e, std::set<std::string>& out);
bool contains_symbol(const ExprPtr& e, const std::string& s);
bool contains_func(const ExprPtr& e);
/// No elementary functions, no negative exponents, no opaque power bases.
bool is_polynomial(const ExprPtr& e);

std::string to_string(const ExprPtr& e);

/// Splits a canonical term into rational coefficient and monomial part
/// (monomial = 1 for pure constants).
void split_term(const ExprPtr& term, Rational& coeff, ExprPtr& mono);

}  // namespace msymp
