#include "msymp/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "msymp/error.hpp"

namespace msymp {

namespace {

int kind_rank(Kind k) {
    switch (k) {
        case Kind::Rational: return 0;
        case Kind::Symbol: return 1;
        case Kind::Func: return 2;
        case Kind::Power: return 3;
        case Kind::Product: return 4;
        case Kind::Sum: return 5;
    }
    return 6;
}

ExprPtr make_node(Expr&& e) { return std::make_shared<const Expr>(std::move(e)); }

const ExprPtr& cached_zero() {
    static const ExprPtr z = [] {
        Expr e;
        e.kind = Kind::Rational;
        e.value = Rational(0);
        return make_node(std::move(e));
    }();
    return z;
}

const ExprPtr& cached_one() {
    static const ExprPtr o = [] {
        Expr e;
        e.kind = Kind::Rational;
        e.value = Rational(1);
        return make_node(std::move(e));
    }();
    return o;
}

struct ExprLess {
    bool operator()(const ExprPtr& a, const ExprPtr& b) const { return compare(a, b) < 0; }
};

}  // namespace

ExprPtr zero() { return cached_zero(); }
ExprPtr one() { return cached_one(); }

ExprPtr constant(Rational r) {
    if (r.is_zero()) return cached_zero();
    if (r.is_one()) return cached_one();
    Expr e;
    e.kind = Kind::Rational;
    e.value = std::move(r);
    return make_node(std::move(e));
}

ExprPtr integer(long long v) { return constant(Rational(v)); }

ExprPtr symbol(const std::string& name) {
    if (name.empty()) throw MsympError(Errc::InvalidArgument, "empty symbol name");
    Expr e;
    e.kind = Kind::Symbol;
    e.name = name;
    return make_node(std::move(e));
}

bool is_rational(const ExprPtr& e) { return e->kind == Kind::Rational; }
bool is_zero_literal(const ExprPtr& e) { return e->kind == Kind::Rational && e->value.is_zero(); }
bool is_one_literal(const ExprPtr& e) { return e->kind == Kind::Rational && e->value.is_one(); }
const Rational& rational_value(const ExprPtr& e) { return e->value; }

int compare(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return 0;
    int ra = kind_rank(a->kind), rb = kind_rank(b->kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a->kind) {
        case Kind::Rational: return Rational::cmp(a->value, b->value);
        case Kind::Symbol: return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
        case Kind::Func: {
            if (a->fn != b->fn) return static_cast<int>(a->fn) < static_cast<int>(b->fn) ? -1 : 1;
            return compare(a->kids[0], b->kids[0]);
        }
        case Kind::Power: {
            int c = compare(a->kids[0], b->kids[0]);
            if (c) return c;
            return a->exponent < b->exponent ? -1 : (a->exponent == b->exponent ? 0 : 1);
        }
        case Kind::Product:
        case Kind::Sum: {
            if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
            for (size_t i = 0; i < a->kids.size(); ++i) {
                int c = compare(a->kids[i], b->kids[i]);
                if (c) return c;
            }
            return 0;
        }
    }
    return 0;
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

void split_term(const ExprPtr& term, Rational& coeff, ExprPtr& mono) {
    if (term->kind == Kind::Rational) {
        coeff = term->value;
        mono = cached_one();
        return;
    }
    if (term->kind == Kind::Product && term->kids[0]->kind == Kind::Rational) {
        coeff = term->kids[0]->value;
        if (term->kids.size() == 2) {
            mono = term->kids[1];
        } else {
            Expr e;
            e.kind = Kind::Product;
            e.kids.assign(term->kids.begin() + 1, term->kids.end());
            mono = make_node(std::move(e));
        }
        return;
    }
    coeff = Rational(1);
    mono = term;
}

namespace {

// Rebuilds coeff*mono without re-running canonicalization: both pieces are
// already canonical and mono carries no rational factor.
ExprPtr join_term(const Rational& coeff, const ExprPtr& mono) {
    if (coeff.is_zero()) return cached_zero();
    if (is_one_literal(mono)) return constant(coeff);
    if (coeff.is_one()) return mono;
    Expr e;
    e.kind = Kind::Product;
    e.kids.push_back(constant(coeff));
    if (mono->kind == Kind::Product) {
        e.kids.insert(e.kids.end(), mono->kids.begin(), mono->kids.end());
    } else {
        e.kids.push_back(mono);
    }
    return make_node(std::move(e));
}

}  // namespace

ExprPtr make_sum(std::vector<ExprPtr> parts) {
    Rational cacc(0);
    std::map<ExprPtr, Rational, ExprLess> terms;
    std::function<void(const ExprPtr&)> absorb = [&](const ExprPtr& p) {
        if (p->kind == Kind::Sum) {
            for (const auto& k : p->kids) absorb(k);
            return;
        }
        Rational c;
        ExprPtr mono;
        split_term(p, c, mono);
        if (is_one_literal(mono)) {
            cacc = cacc + c;
            return;
        }
        auto it = terms.find(mono);
        if (it == terms.end()) {
            terms.emplace(mono, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    };
    for (const auto& p : parts) absorb(p);

    std::vector<ExprPtr> out;
    if (!cacc.is_zero()) out.push_back(constant(cacc));
    for (const auto& [mono, c] : terms) out.push_back(join_term(c, mono));
    if (out.empty()) return cached_zero();
    if (out.size() == 1) return out[0];
    Expr e;
    e.kind = Kind::Sum;
    e.kids = std::move(out);
    return make_node(std::move(e));
}

ExprPtr make_product(std::vector<ExprPtr> parts) {
    Rational coeff(1);
    std::map<ExprPtr, long long, ExprLess> powers;  // base -> exponent
    std::vector<ExprPtr> sum_factors;

    std::function<void(const ExprPtr&, int)> absorb = [&](const ExprPtr& p, int exp_mult) {
        switch (p->kind) {
            case Kind::Rational:
                coeff = coeff * p->value.pow(exp_mult);
                return;
            case Kind::Product:
                for (const auto& k : p->kids) absorb(k, exp_mult);
                return;
            case Kind::Power:
                absorb(p->kids[0], exp_mult * p->exponent);
                return;
            case Kind::Sum:
                if (exp_mult == 1) {
                    sum_factors.push_back(p);
                } else if (exp_mult > 1) {
                    for (int i = 0; i < exp_mult; ++i) sum_factors.push_back(p);
                } else {
                    powers[p] += exp_mult;  // opaque negative power of a sum
                }
                return;
            default:
                powers[p] += exp_mult;
                return;
        }
    };
    for (const auto& p : parts) absorb(p, 1);
    if (coeff.is_zero()) return cached_zero();

    std::vector<ExprPtr> factors;
    for (const auto& [base, exp] : powers) {
        if (exp == 0) continue;
        if (exp == 1) {
            factors.push_back(base);
        } else {
            if (exp > INT32_MAX || exp < INT32_MIN)
                throw MsympError(Errc::InvalidArgument, "exponent overflow");
            Expr e;
            e.kind = Kind::Power;
            e.exponent = static_cast<int>(exp);
            e.kids.push_back(base);
            factors.push_back(make_node(std::move(e)));
        }
    }

    ExprPtr base_term;
    if (factors.empty()) {
        base_term = constant(coeff);
    } else if (coeff.is_one() && factors.size() == 1) {
        base_term = factors[0];
    } else {
        Expr e;
        e.kind = Kind::Product;
        if (!coeff.is_one()) e.kids.push_back(constant(coeff));
        e.kids.insert(e.kids.end(), factors.begin(), factors.end());
        if (e.kids.size() == 1) {
            base_term = e.kids[0];
        } else {
            base_term = make_node(std::move(e));
        }
    }
    if (sum_factors.empty()) return base_term;

    // distribute over the sum factors
    std::vector<ExprPtr> terms{base_term};
    for (const auto& s : sum_factors) {
        std::vector<ExprPtr> next;
        next.reserve(terms.size() * s->kids.size());
        for (const auto& t : terms)
            for (const auto& sk : s->kids) next.push_back(make_product({t, sk}));
        terms = std::move(next);
    }
    return make_sum(std::move(terms));
}

ExprPtr make_power(const ExprPtr& base, int k) {
    if (k == 0) return cached_one();
    if (k == 1) return base;
    switch (base->kind) {
        case Kind::Rational:
            return constant(base->value.pow(k));
        case Kind::Product:
        case Kind::Power: {
            std::vector<ExprPtr> reps;
            if (k > 0) {
                reps.assign(static_cast<size_t>(k), base);
                return make_product(std::move(reps));
            }
            // negative power: push the exponent through via absorb()
            Expr e;
            e.kind = Kind::Power;
            e.exponent = k;
            e.kids.push_back(base);
            ExprPtr raw = make_node(std::move(e));
            return make_product({raw});
        }
        case Kind::Sum: {
            if (k > 0) {
                std::vector<ExprPtr> reps(static_cast<size_t>(k), base);
                return make_product(std::move(reps));
            }
            Expr e;
            e.kind = Kind::Power;
            e.exponent = k;
            e.kids.push_back(base);
            return make_node(std::move(e));
        }
        default: {
            Expr e;
            e.kind = Kind::Power;
            e.exponent = k;
            e.kids.push_back(base);
            return make_node(std::move(e));
        }
    }
}

ExprPtr apply_fn(Fn f, const ExprPtr& arg) {
    if (is_zero_literal(arg)) {
        switch (f) {
            case Fn::Sin: return cached_zero();
            case Fn::Cos: return cached_one();
            case Fn::Exp: return cached_one();
        }
    }
    Expr e;
    e.kind = Kind::Func;
    e.fn = f;
    e.kids.push_back(arg);
    return make_node(std::move(e));
}

ExprPtr add(const ExprPtr& a, const ExprPtr& b) { return make_sum({a, b}); }
ExprPtr sub(const ExprPtr& a, const ExprPtr& b) { return make_sum({a, neg(b)}); }
ExprPtr neg(const ExprPtr& a) { return make_product({constant(Rational(-1)), a}); }
ExprPtr mul(const ExprPtr& a, const ExprPtr& b) { return make_product({a, b}); }

ExprPtr div_const(const ExprPtr& a, const Rational& r) {
    if (r.is_zero()) throw MsympError(Errc::DivisionByZero, "division by zero");
    return make_product({constant(r.inverse()), a});
}

ExprPtr normalize(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Rational: return constant(e->value);
        case Kind::Symbol: return e;
        case Kind::Func: return apply_fn(e->fn, normalize(e->kids[0]));
        case Kind::Power: return make_power(normalize(e->kids[0]), e->exponent);
        case Kind::Product: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(normalize(k));
            return make_product(std::move(parts));
        }
        case Kind::Sum: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(normalize(k));
            return make_sum(std::move(parts));
        }
    }
    return e;
}

ExprPtr differentiate(const ExprPtr& e, const std::string& sym) {
    switch (e->kind) {
        case Kind::Rational: return cached_zero();
        case Kind::Symbol: return e->name == sym ? cached_one() : cached_zero();
        case Kind::Func: {
            ExprPtr inner = differentiate(e->kids[0], sym);
            if (is_zero_literal(inner)) return cached_zero();
            ExprPtr outer;
            switch (e->fn) {
                case Fn::Sin: outer = apply_fn(Fn::Cos, e->kids[0]); break;
                case Fn::Cos: outer = neg(apply_fn(Fn::Sin, e->kids[0])); break;
                case Fn::Exp: outer = e; break;
            }
            return mul(outer, inner);
        }
        case Kind::Power: {
            ExprPtr db = differentiate(e->kids[0], sym);
            if (is_zero_literal(db)) return cached_zero();
            return make_product({integer(e->exponent), make_power(e->kids[0], e->exponent - 1), db});
        }
        case Kind::Product: {
            std::vector<ExprPtr> terms;
            for (size_t i = 0; i < e->kids.size(); ++i) {
                ExprPtr di = differentiate(e->kids[i], sym);
                if (is_zero_literal(di)) continue;
                std::vector<ExprPtr> fac;
                fac.reserve(e->kids.size());
                for (size_t j = 0; j < e->kids.size(); ++j) fac.push_back(i == j ? di : e->kids[j]);
                terms.push_back(make_product(std::move(fac)));
            }
            return make_sum(std::move(terms));
        }
        case Kind::Sum: {
            std::vector<ExprPtr> terms;
            terms.reserve(e->kids.size());
            for (const auto& k : e->kids) terms.push_back(differentiate(k, sym));
            return make_sum(std::move(terms));
        }
    }
    return cached_zero();
}

bool contains_func(const ExprPtr& e) {
    if (e->kind == Kind::Func) return true;
    for (const auto& k : e->kids)
        if (contains_func(k)) return true;
    return false;
}

bool contains_symbol(const ExprPtr& e, const std::string& s) {
    if (e->kind == Kind::Symbol) return e->name == s;
    for (const auto& k : e->kids)
        if (contains_symbol(k, s)) return true;
    return false;
}

void collect_symbols(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Kind::Symbol) {
        out.insert(e->name);
        return;
    }
    for (const auto& k : e->kids) collect_symbols(k, out);
}

bool is_polynomial(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Rational:
        case Kind::Symbol: return true;
        case Kind::Func: return false;
        case Kind::Power: return e->exponent > 0 && is_polynomial(e->kids[0]);
        case Kind::Product:
        case Kind::Sum:
            for (const auto& k : e->kids)
                if (!is_polynomial(k)) return false;
            return true;
    }
    return false;
}

namespace {

// Laurent shape: power bases are plain symbols, no elementary functions.
// Distinct Laurent monomials are linearly independent as functions, so a
// nonzero canonical form of this shape is a nonzero function.
bool is_laurent(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Rational:
        case Kind::Symbol: return true;
        case Kind::Func: return false;
        case Kind::Power: return e->kids[0]->kind == Kind::Symbol;
        case Kind::Product:
        case Kind::Sum:
            for (const auto& k : e->kids)
                if (!is_laurent(k)) return false;
            return true;
    }
    return false;
}

}  // namespace

ZeroTest is_zero(const ExprPtr& e) {
    if (is_zero_literal(e)) return ZeroTest::Zero;
    if (is_laurent(e)) return ZeroTest::NonZero;
    return ZeroTest::Unknown;
}

double eval(const ExprPtr& e, const Point& p) {
    switch (e->kind) {
        case Kind::Rational: return e->value.to_double();
        case Kind::Symbol: {
            auto it = p.find(e->name);
            if (it == p.end())
                throw MsympError(Errc::UnboundSymbol, "unbound symbol '" + e->name + "'");
            return it->second;
        }
        case Kind::Func: {
            double a = eval(e->kids[0], p);
            switch (e->fn) {
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
                case Fn::Exp: return std::exp(a);
            }
            return 0.0;
        }
        case Kind::Power: {
            double b = eval(e->kids[0], p);
            int k = e->exponent;
            double acc = 1.0, base = k > 0 ? b : 1.0 / b;
            for (int i = 0, n = std::abs(k); i < n; ++i) acc *= base;
            return acc;
        }
        case Kind::Product: {
            double acc = 1.0;
            for (const auto& k : e->kids) acc *= eval(k, p);
            return acc;
        }
        case Kind::Sum: {
            double acc = 0.0;
            for (const auto& k : e->kids) acc += eval(k, p);
            return acc;
        }
    }
    return 0.0;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
    switch (e->kind) {
        case Kind::Rational: return e;
        case Kind::Symbol: {
            auto it = bindings.find(e->name);
            return it == bindings.end() ? e : it->second;
        }
        case Kind::Func: return apply_fn(e->fn, substitute(e->kids[0], bindings));
        case Kind::Power: return make_power(substitute(e->kids[0], bindings), e->exponent);
        case Kind::Product: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(substitute(k, bindings));
            return make_product(std::move(parts));
        }
        case Kind::Sum: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(substitute(k, bindings));
            return make_sum(std::move(parts));
        }
    }
    return e;
}

namespace {

// term = coeff * s^k * rest, with rest free of s; throws NotPolynomial
// when s sits inside a function or carries a negative power.
void split_in_var(const ExprPtr& term, const std::string& s, int& k, ExprPtr& rest) {
    Rational coeff;
    ExprPtr mono;
    split_term(term, coeff, mono);
    std::vector<ExprPtr> factors;
    if (mono->kind == Kind::Product) {
        factors = mono->kids;
    } else if (!is_one_literal(mono)) {
        factors.push_back(mono);
    }
    k = 0;
    std::vector<ExprPtr> keep{constant(coeff)};
    for (const auto& f : factors) {
        if (f->kind == Kind::Symbol && f->name == s) {
            k += 1;
        } else if (f->kind == Kind::Power && f->kids[0]->kind == Kind::Symbol &&
                   f->kids[0]->name == s) {
            if (f->exponent < 0)
                throw MsympError(Errc::NotPolynomial, "negative power of '" + s + "'");
            k += f->exponent;
        } else if (contains_symbol(f, s)) {
            throw MsympError(Errc::NotPolynomial,
                             "'" + s + "' occurs inside a non-polynomial factor");
        } else {
            keep.push_back(f);
        }
    }
    rest = make_product(std::move(keep));
}

}  // namespace

ExprPtr integrate_poly(const ExprPtr& e, const std::string& s) {
    std::vector<ExprPtr> terms;
    if (e->kind == Kind::Sum) {
        terms = e->kids;
    } else {
        terms.push_back(e);
    }
    std::vector<ExprPtr> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        int k = 0;
        ExprPtr rest;
        split_in_var(t, s, k, rest);
        out.push_back(make_product(
            {constant(Rational(1) / Rational(k + 1)), rest, make_power(symbol(s), k + 1)}));
    }
    return make_sum(std::move(out));
}

namespace {

bool needs_parens_in_product(const ExprPtr& e) { return e->kind == Kind::Sum; }

void print_rec(const ExprPtr& e, std::string& out);

void print_product_body(const ExprPtr& e, std::string& out) {
    // caller guarantees e is a canonical Product
    bool first = true;
    size_t start = 0;
    if (e->kids[0]->kind == Kind::Rational && Rational::cmp(e->kids[0]->value, Rational(-1)) == 0 &&
        e->kids.size() > 1) {
        out += "-";
        start = 1;
    }
    for (size_t i = start; i < e->kids.size(); ++i) {
        const auto& k = e->kids[i];
        if (!first) out += "*";
        first = false;
        if (needs_parens_in_product(k)) {
            out += "(";
            print_rec(k, out);
            out += ")";
        } else {
            print_rec(k, out);
        }
    }
}

void print_rec(const ExprPtr& e, std::string& out) {
    switch (e->kind) {
        case Kind::Rational: {
            if (e->value.sign() < 0) {
                out += "-";
                out += (-e->value).to_string();
            } else {
                out += e->value.to_string();
            }
            return;
        }
        case Kind::Symbol: out += e->name; return;
        case Kind::Func: {
            switch (e->fn) {
                case Fn::Sin: out += "sin("; break;
                case Fn::Cos: out += "cos("; break;
                case Fn::Exp: out += "exp("; break;
            }
            print_rec(e->kids[0], out);
            out += ")";
            return;
        }
        case Kind::Power: {
            const ExprPtr& b = e->kids[0];
            if (b->kind == Kind::Symbol || b->kind == Kind::Func) {
                print_rec(b, out);
            } else {
                out += "(";
                print_rec(b, out);
                out += ")";
            }
            out += "^" + std::to_string(e->exponent);
            return;
        }
        case Kind::Product: print_product_body(e, out); return;
        case Kind::Sum: {
            bool first = true;
            for (const auto& k : e->kids) {
                Rational c;
                ExprPtr mono;
                split_term(k, c, mono);
                if (first) {
                    print_rec(k, out);
                    first = false;
                    continue;
                }
                if (c.sign() < 0) {
                    out += " - ";
                    print_rec(join_term(-c, mono), out);
                } else {
                    out += " + ";
                    print_rec(k, out);
                }
            }
            return;
        }
    }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnboundSymbol: return "UnboundSymbol";
        case Errc::NotPolynomial: return "NotPolynomial";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ChartMismatch: return "ChartMismatch";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::NoInverse: return "NoInverse";
        case Errc::InverseCheckFailed: return "InverseCheckFailed";
        case Errc::VerticalConditionViolated: return "VerticalConditionViolated";
        case Errc::NotInNormalForm: return "NotInNormalForm";
        case Errc::NotClosed: return "NotClosed";
        case Errc::HomotopyNotPolynomial: return "HomotopyNotPolynomial";
        case Errc::NotCartan: return "NotCartan";
        case Errc::OrderMismatch: return "OrderMismatch";
        case Errc::MissingTheta: return "MissingTheta";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace msymp
