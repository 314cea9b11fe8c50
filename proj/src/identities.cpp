#include "msymp/identities.hpp"

#include <functional>

namespace msymp {

ChartPtr random_chart(SplitMix64& rng, int max_m, int max_n) {
    int m = static_cast<int>(rng.uniform_int(1, max_m));
    int n = static_cast<int>(rng.uniform_int(1, max_n));
    std::vector<std::string> base, fiber;
    for (int i = 0; i < m; ++i) base.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < n; ++j) fiber.push_back("y" + std::to_string(j + 1));
    return make_chart(base, fiber);
}

ExprPtr random_poly(SplitMix64& rng, const std::vector<std::string>& names, int max_degree,
                    int max_terms) {
    int terms = static_cast<int>(rng.uniform_int(1, max_terms));
    std::vector<ExprPtr> parts;
    for (int t = 0; t < terms; ++t) {
        long long coeff = rng.uniform_int(-3, 3);
        if (coeff == 0) coeff = 1;
        std::vector<ExprPtr> fac{integer(coeff)};
        int deg = static_cast<int>(rng.uniform_int(0, max_degree));
        for (int d = 0; d < deg; ++d)
            fac.push_back(symbol(names[static_cast<size_t>(rng.uniform_int(
                0, static_cast<long long>(names.size()) - 1))]));
        parts.push_back(make_product(std::move(fac)));
    }
    return make_sum(std::move(parts));
}

DiffForm random_form(SplitMix64& rng, const ChartPtr& c, int degree, int max_coeff_degree) {
    DiffForm a(c, degree);
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int start) {
        if (static_cast<int>(cur.size()) == degree) {
            if (rng.next() % 2 == 0) a.set(cur, random_poly(rng, c->names(), max_coeff_degree, 2));
            return;
        }
        for (int i = start; i < c->dim(); ++i) {
            cur.push_back(i);
            gen(i + 1);
            cur.pop_back();
        }
    };
    gen(0);
    return a;
}

MultiVector random_decomposable(SplitMix64& rng, const ChartPtr& c, int degree) {
    MultiVector acc(c, 0);
    acc.set({}, one());
    for (int f = 0; f < degree; ++f) {
        MultiVector v(c, 1);
        int nonzero = static_cast<int>(rng.uniform_int(0, c->dim() - 1));
        for (int i = 0; i < c->dim(); ++i) {
            if (i == nonzero || rng.next() % 3 == 0) {
                v.set({i}, random_poly(rng, c->names(), 1, 2));
            }
        }
        acc = wedge(acc, v);
    }
    return acc;
}

namespace {

bool form_sym_zero(const DiffForm& a, std::vector<std::string>& failures) {
    bool ok = true;
    for (const auto& [k, v] : a.g().coeffs()) {
        (void)k;
        if (is_zero(v) != ZeroTest::Zero) {
            failures.push_back(to_string(v));
            ok = false;
        }
    }
    return ok;
}

bool mv_sym_zero(const MultiVector& a, std::vector<std::string>& failures) {
    bool ok = true;
    for (const auto& [k, v] : a.g().coeffs()) {
        (void)k;
        if (is_zero(v) != ZeroTest::Zero) {
            failures.push_back(to_string(v));
            ok = false;
        }
    }
    return ok;
}

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

IdentityReport run_identity_suite(uint64_t seed, int cases) {
    IdentityReport rep;
    rep.seed = seed;
    rep.cases = cases;

    IdentityGroup g_dd{"d.d=0", 0, {}};
    IdentityGroup g_leib{"d-graded-leibniz", 0, {}};
    IdentityGroup g_deg{"contraction-degree-rule", 0, {}};
    IdentityGroup g_sn1{"sn-graded-antisymmetry", 0, {}};
    IdentityGroup g_sn2{"sn-wedge-leibniz", 0, {}};
    IdentityGroup g_sn3{"sn-graded-jacobi", 0, {}};
    IdentityGroup g_sn4{"sn-contraction-commutator", 0, {}};
    IdentityGroup g_def{"sn-defining-relation", 0, {}};
    IdentityGroup g_cartan{"lie-cartan-degree-1", 0, {}};

    for (int case_i = 0; case_i < cases; ++case_i) {
        SplitMix64 rng(seed * 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(case_i) + 1);

        // d.d = 0
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int deg = static_cast<int>(rng.uniform_int(0, c->dim() - 1));
            DiffForm a = random_form(rng, c, deg, 2);
            g_dd.cases++;
            form_sym_zero(exterior_derivative(exterior_derivative(a)), g_dd.failures);
        }
        // d(a ^ b) = da ^ b + (-1)^deg(a) a ^ db
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int da = static_cast<int>(rng.uniform_int(0, 2));
            int db = static_cast<int>(rng.uniform_int(0, 2));
            DiffForm a = random_form(rng, c, da, 2);
            DiffForm b = random_form(rng, c, db, 2);
            DiffForm lhs = exterior_derivative(wedge(a, b));
            DiffForm rhs = add(wedge(exterior_derivative(a), b),
                               scale(wedge(a, exterior_derivative(b)), integer(sign_pow(da))));
            g_leib.cases++;
            form_sym_zero(add(lhs, scale(rhs, integer(-1))), g_leib.failures);
        }
        // deg(i(X)a) = deg a - deg X, and zero when deg a < deg X
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int dx = static_cast<int>(rng.uniform_int(1, c->dim()));
            int da = static_cast<int>(rng.uniform_int(0, c->dim()));
            MultiVector x = random_decomposable(rng, c, dx);
            DiffForm a = random_form(rng, c, da, 2);
            DiffForm r = contract(x, a);
            g_deg.cases++;
            if (da < dx) {
                if (!(r.degree() == 0 && r.g().empty()))
                    g_deg.failures.push_back("nonzero contraction below degree");
            } else if (r.degree() != da - dx) {
                g_deg.failures.push_back("wrong contraction degree");
            }
        }
        // [X,Y] = -(-1)^{(i+1)(j+1)} [Y,X]
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int i = static_cast<int>(rng.uniform_int(1, 3));
            int j = static_cast<int>(rng.uniform_int(1, 3));
            MultiVector x = random_decomposable(rng, c, i);
            MultiVector y = random_decomposable(rng, c, j);
            MultiVector lhs = sn_bracket(x, y);
            MultiVector rhs = scale(sn_bracket(y, x), integer(-sign_pow((i + 1) * (j + 1))));
            g_sn1.cases++;
            mv_sym_zero(add(lhs, scale(rhs, integer(-1))), g_sn1.failures);
        }
        // [X, Y^Z] = [X,Y]^Z + (-1)^{(i+1) j} Y^[X,Z]
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int i = static_cast<int>(rng.uniform_int(1, 2));
            int j = static_cast<int>(rng.uniform_int(1, 2));
            int k = static_cast<int>(rng.uniform_int(1, 2));
            MultiVector x = random_decomposable(rng, c, i);
            MultiVector y = random_decomposable(rng, c, j);
            MultiVector z = random_decomposable(rng, c, k);
            MultiVector lhs = sn_bracket(x, wedge(y, z));
            MultiVector rhs = add(wedge(sn_bracket(x, y), z),
                                  scale(wedge(y, sn_bracket(x, z)), integer(sign_pow((i + 1) * j))));
            g_sn2.cases++;
            mv_sym_zero(add(lhs, scale(rhs, integer(-1))), g_sn2.failures);
        }
        // graded Jacobi, total degree <= 5
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int i = static_cast<int>(rng.uniform_int(1, 3));
            int j = static_cast<int>(rng.uniform_int(1, i == 3 ? 1 : 2));
            int kmax = 5 - i - j;
            int k = static_cast<int>(rng.uniform_int(1, kmax < 1 ? 1 : kmax));
            MultiVector x = random_decomposable(rng, c, i);
            MultiVector y = random_decomposable(rng, c, j);
            MultiVector z = random_decomposable(rng, c, k);
            MultiVector t1 = scale(sn_bracket(x, sn_bracket(y, z)), integer(sign_pow((i + 1) * (k + 1))));
            MultiVector t2 = scale(sn_bracket(y, sn_bracket(z, x)), integer(sign_pow((j + 1) * (i + 1))));
            MultiVector t3 = scale(sn_bracket(z, sn_bracket(x, y)), integer(sign_pow((k + 1) * (j + 1))));
            g_sn3.cases++;
            mv_sym_zero(add(add(t1, t2), t3), g_sn3.failures);
        }
        // i([X,Y]) W = L(X) i(Y) W - i(Y) L(X) W, X a vector field
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int j = static_cast<int>(rng.uniform_int(1, 2));
            int dw = static_cast<int>(rng.uniform_int(j, c->dim()));
            MultiVector x = random_decomposable(rng, c, 1);
            MultiVector y = random_decomposable(rng, c, j);
            DiffForm w = random_form(rng, c, dw, 2);
            DiffForm lhs = contract(sn_bracket(x, y), w);
            DiffForm rhs = add(lie_derivative(x, contract(y, w)),
                               scale(contract(y, lie_derivative(x, w)), integer(-1)));
            g_sn4.cases++;
            form_sym_zero(add(lhs, scale(rhs, integer(-1))), g_sn4.failures);
        }
        // Defining relation, with the global sign forced by the
        // first-factor-innermost contraction order:
        //   L([Y,X]) = (-1)^{(i+1)(j+1)} L(Y) L(X) - L(X) L(Y)
        // For i or j odd (every case with a vector field) this is the plain
        // graded commutator L(Y)L(X) - (-1)^{(i+1)(j+1)} L(X)L(Y).
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int i = static_cast<int>(rng.uniform_int(1, 2));
            int j = static_cast<int>(rng.uniform_int(1, 2));
            int da = static_cast<int>(rng.uniform_int(0, c->dim()));
            MultiVector y = random_decomposable(rng, c, i);
            MultiVector x = random_decomposable(rng, c, j);
            DiffForm a = random_form(rng, c, da, 2);
            DiffForm lhs = lie_derivative(sn_bracket(y, x), a);
            DiffForm rhs = add(scale(lie_derivative(y, lie_derivative(x, a)),
                                     integer(sign_pow((i + 1) * (j + 1)))),
                               scale(lie_derivative(x, lie_derivative(y, a)), integer(-1)));
            g_def.cases++;
            form_sym_zero(add(lhs, scale(rhs, integer(-1))), g_def.failures);
        }
        // degree-1 Lie derivative agrees with d i(X) + i(X) d
        {
            ChartPtr c = random_chart(rng, 2, 3);
            int da = static_cast<int>(rng.uniform_int(0, c->dim()));
            MultiVector x = random_decomposable(rng, c, 1);
            DiffForm a = random_form(rng, c, da, 2);
            DiffForm lhs = lie_derivative(x, a);
            DiffForm rhs = add(exterior_derivative(contract(x, a)),
                               contract(x, exterior_derivative(a)));
            g_cartan.cases++;
            form_sym_zero(add(lhs, scale(rhs, integer(-1))), g_cartan.failures);
        }
    }

    rep.groups = {g_dd, g_leib, g_deg, g_sn1, g_sn2, g_sn3, g_sn4, g_def, g_cartan};
    return rep;
}

}  // namespace msymp
