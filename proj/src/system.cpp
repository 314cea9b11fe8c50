#include "msymp/system.hpp"

#include <algorithm>
#include <cmath>

#include "msymp/error.hpp"
#include "msymp/numeric.hpp"

namespace msymp {

DecomposableAnsatz::DecomposableAnsatz(ChartPtr c, std::vector<std::vector<ExprPtr>> xc)
    : chart(std::move(c)), coef(std::move(xc)) {
    if (static_cast<int>(coef.size()) != chart->fiber_dim())
        throw MsympError(Errc::InvalidArgument, "ansatz needs one row per fiber coordinate");
    for (const auto& row : coef)
        if (static_cast<int>(row.size()) != chart->base_dim())
            throw MsympError(Errc::InvalidArgument, "ansatz row needs one entry per base coordinate");
}

MultiVector DecomposableAnsatz::direction(int mu) const {
    MultiVector v(chart, 1);
    v.set({mu}, one());
    int m = chart->base_dim();
    for (int j = 0; j < chart->fiber_dim(); ++j) {
        const ExprPtr& c = coef[static_cast<size_t>(j)][static_cast<size_t>(mu)];
        if (!is_zero_literal(c)) v.set({m + j}, c);
    }
    return v;
}

MultiVector DecomposableAnsatz::expand() const {
    MultiVector acc(chart, 0);
    acc.set({}, one());
    for (int mu = 0; mu < chart->base_dim(); ++mu) acc = wedge(acc, direction(mu));
    return acc;
}

InvolutivityResult involutivity_check(const DecomposableAnsatz& a, const ProbeCfg& cfg) {
    const ChartPtr& c = a.chart;
    auto apply_v = [&](int mu, const ExprPtr& g) {
        ExprPtr acc = differentiate(g, c->name(mu));
        for (int j = 0; j < c->fiber_dim(); ++j) {
            ExprPtr dj = differentiate(g, c->name(c->base_dim() + j));
            if (!is_zero_literal(dj))
                acc = add(acc, mul(a.coef[static_cast<size_t>(j)][static_cast<size_t>(mu)], dj));
        }
        return acc;
    };
    InvolutivityResult res{true, {}};
    for (int mu = 0; mu < c->base_dim(); ++mu) {
        for (int nu = mu + 1; nu < c->base_dim(); ++nu) {
            for (int j = 0; j < c->fiber_dim(); ++j) {
                ExprPtr ob = sub(apply_v(mu, a.coef[static_cast<size_t>(j)][static_cast<size_t>(nu)]),
                                 apply_v(nu, a.coef[static_cast<size_t>(j)][static_cast<size_t>(mu)]));
                Verdict v = classify_zero(ob, cfg);
                if (v == Verdict::NonZero) {
                    res.involutive = false;
                    res.obstructions.push_back(
                        {"[" + c->name(mu) + "," + c->name(nu) + "]." + c->name(c->base_dim() + j), ob, v});
                }
            }
        }
    }
    return res;
}

namespace {

int fiber_count(const ChartPtr& c, const KeyTuple& k) {
    int n = 0;
    for (int i : k.ix)
        if (c->is_fiber(i)) ++n;
    return n;
}

std::string key_string(const ChartPtr& c, const KeyTuple& k, const ExprPtr& v) {
    std::string out = "(" + to_string(v) + ")";
    for (int i : k.ix) out += " d" + c->name(i);
    return out;
}

}  // namespace

std::vector<std::string> normal_form_violations(const DiffForm& omega) {
    std::vector<std::string> bad;
    const ChartPtr& c = omega.chart();
    for (const auto& [k, v] : omega.g().coeffs()) {
        int f = fiber_count(c, k);
        if (f < 1 || f > 2) bad.push_back(key_string(c, k, v));
    }
    return bad;
}

PremultisymplecticSystem system_from_theta(const ChartPtr& chart, const DiffForm& theta) {
    if (theta.degree() != chart->base_dim())
        throw MsympError(Errc::DegreeMismatch, "theta must have the base degree");
    PremultisymplecticSystem s;
    s.chart = chart;
    s.theta = theta;
    s.omega = scale(exterior_derivative(theta), integer(-1));
    s.vol = volume_form(chart);
    if (chart->base_dim() >= 2) {
        for (const auto& [k, v] : s.omega.g().coeffs()) {
            if (fiber_count(chart, k) >= 3) {
                MsympError err(Errc::VerticalConditionViolated,
                               "omega has a key with three or more vertical indices");
                err.terms.push_back(key_string(chart, k, v));
                throw err;
            }
        }
    }
    try {
        s.data = extract_coordinate_data(s);
    } catch (const MsympError&) {
        s.data.reset();
    }
    return s;
}

DiffForm rebuild_from_coordinate_data(const ChartPtr& chart, const CoordinateData& data) {
    int m = chart->base_dim(), n = chart->fiber_dim();
    DiffForm vol = volume_form(chart);
    DiffForm omega(chart, m + 1);
    for (int j = 0; j < n; ++j) {
        for (int mu = 0; mu < m; ++mu) {
            const ExprPtr& f = data.F[static_cast<size_t>(j)][static_cast<size_t>(mu)];
            if (is_zero_literal(f)) continue;
            DiffForm df(chart, 1);
            for (int i = 0; i < chart->dim(); ++i) {
                ExprPtr d = differentiate(f, chart->name(i));
                if (!is_zero_literal(d)) df.set({i}, d);
            }
            DiffForm dxm = contract(coordinate_vector(chart, mu), vol);
            omega = add(omega, wedge(wedge(df, coordinate_differential(chart, m + j)), dxm));
        }
    }
    DiffForm de(chart, 1);
    for (int i = 0; i < chart->dim(); ++i) {
        ExprPtr d = differentiate(data.E, chart->name(i));
        if (!is_zero_literal(d)) de.set({i}, d);
    }
    omega = add(omega, wedge(de, vol));
    return omega;
}

PremultisymplecticSystem system_from_coordinate_data(const ChartPtr& chart, CoordinateData data) {
    int m = chart->base_dim(), n = chart->fiber_dim();
    if (static_cast<int>(data.F.size()) != n)
        throw MsympError(Errc::InvalidArgument, "F needs one row per fiber coordinate");
    for (const auto& row : data.F)
        if (static_cast<int>(row.size()) != m)
            throw MsympError(Errc::InvalidArgument, "F row needs one entry per base coordinate");
    PremultisymplecticSystem s;
    s.chart = chart;
    s.omega = rebuild_from_coordinate_data(chart, data);
    s.vol = volume_form(chart);
    s.data = std::move(data);
    return s;
}

PremultisymplecticSystem system_from_omega(const ChartPtr& chart, const DiffForm& omega) {
    if (omega.degree() != chart->base_dim() + 1)
        throw MsympError(Errc::DegreeMismatch, "omega must have degree m+1");
    PremultisymplecticSystem s;
    s.chart = chart;
    s.omega = omega;
    s.vol = volume_form(chart);
    try {
        s.data = extract_coordinate_data(s);
    } catch (const MsympError&) {
        s.data.reset();
    }
    return s;
}

namespace {

// Reads (F, E) off a candidate potential of Omega in normal shape:
// F_j^mu from the dy^j ∧ d^{m-1}x_mu slots, E from the volume slot.
// Returns nothing when the potential carries other monomials.
std::optional<CoordinateData> read_normal_potential(const ChartPtr& chart, const DiffForm& pot) {
    int m = chart->base_dim(), n = chart->fiber_dim();
    CoordinateData data;
    data.F.assign(static_cast<size_t>(n), std::vector<ExprPtr>(static_cast<size_t>(m), zero()));
    data.E = zero();
    DiffForm vol = volume_form(chart);
    // basis m-forms dy^j ∧ d^{m-1}x_mu, keyed canonically
    DiffForm probe(chart, m);
    for (const auto& [k, v] : pot.g().coeffs()) {
        int fc = fiber_count(chart, k);
        if (fc == 0) {
            // all-base key: the E d^m x slot
            data.E = v;
            continue;
        }
        if (fc != 1) return std::nullopt;
        // locate the fiber index and the missing base index
        int j = -1, mu = -1;
        std::vector<bool> present(static_cast<size_t>(m), false);
        for (int i : k.ix) {
            if (chart->is_fiber(i)) {
                j = i - m;
            } else {
                present[static_cast<size_t>(i)] = true;
            }
        }
        for (int b = 0; b < m; ++b)
            if (!present[static_cast<size_t>(b)]) mu = b;
        if (mu < 0) return std::nullopt;  // fiber key but all base present: degree mismatch
        // coefficient of F dy^j ∧ d^{m-1}x_mu on this canonical key
        DiffForm basis = wedge(coordinate_differential(chart, m + j),
                               contract(coordinate_vector(chart, mu), vol));
        ExprPtr unit = basis.g().coeff(k);
        if (is_zero_literal(unit)) return std::nullopt;
        // unit is +1 or -1
        data.F[static_cast<size_t>(j)][static_cast<size_t>(mu)] =
            is_one_literal(unit) ? v : neg(v);
    }
    return data;
}

// Per-variable antiderivative from zero: the potential of a closed fiber
// k-form built by integrating the highest fiber variable first.
DiffForm fiber_staircase_potential(const ChartPtr& chart, DiffForm form) {
    const int m = chart->base_dim();
    DiffForm pot(chart, form.degree() - 1);
    for (int j = chart->fiber_dim() - 1; j >= 0; --j) {
        int idx = m + j;
        const std::string& var = chart->name(idx);
        // alpha = integral_0^{y} i(d/dy) form
        DiffForm gamma = contract(coordinate_vector(chart, idx), form);
        if (gamma.g().empty()) continue;
        DiffForm alpha(chart, gamma.degree());
        for (const auto& [k, v] : gamma.g().coeffs()) {
            ExprPtr integ;
            try {
                integ = integrate_poly(v, var);
            } catch (const MsympError&) {
                MsympError err(Errc::NotInNormalForm,
                               "coefficient not polynomial in fiber variable '" + var + "'");
                err.terms.push_back(to_string(v));
                throw err;
            }
            alpha.set(std::vector<int>(k.ix), integ);
        }
        pot = add(pot, alpha);
        // remaining form has no d(var) and no var dependence
        DiffForm dalpha = exterior_derivative(alpha);
        form = add(form, scale(dalpha, integer(-1)));
    }
    return pot;
}

}  // namespace

CoordinateData extract_coordinate_data(const PremultisymplecticSystem& s) {
    const ChartPtr& chart = s.chart;
    {
        std::vector<std::string> bad = normal_form_violations(s.omega);
        if (!bad.empty()) {
            MsympError err(Errc::NotInNormalForm, "omega has terms outside the adapted shape");
            err.terms = std::move(bad);
            throw err;
        }
    }
    // fast path: -theta already in normal shape
    if (s.theta) {
        DiffForm cand = scale(*s.theta, integer(-1));
        if (auto data = read_normal_potential(chart, cand)) {
            DiffForm residual = add(rebuild_from_coordinate_data(chart, *data),
                                    scale(s.omega, integer(-1)));
            if (residual.g().empty()) return *data;
        }
    }
    // split off the two-fiber part and find its fiber potential
    DiffForm two_fiber(chart, s.omega.degree());
    for (const auto& [k, v] : s.omega.g().coeffs())
        if (fiber_count(chart, k) == 2) two_fiber.set(std::vector<int>(k.ix), v);
    DiffForm fpart = fiber_staircase_potential(chart, two_fiber);

    // remainder must be dE ∧ vol-shaped
    DiffForm remainder = add(s.omega, scale(exterior_derivative(fpart), integer(-1)));
    DiffForm epart = fiber_staircase_potential(chart, remainder);
    DiffForm pot = add(fpart, epart);

    auto data = read_normal_potential(chart, pot);
    if (data) {
        DiffForm residual =
            add(rebuild_from_coordinate_data(chart, *data), scale(s.omega, integer(-1)));
        if (residual.g().empty()) return *data;
    }
    MsympError err(Errc::NotInNormalForm, "omega is not realizable in the adapted normal shape");
    if (data) {
        DiffForm residual =
            add(rebuild_from_coordinate_data(chart, *data), scale(s.omega, integer(-1)));
        for (const auto& [k, v] : residual.g().coeffs()) err.terms.push_back(key_string(chart, k, v));
    }
    throw err;
}

NondegeneracyResult nondegeneracy_probe(const PremultisymplecticSystem& s,
                                        const std::vector<Point>& points, double tol) {
    const ChartPtr& c = s.chart;
    int dim = c->dim();
    // columns: all degree-m keys
    std::vector<KeyTuple> columns;
    std::vector<DiffForm> rows;
    for (int i = 0; i < dim; ++i) rows.push_back(contract(coordinate_vector(c, i), s.omega));
    std::function<void(int, std::vector<int>&)> gen = [&](int start, std::vector<int>& cur) {
        if (static_cast<int>(cur.size()) == c->base_dim()) {
            columns.push_back(KeyTuple{cur});
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur.push_back(i);
            gen(i + 1, cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    gen(0, cur);

    NondegeneracyResult res{true, {}};
    for (const auto& p : points) {
        std::vector<std::vector<double>> mat(static_cast<size_t>(dim),
                                             std::vector<double>(columns.size(), 0.0));
        for (int i = 0; i < dim; ++i)
            for (size_t col = 0; col < columns.size(); ++col) {
                ExprPtr coeff = rows[static_cast<size_t>(i)].g().coeff(columns[col]);
                if (!is_zero_literal(coeff)) mat[static_cast<size_t>(i)][col] = eval(coeff, p);
            }
        int rank = matrix_rank(std::move(mat), tol);
        res.kernel_dims.push_back(dim - rank);
        if (rank != dim) res.multisymplectic = false;
    }
    return res;
}

FieldEquationResidual section_residual_sect1(const PremultisymplecticSystem& s, const Section& psi,
                                             const ProbeCfg& cfg) {
    FieldEquationResidual out;
    const ChartPtr& c = s.chart;
    KeyTuple base_key;
    for (int i = 0; i < c->base_dim(); ++i) base_key.ix.push_back(i);
    for (int i = 0; i < c->dim(); ++i) {
        DiffForm pulled = pullback_form(psi, contract(coordinate_vector(c, i), s.omega));
        ExprPtr r = pulled.g().coeff(base_key);
        out.entries.push_back({"Y=d/d" + c->name(i), r, classify_zero(r, cfg)});
    }
    return out;
}

namespace {

std::map<std::string, ExprPtr> section_bindings(const Section& psi) {
    std::map<std::string, ExprPtr> bind;
    const ChartPtr& c = psi.chart;
    for (int j = 0; j < c->fiber_dim(); ++j)
        bind[c->name(c->base_dim() + j)] = psi.fiber_fn[static_cast<size_t>(j)];
    return bind;
}

}  // namespace

FieldEquationResidual section_residual_sect2(const PremultisymplecticSystem& s, const Section& psi,
                                             const ProbeCfg& cfg) {
    const ChartPtr& c = s.chart;
    auto bind = section_bindings(psi);
    DiffForm omega_on_psi(c, s.omega.degree());
    for (const auto& [k, v] : s.omega.g().coeffs())
        omega_on_psi.set(std::vector<int>(k.ix), substitute(v, bind));
    DiffForm oneform = contract(prolong(psi), omega_on_psi);
    FieldEquationResidual out;
    for (int i = 0; i < c->dim(); ++i) {
        ExprPtr r = oneform.g().coeff(KeyTuple{{i}});
        out.entries.push_back({"d" + c->name(i), r, classify_zero(r, cfg)});
    }
    return out;
}

EulerEquations euler_equations(const PremultisymplecticSystem& s) {
    const ChartPtr& c = s.chart;
    if (!s.data)
        throw MsympError(Errc::NotInNormalForm, "no coordinate data available for this system");
    int m = c->base_dim(), n = c->fiber_dim();
    std::vector<std::vector<ExprPtr>> jets(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int mu = 0; mu < m; ++mu)
            jets[static_cast<size_t>(j)].push_back(symbol(c->jet_name(m + j, mu)));
    DecomposableAnsatz jet_ansatz(c, jets);
    DiffForm oneform = contract(jet_ansatz.expand(), s.omega);
    EulerEquations out;
    for (int i = 0; i < c->dim(); ++i) {
        ExprPtr r = oneform.g().coeff(KeyTuple{{i}});
        NamedResidual entry{(c->is_fiber(i) ? "fiber:" : "base:") + c->name(i), r,
                            is_zero_literal(r) ? Verdict::SymbolicZero : Verdict::NonZero};
        if (c->is_fiber(i)) {
            out.fiber_family.push_back(entry);
        } else {
            out.base_family.push_back(entry);
        }
    }
    return out;
}

FieldEquationResidual mv_kernel_residual(const PremultisymplecticSystem& s,
                                         const DecomposableAnsatz& a, const ProbeCfg& cfg) {
    if (a.chart.get() != s.chart.get())
        throw MsympError(Errc::ChartMismatch, "ansatz lives on a different chart");
    DiffForm oneform = contract(a.expand(), s.omega);
    FieldEquationResidual out;
    for (int i = 0; i < s.chart->dim(); ++i) {
        ExprPtr r = oneform.g().coeff(KeyTuple{{i}});
        out.entries.push_back({"d" + s.chart->name(i), r, classify_zero(r, cfg)});
    }
    return out;
}

FieldEquationResidual integral_section_check(const DecomposableAnsatz& a, const Section& psi,
                                             const ProbeCfg& cfg) {
    if (a.chart.get() != psi.chart.get())
        throw MsympError(Errc::ChartMismatch, "ansatz and section live on different charts");
    const ChartPtr& c = a.chart;
    auto bind = section_bindings(psi);
    FieldEquationResidual out;
    for (int j = 0; j < c->fiber_dim(); ++j) {
        for (int mu = 0; mu < c->base_dim(); ++mu) {
            ExprPtr r = sub(substitute(a.coef[static_cast<size_t>(j)][static_cast<size_t>(mu)], bind),
                            differentiate(psi.fiber_fn[static_cast<size_t>(j)], c->name(mu)));
            out.entries.push_back({"X^" + c->name(c->base_dim() + j) + "_" + c->name(mu), r,
                                   classify_zero(r, cfg)});
        }
    }
    return out;
}

double action_evaluate(const PremultisymplecticSystem& s, const Section& psi,
                       const std::vector<std::pair<double, double>>& box, int quadrature_points) {
    if (!s.theta) throw MsympError(Errc::MissingTheta, "action needs theta");
    const ChartPtr& c = s.chart;
    int m = c->base_dim();
    if (static_cast<int>(box.size()) != m)
        throw MsympError(Errc::InvalidArgument, "box needs one interval per base coordinate");
    DiffForm pulled = pullback_form(psi, *s.theta);
    KeyTuple base_key;
    for (int i = 0; i < m; ++i) base_key.ix.push_back(i);
    ExprPtr f = pulled.g().coeff(base_key);
    if (is_zero_literal(f)) return 0.0;

    std::vector<double> nodes, weights;
    gauss_legendre(quadrature_points, nodes, weights);
    std::vector<int> idx(static_cast<size_t>(m), 0);
    double total = 0.0;
    for (;;) {
        Point p;
        double w = 1.0;
        for (int d = 0; d < m; ++d) {
            auto [lo, hi] = box[static_cast<size_t>(d)];
            double half = 0.5 * (hi - lo);
            p[c->name(d)] = lo + half * (nodes[static_cast<size_t>(idx[static_cast<size_t>(d)])] + 1.0);
            w *= half * weights[static_cast<size_t>(idx[static_cast<size_t>(d)])];
        }
        total += w * eval(f, p);
        int d = 0;
        for (; d < m; ++d) {
            if (++idx[static_cast<size_t>(d)] < quadrature_points) break;
            idx[static_cast<size_t>(d)] = 0;
        }
        if (d == m) break;
    }
    return total;
}

AnsatzSolveResult solve_ansatz_at_point(const PremultisymplecticSystem& s, const Point& p,
                                        uint64_t seed) {
    const ChartPtr& c = s.chart;
    int m = c->base_dim(), n = c->fiber_dim();
    int nu = n * m;  // unknown count
    // unknown symbols w_0..; chart coordinates bound to the point
    std::vector<std::string> uname;
    std::vector<std::vector<ExprPtr>> ucoef(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int mu_ = 0; mu_ < m; ++mu_) {
            std::string nm = "w" + std::to_string(j) + "_" + std::to_string(mu_);
            uname.push_back(nm);
            ucoef[static_cast<size_t>(j)].push_back(symbol(nm));
        }
    DecomposableAnsatz a(c, ucoef);
    DiffForm oneform = contract(a.expand(), s.omega);
    std::vector<ExprPtr> residual_exprs;
    for (int i = 0; i < c->dim(); ++i) residual_exprs.push_back(oneform.g().coeff(KeyTuple{{i}}));
    std::vector<std::vector<ExprPtr>> jacobian_exprs;
    for (const auto& r : residual_exprs) {
        std::vector<ExprPtr> row;
        for (const auto& un : uname) row.push_back(differentiate(r, un));
        jacobian_exprs.push_back(std::move(row));
    }

    auto eval_at = [&](const std::vector<double>& x, const ExprPtr& e) {
        Point q = p;
        for (int i = 0; i < nu; ++i) q[uname[static_cast<size_t>(i)]] = x[static_cast<size_t>(i)];
        return eval(e, q);
    };
    auto f = [&](const std::vector<double>& x, std::vector<double>& out) {
        out.clear();
        for (const auto& r : residual_exprs) out.push_back(eval_at(x, r));
    };
    auto jac = [&](const std::vector<double>& x, std::vector<std::vector<double>>& out) {
        out.assign(jacobian_exprs.size(), std::vector<double>(static_cast<size_t>(nu), 0.0));
        for (size_t r = 0; r < jacobian_exprs.size(); ++r)
            for (int i = 0; i < nu; ++i)
                out[r][static_cast<size_t>(i)] = eval_at(x, jacobian_exprs[r][static_cast<size_t>(i)]);
    };

    AnsatzSolveResult res;
    // residual identically zero at this point: probe the low-degree
    // polynomial in the unknowns at a handful of stakes
    bool all_zero = true;
    for (const auto& r : residual_exprs) {
        SplitMix64 rng(seed ^ 0x77c1a4f3u);
        for (int trial = 0; trial < 8 && all_zero; ++trial) {
            std::vector<double> x(static_cast<size_t>(nu));
            for (auto& xv : x) xv = static_cast<double>(rng.uniform_int(-3, 3));
            if (std::fabs(eval_at(x, r)) > 1e-12) all_zero = false;
        }
        if (!all_zero) break;
    }
    if (all_zero) {
        res.all_solutions = true;
        return res;
    }

    SplitMix64 rng(seed);
    std::vector<std::vector<double>> found;
    for (int restart = 0; restart < 33; ++restart) {
        std::vector<double> x(static_cast<size_t>(nu), 0.0);
        if (restart > 0)
            for (auto& xv : x) xv = rng.uniform(-2.0, 2.0);
        if (!gauss_newton(f, jac, x, 1e-12, 200)) continue;
        std::vector<double> r;
        f(x, r);
        double rn = 0.0;
        for (double v : r) rn = std::max(rn, std::fabs(v));
        if (rn >= 1e-10) continue;
        bool dup = false;
        for (const auto& g : found) {
            double d = 0.0;
            for (int i = 0; i < nu; ++i) d = std::max(d, std::fabs(g[static_cast<size_t>(i)] - x[static_cast<size_t>(i)]));
            if (d < 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back(x);
    }
    std::sort(found.begin(), found.end());
    res.solutions = std::move(found);
    return res;
}

}  // namespace msymp
