#include "msymp/symmetry.hpp"

#include <cmath>

#include "msymp/error.hpp"
#include "msymp/numeric.hpp"

namespace msymp {

DiffForm homotopy_potential(const DiffForm& a, const RationalPoint& center) {
    const ChartPtr& c = a.chart();
    int k = a.degree();
    if (k < 1) throw MsympError(Errc::InvalidArgument, "homotopy potential needs degree >= 1");
    for (const auto& [key, v] : a.g().coeffs()) {
        (void)key;
        if (!is_polynomial(v))
            throw MsympError(Errc::HomotopyNotPolynomial,
                             "coefficient is not polynomial: " + to_string(v));
    }
    {
        DiffForm da = exterior_derivative(a);
        for (const auto& [key, v] : da.g().coeffs()) {
            (void)key;
            if (is_zero(v) != ZeroTest::Zero)
                throw MsympError(Errc::NotClosed, "form is not closed: d-term " + to_string(v));
        }
    }
    const std::string tname = "__h";
    std::map<std::string, ExprPtr> scalebind;
    for (int i = 0; i < c->dim(); ++i) {
        const std::string& z = c->name(i);
        auto it = center.find(z);
        Rational cz = it == center.end() ? Rational(0) : it->second;
        // c + t (z - c)
        scalebind[z] = add(constant(cz), mul(symbol(tname), sub(symbol(z), constant(cz))));
    }
    DiffForm out(c, k - 1);
    for (const auto& [key, v] : a.g().coeffs()) {
        ExprPtr scaled = mul(make_power(symbol(tname), k - 1), substitute(v, scalebind));
        ExprPtr anti = integrate_poly(scaled, tname);
        ExprPtr integral = substitute(anti, {{tname, one()}});
        for (size_t s = 0; s < key.ix.size(); ++s) {
            int zi = key.ix[s];
            auto it = center.find(c->name(zi));
            Rational cz = it == center.end() ? Rational(0) : it->second;
            ExprPtr radial = sub(symbol(c->name(zi)), constant(cz));
            std::vector<int> rest;
            for (size_t q = 0; q < key.ix.size(); ++q)
                if (q != s) rest.push_back(key.ix[q]);
            ExprPtr term = mul(radial, integral);
            out.set(rest, s % 2 == 0 ? term : neg(term));
        }
    }
    return out;
}

CartanResult cartan_check(const PremultisymplecticSystem& s, const MultiVector& y,
                          const ProbeCfg& cfg) {
    DiffForm lo = lie_derivative(y, s.omega);
    Verdict v = Verdict::SymbolicZero;
    for (const auto& [k, e] : lo.g().coeffs()) {
        (void)k;
        v = worst(v, classify_zero(e, cfg));
    }
    CartanResult res{CartanKind::NotCartan, v, std::nullopt, lo};
    if (v == Verdict::NonZero) return res;
    res.kind = CartanKind::Cartan;
    if (s.theta) {
        DiffForm lt = lie_derivative(y, *s.theta);
        Verdict vt = Verdict::SymbolicZero;
        for (const auto& [k, e] : lt.g().coeffs()) {
            (void)k;
            vt = worst(vt, classify_zero(e, cfg));
        }
        res.lie_theta = vt;
        if (vt != Verdict::NonZero) res.kind = CartanKind::ExactCartan;
    }
    return res;
}

FieldEquationResidual finite_cartan_check(const PremultisymplecticSystem& s, const FiberedMap& phi,
                                          const ProbeCfg& cfg) {
    DiffForm diff = add(pullback_form(phi, s.omega), scale(s.omega, integer(-1)));
    FieldEquationResidual out;
    for (const auto& [k, e] : diff.g().coeffs()) {
        std::string label;
        for (int i : k.ix) label += (label.empty() ? "d" : "^d") + s.chart->name(i);
        out.entries.push_back({label, e, classify_zero(e, cfg)});
    }
    return out;
}

Verdict gauge_check(const PremultisymplecticSystem& s, const MultiVector& y, const ProbeCfg& cfg) {
    DiffForm iy = contract(y, s.omega);
    Verdict v = Verdict::SymbolicZero;
    for (const auto& [k, e] : iy.g().coeffs()) {
        (void)k;
        v = worst(v, classify_zero(e, cfg));
    }
    return v;
}

std::vector<ConservedCheckEntry> check_conserved(
    const PremultisymplecticSystem& s, const DiffForm& xi,
    const std::vector<std::pair<std::string, DecomposableAnsatz>>& family, const ProbeCfg& cfg) {
    if (xi.degree() != s.m() - 1)
        throw MsympError(Errc::DegreeMismatch, "conserved candidate must have degree m-1");
    DiffForm dxi = exterior_derivative(xi);
    std::vector<ConservedCheckEntry> out;
    for (const auto& [name, a] : family) {
        ConservedCheckEntry entry;
        entry.witness = name;
        entry.witness_in_kernel = mv_kernel_residual(s, a, cfg).verdict();
        DiffForm r = contract(a.expand(), dxi);  // 0-form
        ExprPtr val = r.g().coeff(KeyTuple{{}});
        if (s.m() % 2 == 0) val = neg(val);  // (-1)^{m+1}
        entry.residual = val;
        entry.verdict = classify_zero(val, cfg);
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<SymmetryCheckEntry> infinitesimal_symmetry_check(
    const PremultisymplecticSystem& s, const MultiVector& y,
    const std::vector<std::pair<std::string, DecomposableAnsatz>>& family, const ProbeCfg& cfg) {
    if (y.degree() != 1) throw MsympError(Errc::DegreeMismatch, "symmetry candidate must be a vector field");
    std::vector<SymmetryCheckEntry> out;
    for (const auto& [name, a] : family) {
        SymmetryCheckEntry entry;
        entry.witness = name;
        entry.witness_in_kernel = mv_kernel_residual(s, a, cfg).verdict();
        MultiVector bracket = sn_bracket(y, a.expand());
        DiffForm r = contract(bracket, s.omega);
        for (int i = 0; i < s.chart->dim(); ++i) {
            ExprPtr e = r.g().coeff(KeyTuple{{i}});
            entry.bracket_residual.entries.push_back(
                {"d" + s.chart->name(i), e, classify_zero(e, cfg)});
        }
        out.push_back(std::move(entry));
    }
    return out;
}

CartanOrderResult higher_cartan_order(const PremultisymplecticSystem& s, const MultiVector& y,
                                      int n_max, const ProbeCfg& cfg) {
    if (n_max < 1) throw MsympError(Errc::InvalidArgument, "n_max must be at least 1");
    CartanOrderResult res;
    DiffForm cur = s.omega;
    for (int n = 1; n <= n_max; ++n) {
        cur = lie_derivative(y, cur);
        Verdict v = Verdict::SymbolicZero;
        for (const auto& [k, e] : cur.g().coeffs()) {
            (void)k;
            v = worst(v, classify_zero(e, cfg));
        }
        if (v != Verdict::NonZero) {
            res.found = true;
            res.order = n;
            res.verdict = v;
            return res;
        }
    }
    return res;
}

namespace {

DiffForm lie_power(const MultiVector& y, DiffForm a, int n) {
    for (int i = 0; i < n; ++i) a = lie_derivative(y, a);
    return a;
}

Verdict form_verdict(const DiffForm& a, const ProbeCfg& cfg) {
    Verdict v = Verdict::SymbolicZero;
    for (const auto& [k, e] : a.g().coeffs()) {
        (void)k;
        v = worst(v, classify_zero(e, cfg));
    }
    return v;
}

}  // namespace

NoetherReport generalized_noether_current(const PremultisymplecticSystem& s, const MultiVector& y,
                                          int n, const ProbeCfg& cfg, const RationalPoint& center) {
    if (n < 1) throw MsympError(Errc::InvalidArgument, "order must be at least 1");
    // n must be the least vanishing order
    {
        DiffForm cur = s.omega;
        for (int k = 1; k <= n; ++k) {
            cur = lie_derivative(y, cur);
            Verdict v = form_verdict(cur, cfg);
            bool zero = v != Verdict::NonZero;
            if (k < n && zero)
                throw MsympError(Errc::OrderMismatch,
                                 "L^" + std::to_string(k) + "(Y) omega already vanishes");
            if (k == n && !zero)
                throw MsympError(Errc::OrderMismatch,
                                 "L^" + std::to_string(n) + "(Y) omega does not vanish");
        }
    }
    NoetherReport rep;
    rep.order = n;
    DiffForm iy = contract(y, s.omega);
    if (n == 1 && form_verdict(iy, cfg) == Verdict::SymbolicZero) {
        rep.gauge = true;
        rep.xi = zero_form(s.chart, s.m() - 1);
        rep.closedness = Verdict::SymbolicZero;
        rep.residual_verdict = Verdict::SymbolicZero;
        rep.residuals.push_back({"d(xi) - i(Y)omega", zero(), Verdict::SymbolicZero});
        return rep;
    }
    DiffForm rho = lie_power(y, iy, n - 1);
    rep.closedness = form_verdict(exterior_derivative(rho), cfg);
    if (s.theta) {
        DiffForm lt = lie_power(y, *s.theta, n);
        Verdict vt = form_verdict(lt, cfg);
        if (vt == Verdict::SymbolicZero) {
            rep.exact = true;
            rep.zeta = zero_form(s.chart, s.m() - 1);
            rep.xi = lie_power(y, contract(y, *s.theta), n - 1);
        } else {
            rep.zeta = homotopy_potential(lt, center);
            rep.xi = add(lie_power(y, contract(y, *s.theta), n - 1), scale(*rep.zeta, integer(-1)));
        }
    } else {
        rep.xi = homotopy_potential(rho, center);
    }
    DiffForm residual = add(exterior_derivative(rep.xi), scale(rho, integer(-1)));
    rep.residual_verdict = form_verdict(residual, cfg);
    for (const auto& [k, e] : residual.g().coeffs()) {
        std::string label = "d(xi)-L^{n-1}(Y)i(Y)omega:";
        for (int i : k.ix) label += " d" + s.chart->name(i);
        rep.residuals.push_back({label, e, classify_zero(e, cfg)});
    }
    return rep;
}

NoetherReport noether_current(const PremultisymplecticSystem& s, const MultiVector& y,
                              const ProbeCfg& cfg, const RationalPoint& center) {
    CartanResult c = cartan_check(s, y, cfg);
    if (c.kind == CartanKind::NotCartan)
        throw MsympError(Errc::NotCartan, "L(Y) omega does not vanish");
    return generalized_noether_current(s, y, 1, cfg, center);
}

DiffForm transform_conserved(const DiffForm& xi, const MultiVector& y) {
    return lie_derivative(y, xi);
}

DiffForm transform_conserved(const DiffForm& xi, const FiberedMap& phi) {
    return pullback_form(phi, xi);
}

SectionCurrent current_on_section(const DiffForm& xi, const Section& psi, const ProbeCfg& cfg) {
    const ChartPtr& c = xi.chart();
    int m = c->base_dim();
    if (xi.degree() != m - 1)
        throw MsympError(Errc::DegreeMismatch, "current needs a degree m-1 form");
    DiffForm pulled = pullback_form(psi, xi);
    SectionCurrent out;
    for (int mu = 0; mu < m; ++mu) {
        KeyTuple k;
        for (int i = 0; i < m; ++i)
            if (i != mu) k.ix.push_back(i);
        ExprPtr cmu = pulled.g().coeff(k);
        out.flux.push_back(mu % 2 == 0 ? cmu : neg(cmu));
    }
    KeyTuple base_key;
    for (int i = 0; i < m; ++i) base_key.ix.push_back(i);
    out.divergence = exterior_derivative(pulled).g().coeff(base_key);
    out.divergence_verdict = classify_zero(out.divergence, cfg);
    return out;
}

double stokes_flux_check(const DiffForm& xi, const Section& psi,
                         const std::vector<std::pair<double, double>>& box, int quadrature_points) {
    const ChartPtr& c = xi.chart();
    int m = c->base_dim();
    if (xi.degree() != m - 1)
        throw MsympError(Errc::DegreeMismatch, "flux needs a degree m-1 form");
    if (m < 2) throw MsympError(Errc::InvalidArgument, "boundary flux needs m >= 2");
    if (static_cast<int>(box.size()) != m)
        throw MsympError(Errc::InvalidArgument, "box needs one interval per base coordinate");
    DiffForm pulled = pullback_form(psi, xi);
    std::vector<double> nodes, weights;
    gauss_legendre(quadrature_points, nodes, weights);

    double total = 0.0;
    for (int mu = 0; mu < m; ++mu) {
        KeyTuple k;
        for (int i = 0; i < m; ++i)
            if (i != mu) k.ix.push_back(i);
        ExprPtr cmu = pulled.g().coeff(k);
        if (is_zero_literal(cmu)) continue;
        for (int side = 0; side < 2; ++side) {
            double fixed = side == 0 ? box[static_cast<size_t>(mu)].first
                                     : box[static_cast<size_t>(mu)].second;
            // integrate cmu over the m-1 remaining axes
            std::vector<int> axes;
            for (int i = 0; i < m; ++i)
                if (i != mu) axes.push_back(i);
            std::vector<int> idx(axes.size(), 0);
            double face = 0.0;
            for (;;) {
                Point p;
                p[c->name(mu)] = fixed;
                double w = 1.0;
                for (size_t d = 0; d < axes.size(); ++d) {
                    auto [lo, hi] = box[static_cast<size_t>(axes[d])];
                    double half = 0.5 * (hi - lo);
                    p[c->name(axes[d])] = lo + half * (nodes[static_cast<size_t>(idx[d])] + 1.0);
                    w *= half * weights[static_cast<size_t>(idx[d])];
                }
                face += w * eval(cmu, p);
                size_t d = 0;
                for (; d < axes.size(); ++d) {
                    if (++idx[d] < quadrature_points) break;
                    idx[d] = 0;
                }
                if (d == axes.size()) break;
            }
            double orient = (mu % 2 == 0 ? 1.0 : -1.0) * (side == 0 ? -1.0 : 1.0);
            total += orient * face;
        }
    }
    return total;
}

}  // namespace msymp
