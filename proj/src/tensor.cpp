#include "msymp/tensor.hpp"

#include <algorithm>
#include <functional>

#include "msymp/error.hpp"
#include "msymp/verdict.hpp"

namespace msymp {

namespace {

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a.get() != b.get()) throw MsympError(Errc::ChartMismatch, "objects live on different charts");
}

// sign of merging two strictly increasing tuples; 0 on shared index
int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

Graded::Graded(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    // degrees above the chart dimension are allowed and always empty
    if (degree_ < 0) throw MsympError(Errc::DegreeMismatch, "negative degree");
}

void Graded::accumulate(std::vector<int> indices, const ExprPtr& coeff) {
    if (static_cast<int>(indices.size()) != degree_)
        throw MsympError(Errc::DegreeMismatch, "index tuple length does not match degree");
    if (is_zero_literal(coeff)) return;
    // insertion-sort with parity
    int sign = 1;
    for (size_t i = 1; i < indices.size(); ++i) {
        for (size_t j = i; j > 0 && indices[j - 1] > indices[j]; --j) {
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    }
    for (size_t i = 0; i + 1 < indices.size(); ++i)
        if (indices[i] == indices[i + 1]) return;
    for (int i : indices)
        if (i < 0 || i >= chart_->dim())
            throw MsympError(Errc::InvalidArgument, "coordinate index out of range");
    KeyTuple k{std::move(indices)};
    ExprPtr delta = sign == 1 ? coeff : neg(coeff);
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(std::move(k), delta);
    } else {
        ExprPtr s = add(it->second, delta);
        if (is_zero_literal(s)) {
            c_.erase(it);
        } else {
            it->second = s;
        }
    }
}

ExprPtr Graded::coeff(const KeyTuple& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? zero() : it->second;
}

Graded Graded::map_coeffs(const std::function<ExprPtr(const ExprPtr&)>& f) const {
    Graded out(chart_, degree_);
    for (const auto& [k, v] : c_) {
        ExprPtr w = f(v);
        if (!is_zero_literal(w)) out.c_.emplace(k, w);
    }
    return out;
}

Graded add(const Graded& a, const Graded& b) {
    require_same_chart(a.chart(), b.chart());
    if (a.degree() != b.degree()) {
        // an identically-zero object has ambiguous degree
        if (a.empty()) return b;
        if (b.empty()) return a;
        throw MsympError(Errc::DegreeMismatch, "sum of different degrees");
    }
    Graded out = a;
    for (const auto& [k, v] : b.coeffs()) out.accumulate(std::vector<int>(k.ix), v);
    return out;
}

Graded scale(const Graded& a, const ExprPtr& s) {
    return a.map_coeffs([&](const ExprPtr& v) { return mul(v, s); });
}

Graded wedge_graded(const Graded& a, const Graded& b) {
    require_same_chart(a.chart(), b.chart());
    Graded out(a.chart(), a.degree() + b.degree());
    std::vector<int> merged;
    for (const auto& [ka, va] : a.coeffs()) {
        for (const auto& [kb, vb] : b.coeffs()) {
            int s = merge_sign(ka.ix, kb.ix, merged);
            if (s == 0) continue;
            ExprPtr c = mul(va, vb);
            out.accumulate(merged, s == 1 ? c : neg(c));
        }
    }
    return out;
}

Section::Section(ChartPtr c, std::vector<ExprPtr> fns) : chart(std::move(c)), fiber_fn(std::move(fns)) {
    if (static_cast<int>(fiber_fn.size()) != chart->fiber_dim())
        throw MsympError(Errc::InvalidArgument, "section needs one function per fiber coordinate");
    for (const auto& f : fiber_fn) {
        std::set<std::string> syms;
        collect_symbols(f, syms);
        for (const auto& s : syms) {
            int i = chart->index_of(s);
            if (i >= 0 && chart->is_fiber(i))
                throw MsympError(Errc::InvalidArgument,
                                 "section component depends on fiber coordinate '" + s + "'");
        }
    }
}

FiberedMap FiberedMap::make(ChartPtr c, std::vector<ExprPtr> target,
                            std::optional<std::vector<ExprPtr>> inverse, bool fibered) {
    FiberedMap m;
    m.chart = std::move(c);
    m.target = std::move(target);
    m.inverse = std::move(inverse);
    m.fibered = fibered;
    if (static_cast<int>(m.target.size()) != m.chart->dim())
        throw MsympError(Errc::InvalidArgument, "map needs one target expression per coordinate");
    if (m.fibered) {
        for (int i = 0; i < m.chart->base_dim(); ++i) {
            std::set<std::string> syms;
            collect_symbols(m.target[static_cast<size_t>(i)], syms);
            for (const auto& s : syms) {
                int j = m.chart->index_of(s);
                if (j >= 0 && m.chart->is_fiber(j))
                    throw MsympError(Errc::InvalidArgument,
                                     "base target of a fibered map depends on '" + s + "'");
            }
        }
    }
    if (m.inverse) {
        if (static_cast<int>(m.inverse->size()) != m.chart->dim())
            throw MsympError(Errc::InvalidArgument, "inverse needs one expression per coordinate");
        std::map<std::string, ExprPtr> bind;
        for (int i = 0; i < m.chart->dim(); ++i)
            bind[m.chart->name(i)] = (*m.inverse)[static_cast<size_t>(i)];
        for (int i = 0; i < m.chart->dim(); ++i) {
            ExprPtr r = sub(substitute(m.target[static_cast<size_t>(i)], bind), symbol(m.chart->name(i)));
            if (classify_zero(r, ProbeCfg{}) == Verdict::NonZero)
                throw MsympError(Errc::InverseCheckFailed,
                                 "inverse check failed on coordinate '" + m.chart->name(i) + "'");
        }
    }
    return m;
}

FiberedMap FiberedMap::identity(const ChartPtr& c) {
    std::vector<ExprPtr> t;
    for (int i = 0; i < c->dim(); ++i) t.push_back(symbol(c->name(i)));
    return make(c, t, t, true);
}

DiffForm zero_form(const ChartPtr& c, int degree) { return DiffForm(c, degree); }

DiffForm scalar_form(const ChartPtr& c, const ExprPtr& f) {
    DiffForm a(c, 0);
    a.set({}, f);
    return a;
}

DiffForm coordinate_differential(const ChartPtr& c, int index) {
    DiffForm a(c, 1);
    a.set({index}, one());
    return a;
}

MultiVector coordinate_vector(const ChartPtr& c, int index) {
    MultiVector v(c, 1);
    v.set({index}, one());
    return v;
}

MultiVector vector_field(const ChartPtr& c, const std::vector<ExprPtr>& components) {
    if (static_cast<int>(components.size()) != c->dim())
        throw MsympError(Errc::InvalidArgument, "vector field needs one component per coordinate");
    MultiVector v(c, 1);
    for (int i = 0; i < c->dim(); ++i) v.set({i}, components[static_cast<size_t>(i)]);
    return v;
}

DiffForm volume_form(const ChartPtr& c) {
    DiffForm a(c, c->base_dim());
    std::vector<int> ix;
    for (int i = 0; i < c->base_dim(); ++i) ix.push_back(i);
    a.set(ix, one());
    return a;
}

MultiVector base_multivector(const ChartPtr& c) {
    MultiVector v(c, c->base_dim());
    std::vector<int> ix;
    for (int i = 0; i < c->base_dim(); ++i) ix.push_back(i);
    v.set(ix, one());
    return v;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) { return DiffForm(wedge_graded(a.g(), b.g())); }
MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    return MultiVector(wedge_graded(a.g(), b.g()));
}
DiffForm add(const DiffForm& a, const DiffForm& b) { return DiffForm(add(a.g(), b.g())); }
MultiVector add(const MultiVector& a, const MultiVector& b) { return MultiVector(add(a.g(), b.g())); }
DiffForm scale(const DiffForm& a, const ExprPtr& s) { return DiffForm(scale(a.g(), s)); }
MultiVector scale(const MultiVector& a, const ExprPtr& s) { return MultiVector(scale(a.g(), s)); }

namespace {

// i(d/dz_j) a
Graded interior_single(int j, const Graded& a) {
    Graded out(a.chart(), a.degree() - 1);
    for (const auto& [k, v] : a.coeffs()) {
        auto it = std::find(k.ix.begin(), k.ix.end(), j);
        if (it == k.ix.end()) continue;
        int pos = static_cast<int>(it - k.ix.begin());
        std::vector<int> rest;
        rest.reserve(k.ix.size() - 1);
        for (int q : k.ix)
            if (q != j) rest.push_back(q);
        out.accumulate(rest, pos % 2 == 0 ? v : neg(v));
    }
    return out;
}

}  // namespace

DiffForm contract(const MultiVector& x, const DiffForm& a) {
    require_same_chart(x.chart(), a.chart());
    if (a.degree() < x.degree()) return zero_form(a.chart(), 0);
    Graded out(a.chart(), a.degree() - x.degree());
    for (const auto& [kx, fx] : x.g().coeffs()) {
        Graded t = a.g();
        for (int j : kx.ix) t = interior_single(j, t);
        for (const auto& [k, v] : t.coeffs()) out.accumulate(std::vector<int>(k.ix), mul(fx, v));
    }
    return DiffForm(std::move(out));
}

DiffForm exterior_derivative(const DiffForm& a) {
    const ChartPtr& c = a.chart();
    Graded out(c, a.degree() + 1);
    for (const auto& [k, v] : a.g().coeffs()) {
        for (int i = 0; i < c->dim(); ++i) {
            ExprPtr d = differentiate(v, c->name(i));
            if (is_zero_literal(d)) continue;
            std::vector<int> ix;
            ix.reserve(k.ix.size() + 1);
            ix.push_back(i);
            ix.insert(ix.end(), k.ix.begin(), k.ix.end());
            out.accumulate(ix, d);
        }
    }
    return DiffForm(std::move(out));
}

DiffForm lie_derivative(const MultiVector& x, const DiffForm& a) {
    require_same_chart(x.chart(), a.chart());
    int r = x.degree();
    DiffForm left = exterior_derivative(contract(x, a));
    DiffForm right = contract(x, exterior_derivative(a));
    if (r % 2 == 0) {
        // d i(X) - i(X) d
        return add(left, scale(right, integer(-1)));
    }
    return add(left, right);
}

namespace {

// [a*d/dz_p, b*d/dz_q] as a vector field
MultiVector lie_bracket_basic(const ChartPtr& c, const ExprPtr& a, int p, const ExprPtr& b, int q) {
    MultiVector out(c, 1);
    ExprPtr db = differentiate(b, c->name(p));
    if (!is_zero_literal(db)) out.set({q}, mul(a, db));
    ExprPtr da = differentiate(a, c->name(q));
    if (!is_zero_literal(da)) out.set({p}, neg(mul(b, da)));
    return out;
}

}  // namespace

MultiVector sn_bracket(const MultiVector& y, const MultiVector& x) {
    require_same_chart(y.chart(), x.chart());
    const ChartPtr& c = y.chart();
    int i = y.degree(), j = x.degree();
    if (i < 1 || j < 1)
        throw MsympError(Errc::DegreeMismatch, "bracket arguments must have degree >= 1");
    Graded out(c, i + j - 1);
    for (const auto& [ky, f] : y.g().coeffs()) {
        for (const auto& [kx, g] : x.g().coeffs()) {
            // coefficient functions ride on the first factor of each term
            for (int s = 0; s < i; ++s) {
                for (int t = 0; t < j; ++t) {
                    ExprPtr a = s == 0 ? f : one();
                    ExprPtr b = t == 0 ? g : one();
                    MultiVector br = lie_bracket_basic(c, a, ky.ix[static_cast<size_t>(s)], b,
                                                       kx.ix[static_cast<size_t>(t)]);
                    if (br.is_zero_mv()) continue;
                    ExprPtr outer = mul(s == 0 ? one() : f, t == 0 ? one() : g);
                    MultiVector acc = br;
                    for (int s2 = 0; s2 < i; ++s2)
                        if (s2 != s) acc = wedge(acc, coordinate_vector(c, ky.ix[static_cast<size_t>(s2)]));
                    for (int t2 = 0; t2 < j; ++t2)
                        if (t2 != t) acc = wedge(acc, coordinate_vector(c, kx.ix[static_cast<size_t>(t2)]));
                    if (acc.is_zero_mv()) continue;
                    int sign = ((s + 1) + (t + 1)) % 2 == 0 ? 1 : -1;
                    ExprPtr m = sign == 1 ? outer : neg(outer);
                    for (const auto& [k, v] : acc.g().coeffs())
                        out.accumulate(std::vector<int>(k.ix), mul(m, v));
                }
            }
        }
    }
    return MultiVector(std::move(out));
}

namespace {

DiffForm pullback_impl(const ChartPtr& c, const std::vector<ExprPtr>& targets, const DiffForm& a) {
    std::map<std::string, ExprPtr> bind;
    for (int i = 0; i < c->dim(); ++i) bind[c->name(i)] = targets[static_cast<size_t>(i)];
    std::vector<DiffForm> dT;
    dT.reserve(targets.size());
    for (const auto& t : targets) {
        DiffForm d(c, 1);
        for (int i = 0; i < c->dim(); ++i) {
            ExprPtr g = differentiate(t, c->name(i));
            if (!is_zero_literal(g)) d.set({i}, g);
        }
        dT.push_back(std::move(d));
    }
    bool first_term = true;
    DiffForm acc(c, a.degree());
    for (const auto& [k, v] : a.g().coeffs()) {
        DiffForm term = scalar_form(c, substitute(v, bind));
        for (int ix : k.ix) term = wedge(term, dT[static_cast<size_t>(ix)]);
        if (first_term) {
            acc = term;
            first_term = false;
        } else {
            acc = add(acc, term);
        }
    }
    return first_term ? zero_form(c, a.degree()) : acc;
}

}  // namespace

DiffForm pullback_form(const FiberedMap& f, const DiffForm& a) {
    require_same_chart(f.chart, a.chart());
    return pullback_impl(f.chart, f.target, a);
}

DiffForm pullback_form(const Section& s, const DiffForm& a) {
    require_same_chart(s.chart, a.chart());
    std::vector<ExprPtr> targets;
    targets.reserve(static_cast<size_t>(s.chart->dim()));
    for (int i = 0; i < s.chart->base_dim(); ++i) targets.push_back(symbol(s.chart->name(i)));
    for (const auto& fn : s.fiber_fn) targets.push_back(fn);
    return pullback_impl(s.chart, targets, a);
}

MultiVector prolong(const Section& s) {
    const ChartPtr& c = s.chart;
    int m = c->base_dim();
    MultiVector acc(c, 0);
    acc.set({}, one());
    for (int mu = 0; mu < m; ++mu) {
        MultiVector v(c, 1);
        v.set({mu}, one());
        for (int j = 0; j < c->fiber_dim(); ++j) {
            ExprPtr d = differentiate(s.fiber_fn[static_cast<size_t>(j)], c->name(mu));
            if (!is_zero_literal(d)) v.set({m + j}, d);
        }
        acc = wedge(acc, v);
    }
    return acc;
}

MultiVector pushforward_mv(const FiberedMap& f, const MultiVector& x) {
    require_same_chart(f.chart, x.chart());
    if (!f.inverse) throw MsympError(Errc::NoInverse, "pushforward needs an inverse map");
    const ChartPtr& c = f.chart;
    std::map<std::string, ExprPtr> bind;
    for (int i = 0; i < c->dim(); ++i) bind[c->name(i)] = (*f.inverse)[static_cast<size_t>(i)];
    // Jacobian columns: image of each coordinate vector
    std::vector<MultiVector> img;
    img.reserve(static_cast<size_t>(c->dim()));
    for (int jcol = 0; jcol < c->dim(); ++jcol) {
        MultiVector w(c, 1);
        for (int arow = 0; arow < c->dim(); ++arow) {
            ExprPtr g = differentiate(f.target[static_cast<size_t>(arow)], c->name(jcol));
            if (!is_zero_literal(g)) w.set({arow}, g);
        }
        img.push_back(std::move(w));
    }
    Graded out(c, x.degree());
    for (const auto& [k, v] : x.g().coeffs()) {
        MultiVector acc(c, 0);
        acc.set({}, v);
        for (int ix : k.ix) acc = wedge(acc, img[static_cast<size_t>(ix)]);
        for (const auto& [k2, v2] : acc.g().coeffs()) out.accumulate(std::vector<int>(k2.ix), v2);
    }
    Graded sub = out.map_coeffs([&](const ExprPtr& v) { return substitute(v, bind); });
    return MultiVector(std::move(sub));
}

namespace {

std::string graded_string(const Graded& g, const char* prefix) {
    if (g.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, v] : g.coeffs()) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(v) + ")";
        for (int i : k.ix) {
            out += " ";
            out += prefix;
            out += g.chart()->name(i);
        }
    }
    return out;
}

}  // namespace

std::string to_string(const DiffForm& a) { return graded_string(a.g(), "d"); }
std::string to_string(const MultiVector& a) { return graded_string(a.g(), "D"); }

}  // namespace msymp
