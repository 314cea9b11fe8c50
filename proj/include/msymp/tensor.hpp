#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "msymp/chart.hpp"
#include "msymp/expr.hpp"

namespace msymp {

/// Strictly increasing tuple of coordinate indices.
struct KeyTuple {
    std::vector<int> ix;
    bool operator<(const KeyTuple& o) const { return ix < o.ix; }
    bool operator==(const KeyTuple& o) const { return ix == o.ix; }
};

/// Shared keyed-coefficient container for alternating tensors. Zero
/// coefficients are pruned; keys are strictly increasing index tuples.
class Graded {
public:
    Graded() : degree_(0) {}  // empty placeholder, assign before use
    Graded(ChartPtr chart, int degree);

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<KeyTuple, ExprPtr>& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }

    /// Adds sign(sort) * coeff on the sorted tuple; duplicate indices drop the term.
    void accumulate(std::vector<int> indices, const ExprPtr& coeff);
    ExprPtr coeff(const KeyTuple& k) const;  // zero when absent

    Graded map_coeffs(const std::function<ExprPtr(const ExprPtr&)>& f) const;

private:
    ChartPtr chart_;
    int degree_;
    std::map<KeyTuple, ExprPtr> c_;
};

Graded add(const Graded& a, const Graded& b);
Graded scale(const Graded& a, const ExprPtr& s);
Graded wedge_graded(const Graded& a, const Graded& b);

class DiffForm {
public:
    DiffForm() = default;
    DiffForm(ChartPtr chart, int degree) : g_(std::move(chart), degree) {}
    explicit DiffForm(Graded g) : g_(std::move(g)) {}
    const Graded& g() const { return g_; }
    Graded& g() { return g_; }
    const ChartPtr& chart() const { return g_.chart(); }
    int degree() const { return g_.degree(); }
    bool is_zero_form() const { return g_.empty(); }
    void set(std::vector<int> indices, const ExprPtr& coeff) { g_.accumulate(std::move(indices), coeff); }

private:
    Graded g_;
};

class MultiVector {
public:
    MultiVector() = default;
    MultiVector(ChartPtr chart, int degree) : g_(std::move(chart), degree) {}
    explicit MultiVector(Graded g) : g_(std::move(g)) {}
    const Graded& g() const { return g_; }
    Graded& g() { return g_; }
    const ChartPtr& chart() const { return g_.chart(); }
    int degree() const { return g_.degree(); }
    bool is_zero_mv() const { return g_.empty(); }
    void set(std::vector<int> indices, const ExprPtr& coeff) { g_.accumulate(std::move(indices), coeff); }

private:
    Graded g_;
};

/// Local section of the bundle: fiber coordinate functions of the base
/// coordinates only.
struct Section {
    ChartPtr chart;
    std::vector<ExprPtr> fiber_fn;  // one per fiber coordinate

    Section(ChartPtr c, std::vector<ExprPtr> fns);
};

/// Coordinate map of the chart to itself, with optional inverse. When
/// `fibered` is set, base targets depend on base coordinates only.
struct FiberedMap {
    ChartPtr chart;
    std::vector<ExprPtr> target;                       // one per coordinate
    std::optional<std::vector<ExprPtr>> inverse;
    bool fibered = false;

    static FiberedMap make(ChartPtr c, std::vector<ExprPtr> target,
                           std::optional<std::vector<ExprPtr>> inverse, bool fibered);
    static FiberedMap identity(const ChartPtr& c);
};

// --- constructors -----------------------------------------------------------

DiffForm zero_form(const ChartPtr& c, int degree);
DiffForm scalar_form(const ChartPtr& c, const ExprPtr& f);       // degree 0
DiffForm coordinate_differential(const ChartPtr& c, int index);  // dz_i
MultiVector coordinate_vector(const ChartPtr& c, int index);     // d/dz_i
MultiVector vector_field(const ChartPtr& c, const std::vector<ExprPtr>& components);
DiffForm volume_form(const ChartPtr& c);       // dx^1 ∧ ... ∧ dx^m
MultiVector base_multivector(const ChartPtr& c);  // d/dx^1 ∧ ... ∧ d/dx^m

// --- exterior algebra --------------------------------------------------------

DiffForm wedge(const DiffForm& a, const DiffForm& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);
DiffForm add(const DiffForm& a, const DiffForm& b);
MultiVector add(const MultiVector& a, const MultiVector& b);
DiffForm scale(const DiffForm& a, const ExprPtr& s);
MultiVector scale(const MultiVector& a, const ExprPtr& s);

/// Iterated interior product i(X_1)...i(X_r) with the first wedge factor
/// applied first; zero form when deg a < deg X.
DiffForm contract(const MultiVector& x, const DiffForm& a);

DiffForm exterior_derivative(const DiffForm& a);

/// Graded bracket d i(X) - (-1)^r i(X) d.
DiffForm lie_derivative(const MultiVector& x, const DiffForm& a);

/// Schouten-Nijenhuis bracket, computed by the Leibniz expansion of
/// decomposable terms into pairwise Lie brackets. Both degrees >= 1.
MultiVector sn_bracket(const MultiVector& y, const MultiVector& x);

DiffForm pullback_form(const FiberedMap& f, const DiffForm& a);
/// Result lives on the base: keys hold base indices only, coefficients
/// depend on base symbols only.
DiffForm pullback_form(const Section& s, const DiffForm& a);

/// Canonical prolongation: the wedge over mu of d/dx^mu + (d psi^j/dx^mu) d/dy^j,
/// with fiber symbols already substituted along the section.
MultiVector prolong(const Section& s);

MultiVector pushforward_mv(const FiberedMap& f, const MultiVector& x);

std::string to_string(const DiffForm& a);
std::string to_string(const MultiVector& a);

}  // namespace msymp
