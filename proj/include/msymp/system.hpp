#pragma once

#include <optional>

#include "msymp/tensor.hpp"
#include "msymp/verdict.hpp"

namespace msymp {

/// The (F, E) coordinate realization of the multisymplectic form in an
/// adapted chart: Omega = dF_j^mu ∧ dy^j ∧ d^{m-1}x_mu + dE ∧ d^m x.
struct CoordinateData {
    std::vector<std::vector<ExprPtr>> F;  // [fiber j][base mu]
    ExprPtr E;
};

struct PremultisymplecticSystem {
    ChartPtr chart;
    std::optional<DiffForm> theta;  // degree m
    DiffForm omega;                 // degree m+1
    DiffForm vol;                   // dx^1 ∧ ... ∧ dx^m
    std::optional<CoordinateData> data;

    int m() const { return chart->base_dim(); }
    int n() const { return chart->fiber_dim(); }
};

/// Locally decomposable, transverse ansatz X = ∧_mu (d/dx^mu + X^j_mu d/dy^j),
/// normalized so that i(X) vol = 1 by construction.
struct DecomposableAnsatz {
    ChartPtr chart;
    std::vector<std::vector<ExprPtr>> coef;  // [fiber j][base mu]

    DecomposableAnsatz(ChartPtr c, std::vector<std::vector<ExprPtr>> xc);
    MultiVector direction(int mu) const;  // d/dx^mu + X^j_mu d/dy^j
    MultiVector expand() const;
};

struct FieldEquationResidual {
    std::vector<NamedResidual> entries;
    Verdict verdict() const { return overall(entries); }
};

struct InvolutivityResult {
    bool involutive;
    std::vector<NamedResidual> obstructions;  // the nonzero ones when not involutive
};

/// Obstructions V_mu(X^j_nu) - V_nu(X^j_mu) for mu < nu. Equivalent to the
/// bracket [V_mu, V_nu] landing in the span of the V's, because that bracket
/// is purely vertical.
InvolutivityResult involutivity_check(const DecomposableAnsatz& a, const ProbeCfg& cfg);

PremultisymplecticSystem system_from_theta(const ChartPtr& chart, const DiffForm& theta);
PremultisymplecticSystem system_from_coordinate_data(const ChartPtr& chart, CoordinateData data);
/// Omega taken as given; structural invariants are left to the caller's checks.
PremultisymplecticSystem system_from_omega(const ChartPtr& chart, const DiffForm& omega);

DiffForm rebuild_from_coordinate_data(const ChartPtr& chart, const CoordinateData& data);

/// Recovers (F, E) from Omega, fixing the gauge by integrating fiber
/// variables last-to-first from the fiber origin (zero constant terms).
/// When Theta is present and already in normal shape, -Theta is read off
/// directly. Throws NotInNormalForm with the offending terms.
CoordinateData extract_coordinate_data(const PremultisymplecticSystem& s);

/// Every key of Omega carries one or two fiber indices; three or more
/// violate the vertical condition shape.
std::vector<std::string> normal_form_violations(const DiffForm& omega);

struct NondegeneracyResult {
    bool multisymplectic;
    std::vector<int> kernel_dims;  // per probe point
};

NondegeneracyResult nondegeneracy_probe(const PremultisymplecticSystem& s,
                                        const std::vector<Point>& points, double tol);

/// Residuals of psi* i(Y) Omega for Y over the coordinate basis fields.
FieldEquationResidual section_residual_sect1(const PremultisymplecticSystem& s, const Section& psi,
                                             const ProbeCfg& cfg);
/// Components of i(prolong(psi)) (Omega ∘ psi).
FieldEquationResidual section_residual_sect2(const PremultisymplecticSystem& s, const Section& psi,
                                             const ProbeCfg& cfg);

/// Coordinate field equations over first-jet symbols u_<fiber>_<base>:
/// the m+n components of i(X)Omega with X the jet-coefficient ansatz.
/// Substituting a section's derivatives reproduces section_residual_sect2.
struct EulerEquations {
    std::vector<NamedResidual> base_family;   // indexed by base coordinate
    std::vector<NamedResidual> fiber_family;  // indexed by fiber coordinate
};

EulerEquations euler_equations(const PremultisymplecticSystem& s);

FieldEquationResidual mv_kernel_residual(const PremultisymplecticSystem& s,
                                         const DecomposableAnsatz& a, const ProbeCfg& cfg);

FieldEquationResidual integral_section_check(const DecomposableAnsatz& a, const Section& psi,
                                             const ProbeCfg& cfg);

double action_evaluate(const PremultisymplecticSystem& s, const Section& psi,
                       const std::vector<std::pair<double, double>>& box, int quadrature_points);

struct AnsatzSolveResult {
    bool all_solutions = false;                     // residual identically zero at the point
    std::vector<std::vector<double>> solutions;     // flattened X^j_mu, fiber-major, sorted
};

/// Newton with 32 uniform [-2,2] restarts from the given seed; solutions
/// with residual below 1e-10, deduplicated and sorted lexicographically.
AnsatzSolveResult solve_ansatz_at_point(const PremultisymplecticSystem& s, const Point& p,
                                        uint64_t seed);

}  // namespace msymp
