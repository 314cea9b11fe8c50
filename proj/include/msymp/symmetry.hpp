#pragma once

#include "msymp/system.hpp"

namespace msymp {

using RationalPoint = std::map<std::string, Rational>;  // unlisted coordinates are 0

/// Radial homotopy potential about `center`: dK(a) = a for closed a with
/// polynomial coefficients. Throws NotClosed / HomotopyNotPolynomial.
DiffForm homotopy_potential(const DiffForm& a, const RationalPoint& center);

enum class CartanKind { ExactCartan, Cartan, NotCartan };

struct CartanResult {
    CartanKind kind;
    Verdict lie_omega;                    // verdict of L(Y) omega
    std::optional<Verdict> lie_theta;     // verdict of L(Y) theta when theta present
    DiffForm residual;                    // L(Y) omega
};

CartanResult cartan_check(const PremultisymplecticSystem& s, const MultiVector& y,
                          const ProbeCfg& cfg);

/// Verdict of pullback(phi, omega) - omega.
FieldEquationResidual finite_cartan_check(const PremultisymplecticSystem& s, const FiberedMap& phi,
                                          const ProbeCfg& cfg);

Verdict gauge_check(const PremultisymplecticSystem& s, const MultiVector& y, const ProbeCfg& cfg);

struct ConservedCheckEntry {
    std::string witness;
    Verdict witness_in_kernel;  // mv_kernel_residual verdict, reported not fatal
    ExprPtr residual;           // (-1)^{m+1} i(X) d(xi)
    Verdict verdict;
};

/// Conservation relative to an explicit witness family.
std::vector<ConservedCheckEntry> check_conserved(const PremultisymplecticSystem& s,
                                                 const DiffForm& xi,
                                                 const std::vector<std::pair<std::string, DecomposableAnsatz>>& family,
                                                 const ProbeCfg& cfg);

struct SymmetryCheckEntry {
    std::string witness;
    Verdict witness_in_kernel;
    FieldEquationResidual bracket_residual;  // i([Y, X]) omega components
};

std::vector<SymmetryCheckEntry> infinitesimal_symmetry_check(
    const PremultisymplecticSystem& s, const MultiVector& y,
    const std::vector<std::pair<std::string, DecomposableAnsatz>>& family, const ProbeCfg& cfg);

struct NoetherReport {
    int order = 1;
    bool gauge = false;
    bool exact = false;        // L^n(Y) theta vanished symbolically
    DiffForm xi;               // degree m-1 current
    std::optional<DiffForm> zeta;
    Verdict closedness;        // d(L^{n-1}(Y) i(Y) omega) = 0
    Verdict residual_verdict;  // d(xi) - L^{n-1}(Y) i(Y) omega
    std::vector<NamedResidual> residuals;
};

/// Order-1 Noether current; requires cartan_check to pass.
NoetherReport noether_current(const PremultisymplecticSystem& s, const MultiVector& y,
                              const ProbeCfg& cfg, const RationalPoint& center = {});

struct CartanOrderResult {
    bool found = false;
    int order = 0;
    Verdict verdict = Verdict::NonZero;  // verdict of L^order(Y) omega when found
};

/// Least n <= n_max with L^n(Y) omega = 0.
CartanOrderResult higher_cartan_order(const PremultisymplecticSystem& s, const MultiVector& y,
                                      int n_max, const ProbeCfg& cfg);

/// Order-n current; n must be the least vanishing order (OrderMismatch otherwise).
NoetherReport generalized_noether_current(const PremultisymplecticSystem& s, const MultiVector& y,
                                          int n, const ProbeCfg& cfg,
                                          const RationalPoint& center = {});

DiffForm transform_conserved(const DiffForm& xi, const MultiVector& y);
DiffForm transform_conserved(const DiffForm& xi, const FiberedMap& phi);

struct SectionCurrent {
    std::vector<ExprPtr> flux;  // base vector field components, base symbols only
    ExprPtr divergence;
    Verdict divergence_verdict;
};

SectionCurrent current_on_section(const DiffForm& xi, const Section& psi, const ProbeCfg& cfg);

/// Boundary integral of psi* xi over the box (m >= 2), outward orientation.
double stokes_flux_check(const DiffForm& xi, const Section& psi,
                         const std::vector<std::pair<double, double>>& box, int quadrature_points);

}  // namespace msymp
