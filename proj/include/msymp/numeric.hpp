#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace msymp {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Numeric rank by scaled row echelon; tol is relative to the largest entry.
int matrix_rank(std::vector<std::vector<double>> m, double tol);

/// Solves (regularized) normal equations; returns false when singular beyond repair.
bool solve_normal_equations(const std::vector<std::vector<double>>& jac,
                            const std::vector<double>& residual, double damping,
                            std::vector<double>& step);

/// Damped Gauss-Newton from a fixed start; returns true when the residual
/// infinity norm drops below tol.
bool gauss_newton(const std::function<void(const std::vector<double>&, std::vector<double>&)>& f,
                  const std::function<void(const std::vector<double>&, std::vector<std::vector<double>>&)>& jac,
                  std::vector<double>& x, double tol, int max_iter);

}  // namespace msymp
