#include "msymp/numeric.hpp"

#include <cmath>

namespace msymp {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

int matrix_rank(std::vector<std::vector<double>> m, double tol) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    double maxabs = 0.0;
    for (const auto& r : m)
        for (double v : r) maxabs = std::max(maxabs, std::fabs(v));
    if (maxabs == 0.0) return 0;
    double thresh = tol * std::max(1.0, maxabs);
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        for (size_t r = row + 1; r < rows; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) <= thresh) continue;
        std::swap(m[piv], m[row]);
        for (size_t r = row + 1; r < rows; ++r) {
            double f = m[r][col] / m[row][col];
            for (size_t cc = col; cc < cols; ++cc) m[r][cc] -= f * m[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

bool lu_solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    size_t n = a.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return true;
}

}  // namespace

bool solve_normal_equations(const std::vector<std::vector<double>>& jac,
                            const std::vector<double>& residual, double damping,
                            std::vector<double>& step) {
    size_t rows = jac.size();
    if (rows == 0) return false;
    size_t n = jac[0].size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t i = 0; i < n; ++i) {
            b[i] -= jac[r][i] * residual[r];
            for (size_t j = 0; j < n; ++j) a[i][j] += jac[r][i] * jac[r][j];
        }
    }
    for (size_t i = 0; i < n; ++i) a[i][i] += damping;
    return lu_solve(std::move(a), std::move(b), step);
}

bool gauss_newton(const std::function<void(const std::vector<double>&, std::vector<double>&)>& f,
                  const std::function<void(const std::vector<double>&, std::vector<std::vector<double>>&)>& jac,
                  std::vector<double>& x, double tol, int max_iter) {
    std::vector<double> r, step;
    std::vector<std::vector<double>> j;
    double damping = 1e-8;
    f(x, r);
    auto norm_inf = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double e : v) m = std::max(m, std::fabs(e));
        return m;
    };
    double rn = norm_inf(r);
    for (int it = 0; it < max_iter; ++it) {
        if (rn < tol) return true;
        jac(x, j);
        if (!solve_normal_equations(j, r, damping, step)) return false;
        std::vector<double> xn(x.size());
        for (size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + step[i];
        std::vector<double> rnv;
        f(xn, rnv);
        double rn2 = norm_inf(rnv);
        if (rn2 <= rn) {
            x = std::move(xn);
            r = std::move(rnv);
            rn = rn2;
            damping = std::max(damping * 0.5, 1e-12);
        } else {
            damping *= 10.0;
            if (damping > 1e8) return rn < tol;
        }
    }
    return rn < tol;
}

}  // namespace msymp
