#include "leflab/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace leflab {

namespace {

// Slope/intercept least squares on (u_i, v_i).
void line_fit(const Vec& u, const Vec& v, double& slope, double& intercept) {
    size_t n = u.size();
    double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    for (size_t i = 0; i < n; ++i) {
        su += u[i];
        sv += v[i];
        suu += u[i] * u[i];
        suv += u[i] * v[i];
    }
    double den = n * suu - su * su;
    if (den == 0.0) throw std::invalid_argument("degenerate abscissae in line fit");
    slope = (n * suv - su * sv) / den;
    intercept = (sv - slope * su) / n;
}

}  // namespace

PowerFit fit_leading_order(const Vec& x, const Vec& y, double q) {
    if (x.size() != y.size() || x.size() < 3) {
        throw std::invalid_argument("fit_leading_order needs >= 3 samples");
    }
    Vec u(x.size()), v(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] == 0.0) {
            throw std::invalid_argument("fit_leading_order needs x > 0 and y != 0");
        }
        u[i] = std::log(x[i]);
        v[i] = std::log(std::abs(y[i])) - q * std::log(std::abs(std::log(x[i])));
    }
    PowerFit fit;
    double intercept;
    line_fit(u, v, fit.exponent, intercept);
    fit.coefficient = std::exp(intercept);
    if (y[0] < 0.0) fit.coefficient = -fit.coefficient;
    for (size_t i = 0; i < x.size(); ++i) {
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(v[i] - intercept - fit.exponent * u[i]));
    }
    // Stability: refit without the largest-x sample.
    size_t imax = 0;
    for (size_t i = 1; i < x.size(); ++i) {
        if (x[i] > x[imax]) imax = i;
    }
    Vec u2, v2;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i == imax) continue;
        u2.push_back(u[i]);
        v2.push_back(v[i]);
    }
    double p2, c2;
    line_fit(u2, v2, p2, c2);
    fit.drop_shift = std::abs(p2 - fit.exponent);
    return fit;
}

Vec least_squares(const std::vector<Vec>& basis_columns, const Vec& y) {
    size_t m = basis_columns.size();
    if (m == 0) throw std::invalid_argument("least_squares needs basis columns");
    size_t n = y.size();
    for (const auto& col : basis_columns) {
        if (col.size() != n) throw std::invalid_argument("basis column length mismatch");
    }
    if (n < m) throw std::invalid_argument("least_squares is underdetermined");
    MatD ata(m, m);
    Vec atb(m, 0.0);
    for (size_t j = 0; j < m; ++j) {
        for (size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (size_t i = 0; i < n; ++i) s += basis_columns[j][i] * basis_columns[k][i];
            ata(j, k) = s;
        }
        for (size_t i = 0; i < n; ++i) atb[j] += basis_columns[j][i] * y[i];
    }
    return solve_linear(ata, atb);
}

Vec fit_power_basis(const Vec& x, const Vec& y, const Vec& exponents) {
    std::vector<Vec> cols;
    cols.reserve(exponents.size());
    for (double e : exponents) {
        Vec col(x.size());
        for (size_t i = 0; i < x.size(); ++i) col[i] = std::pow(x[i], e);
        cols.push_back(std::move(col));
    }
    return least_squares(cols, y);
}

}  // namespace leflab
