#ifndef LEFLAB_FITTING_HPP
#define LEFLAB_FITTING_HPP

// Least-squares extraction of leading powers and series coefficients from
// sampled asymptotic data.  All fits are linear in the unknowns; the only
// nonlinearity (the power itself) is read off in log-log form.

#include "leflab/common.hpp"

namespace leflab {

struct PowerFit {
    double exponent = 0.0;     // p in y ~ C x^p (log x)^q
    double coefficient = 0.0;  // C
    double max_residual = 0.0; // largest |log y - model| over the sample
    double drop_shift = 0.0;   // exponent change when the extreme x is dropped
};

// Fits log|y| = log C + p log x + q log|log x| by linear least squares in
// (log C, p), with the log-power q supplied by the caller, and reports the
// stability of p under dropping the sample with the largest x.
PowerFit fit_leading_order(const Vec& x, const Vec& y, double q = 0.0);

// Coefficients c minimizing sum_i (y_i - sum_j c_j b_j(x_i))^2 for the
// caller's basis columns b_j evaluated on x (normal equations; the bases
// here are tiny and well separated on the sample ranges used).
Vec least_squares(const std::vector<Vec>& basis_columns, const Vec& y);

// Evaluates {x^e : e in exponents} on the sample and solves; the workhorse
// for pulling constant terms out of short expansions in t or sqrt(t).
Vec fit_power_basis(const Vec& x, const Vec& y, const Vec& exponents);

}  // namespace leflab

#endif
