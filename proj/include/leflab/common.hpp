#ifndef LEFLAB_COMMON_HPP
#define LEFLAB_COMMON_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace leflab {

using cplx = std::complex<double>;
using Vec = std::vector<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Small dense row-major matrix.  Everything in this project is rank <= 2
// fiberwise and <= 6 for Hessian work, so no external linear algebra.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T{}) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }
};

using MatD = Mat<double>;
using MatC = Mat<cplx>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    assert(x.cols == y.rows);
    Mat<T> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            T xik = x(i, k);
            for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

template <class T>
T trace(const Mat<T>& x) {
    assert(x.rows == x.cols);
    T s{};
    for (int i = 0; i < x.rows; ++i) s += x(i, i);
    return s;
}

// Determinant by LU with partial pivoting; n <= 6 in practice.
double det(const MatD& m);

// Solves A x = b in place for small dense A (partial pivoting).
Vec solve_linear(MatD a, Vec b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
Vec symmetric_eigenvalues(MatD a);

inline double sqr(double x) { return x * x; }

// Reduces an angle-like coordinate difference to the representative in (-pi, pi].
inline double principal_angle(double d) {
    double r = std::remainder(d, two_pi);
    if (r <= -pi) r += two_pi;
    return r;
}

}  // namespace leflab

#endif
