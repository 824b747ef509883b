#ifndef LEFLAB_JET_HPP
#define LEFLAB_JET_HPP

// Truncated multivariate Taylor arithmetic.  A Jet stores the Taylor
// coefficients (not raw partials) of a function at a base point, dense over
// all multi-indices of total degree <= order.  Arithmetic is exact at that
// order; elementary functions go through the nilpotent-part series.

#include <functional>
#include <map>

#include "leflab/common.hpp"

namespace leflab {

// Dense enumeration of multi-indices with |alpha| <= maxdeg, graded
// lexicographic.  Shared by jets (x-derivatives) and symbol polynomials
// (xi-exponents); instances are interned per (nvars, maxdeg).
class MultiIndexSet {
public:
    static const MultiIndexSet& get(int nvars, int maxdeg);

    int size() const { return static_cast<int>(idx_.size()); }
    const std::vector<int>& alpha(int i) const { return idx_[i]; }
    int degree(int i) const { return deg_[i]; }
    int nvars() const { return nvars_; }
    int maxdeg() const { return maxdeg_; }

    // Index of alpha, or -1 when |alpha| > maxdeg.
    int find(const std::vector<int>& alpha) const;
    // Index of alpha + beta, or -1 when the sum exceeds maxdeg.
    int add(int i, int j) const;
    // Index of alpha + e_k, or -1.
    int bump(int i, int k) const;

    double factorial(int i) const { return fact_[i]; }  // alpha!

private:
    MultiIndexSet(int nvars, int maxdeg);
    int nvars_, maxdeg_;
    std::vector<std::vector<int>> idx_;
    std::vector<int> deg_;
    std::vector<double> fact_;
    std::map<std::vector<int>, int> lookup_;
};

template <class T>
class Jet {
public:
    Jet() = default;

    Jet(int nvars, int order, T value = T{})
        : mis_(&MultiIndexSet::get(nvars, order)), c_(mis_->size(), T{}) {
        c_[0] = value;
    }

    static Jet constant(int nvars, int order, T value) { return Jet(nvars, order, value); }

    // Coordinate function x_i with value x0.
    static Jet variable(int nvars, int order, int i, T x0) {
        Jet j(nvars, order, x0);
        if (order >= 1) {
            std::vector<int> e(nvars, 0);
            e[i] = 1;
            j.c_[j.mis_->find(e)] = T{1};
        }
        return j;
    }

    int nvars() const { return mis_->nvars(); }
    int order() const { return mis_->maxdeg(); }
    T value() const { return c_.empty() ? T{} : c_[0]; }

    // Taylor coefficient for multi-index alpha.
    T coeff(const std::vector<int>& alpha) const {
        int i = mis_->find(alpha);
        if (i < 0) throw std::invalid_argument("jet coefficient index beyond stored order");
        return c_[i];
    }

    // Mixed partial derivative d^alpha f = alpha! * coeff(alpha).
    T partial(const std::vector<int>& alpha) const {
        int i = mis_->find(alpha);
        if (i < 0) throw std::invalid_argument("jet partial index beyond stored order");
        return c_[i] * T(mis_->factorial(i));
    }

    Jet& operator+=(const Jet& o) {
        check_compatible(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check_compatible(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(T s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, T s) { return a *= s; }
    friend Jet operator*(T s, Jet a) { return a *= s; }
    friend Jet operator-(Jet a) { return a *= T{-1}; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_compatible(b);
        Jet r(a.nvars(), a.order());
        const MultiIndexSet& m = *a.mis_;
        int n = m.size();
        for (int i = 0; i < n; ++i) {
            if (a.c_[i] == T{}) continue;
            for (int j = 0; j < n; ++j) {
                if (b.c_[j] == T{}) continue;
                int k = m.add(i, j);
                if (k >= 0) r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    // Partial derivative in direction k; drops one order.
    Jet deriv(int k) const {
        int d = order();
        if (d == 0) throw std::invalid_argument("jet derivative exhausts stored order");
        Jet r(nvars(), d - 1);
        const MultiIndexSet& lo = *r.mis_;
        for (int i = 0; i < lo.size(); ++i) {
            std::vector<int> al = lo.alpha(i);
            al[k] += 1;
            int src = mis_->find(al);
            r.c_[i] = c_[src] * T(static_cast<double>(al[k]));
        }
        return r;
    }

    // Truncated Taylor evaluation at base + dx.
    T evaluate(const Vec& dx) const {
        T s{};
        for (int i = 0; i < mis_->size(); ++i) {
            T term = c_[i];
            const auto& al = mis_->alpha(i);
            for (int v = 0; v < nvars(); ++v)
                for (int p = 0; p < al[v]; ++p) term *= T(dx[v]);
            s += term;
        }
        return s;
    }

    // g(f) for analytic g given the derivative list g^{(k)}(f.value()), k = 0..order.
    Jet series(const std::vector<T>& gderiv) const {
        Jet delta = *this;
        delta.c_[0] = T{};
        Jet r(nvars(), order(), gderiv[0]);
        Jet pw(nvars(), order(), T{1});
        double kfact = 1.0;
        for (int k = 1; k <= order(); ++k) {
            pw = pw * delta;
            kfact *= k;
            r += pw * (gderiv[k] / T(kfact));
        }
        return r;
    }

    void check_compatible(const Jet& o) const {
        if (mis_ != o.mis_) throw std::invalid_argument("jet arity/order mismatch");
    }

    const MultiIndexSet& mindex() const { return *mis_; }
    int ncoeff() const { return static_cast<int>(c_.size()); }
    T raw(int i) const { return c_[i]; }
    T& raw(int i) { return c_[i]; }

private:
    const MultiIndexSet* mis_ = nullptr;
    std::vector<T> c_;
};

using JetD = Jet<double>;
using JetC = Jet<cplx>;

template <class T>
Jet<T> jet_reciprocal(const Jet<T>& f) {
    T a = f.value();
    if (a == T{}) throw std::invalid_argument("jet reciprocal at zero value");
    std::vector<T> g(f.order() + 1);
    T p = T{1} / a;
    double sign = 1.0, kfact = 1.0;
    for (int k = 0; k <= f.order(); ++k) {
        // d^k (1/x) = (-1)^k k! x^{-(k+1)}
        if (k > 0) kfact *= k;
        g[k] = T(sign * kfact) * p;
        p /= a;
        sign = -sign;
    }
    return f.series(g);
}

template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
    return a * jet_reciprocal(b);
}

template <class T>
Jet<T> jet_exp(const Jet<T>& f) {
    using std::exp;
    std::vector<T> g(f.order() + 1, exp(f.value()));
    return f.series(g);
}

template <class T>
Jet<T> jet_log(const Jet<T>& f) {
    using std::log;
    T a = f.value();
    std::vector<T> g(f.order() + 1);
    g[0] = log(a);
    T p = T{1} / a;
    double sign = 1.0, kfact = 1.0;
    for (int k = 1; k <= f.order(); ++k) {
        g[k] = T(sign * kfact) * p;
        kfact *= k;
        p /= a;
        sign = -sign;
    }
    return f.series(g);
}

// d^k x^e = e(e-1)...(e-k+1) x^{e-k}
template <class T>
Jet<T> jet_pow(const Jet<T>& f, double expn) {
    using std::pow;
    T a = f.value();
    std::vector<T> g(f.order() + 1);
    double coef = 1.0;
    for (int k = 0; k <= f.order(); ++k) {
        g[k] = T(coef) * pow(a, T(expn - k));
        coef *= (expn - k);
    }
    return f.series(g);
}

template <class T>
Jet<T> jet_sqrt(const Jet<T>& f) {
    return jet_pow(f, 0.5);
}

inline JetD jet_sin(const JetD& f) {
    double a = f.value();
    std::vector<double> g(f.order() + 1);
    double tab[4] = {std::sin(a), std::cos(a), -std::sin(a), -std::cos(a)};
    for (int k = 0; k <= f.order(); ++k) g[k] = tab[k % 4];
    return f.series(g);
}

inline JetD jet_cos(const JetD& f) {
    double a = f.value();
    std::vector<double> g(f.order() + 1);
    double tab[4] = {std::cos(a), -std::sin(a), -std::cos(a), std::sin(a)};
    for (int k = 0; k <= f.order(); ++k) g[k] = tab[k % 4];
    return f.series(g);
}

// Composition g(u_1, ..., u_m) where g is an m-variate jet and the u_i share
// the same inner variables.  Inner values must match g's base point offsets:
// the u_i enter through their nilpotent parts.
template <class T>
Jet<T> jet_compose(const Jet<T>& outer, const std::vector<Jet<T>>& inner) {
    if (static_cast<int>(inner.size()) != outer.nvars())
        throw std::invalid_argument("jet_compose: inner count != outer arity");
    int nv = inner[0].nvars(), ord = inner[0].order();
    for (const auto& u : inner) u.check_compatible(inner[0]);

    // Powers of the nilpotent parts, precomputed per inner slot.
    std::vector<std::vector<Jet<T>>> pw(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) {
        Jet<T> delta = inner[i];
        delta.raw(0) = T{};
        pw[i].push_back(Jet<T>::constant(nv, ord, T{1}));
        for (int p = 1; p <= ord; ++p) pw[i].push_back(pw[i].back() * delta);
    }

    const MultiIndexSet& om = outer.mindex();
    Jet<T> r(nv, ord);
    for (int i = 0; i < om.size(); ++i) {
        if (outer.raw(i) == T{}) continue;
        if (om.degree(i) > ord) continue;
        Jet<T> term = Jet<T>::constant(nv, ord, outer.raw(i));
        const auto& al = om.alpha(i);
        for (size_t v = 0; v < inner.size(); ++v)
            if (al[v] > 0) term = term * pw[v][al[v]];
        r += term;
    }
    return r;
}

// Copy down to a lower stored order; coefficients beyond it are discarded.
template <class T>
Jet<T> jet_truncate(const Jet<T>& f, int order) {
    if (order > f.order()) throw std::invalid_argument("jet_truncate: order above stored order");
    if (order == f.order()) return f;
    Jet<T> r(f.nvars(), order);
    for (int i = 0; i < r.ncoeff(); ++i) r.raw(i) = f.coeff(r.mindex().alpha(i));
    return r;
}

inline JetC jet_complexify(const JetD& f) {
    JetC r(f.nvars(), f.order());
    for (int i = 0; i < f.ncoeff(); ++i) r.raw(i) = cplx(f.raw(i), 0.0);
    return r;
}

inline JetD jet_real(const JetC& f) {
    JetD r(f.nvars(), f.order());
    for (int i = 0; i < f.ncoeff(); ++i) r.raw(i) = f.raw(i).real();
    return r;
}

}  // namespace leflab

#endif
