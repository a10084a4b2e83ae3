#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "flux/linalg.hpp"

namespace flux {

// dense polynomial in the base coordinate, ascending coefficients
template <class K>
using CPoly = std::vector<K>;

template <class K>
void cpoly_trim(CPoly<K>& p) {
    while (!p.empty() && scalar_is_zero(p.back()) &&
           [&] {
               if constexpr (requires { p.back().exact(); })
                   return p.back().exact();
               else
                   return true;
           }())
        p.pop_back();
}

template <class K>
CPoly<K> cpoly_add(const CPoly<K>& a, const CPoly<K>& b) {
    CPoly<K> r(std::max(a.size(), b.size()), scalar_zero<K>());
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    cpoly_trim(r);
    return r;
}

template <class K>
CPoly<K> cpoly_scale(const CPoly<K>& a, const K& c) {
    CPoly<K> r = a;
    for (K& x : r) x = x * c;
    cpoly_trim(r);
    return r;
}

template <class K>
CPoly<K> cpoly_sub(const CPoly<K>& a, const CPoly<K>& b) {
    return cpoly_add(a, cpoly_scale(b, scalar_from_rat<K>(Rat(-1))));
}

template <class K>
CPoly<K> cpoly_mul(const CPoly<K>& a, const CPoly<K>& b, size_t cap) {
    if (a.empty() || b.empty()) return {};
    if (a.size() + b.size() - 1 > cap + 1)
        throw std::overflow_error("curve polynomial degree exceeds the configured cap");
    CPoly<K> r(a.size() + b.size() - 1, scalar_zero<K>());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    cpoly_trim(r);
    return r;
}

template <class K>
CPoly<K> cpoly_deriv(const CPoly<K>& a) {
    CPoly<K> r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * scalar_from_rat<K>(Rat(long(i))));
    cpoly_trim(r);
    return r;
}

template <class K>
K cpoly_eval(const CPoly<K>& a, const K& x) {
    K acc = scalar_zero<K>();
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

template <class K>
bool cpoly_is_zero(const CPoly<K>& a) {
    for (const K& c : a)
        if (!scalar_is_zero(c)) return false;
    return true;
}

template <class K>
bool cpoly_exact(const CPoly<K>& a) {
    if constexpr (requires(const K& c) { c.exact(); }) {
        for (const K& c : a)
            if (!c.exact()) return false;
    }
    return true;
}

// the doubled parameter line: coordinates (root, base) subject to
// root^2 = P(base), with P the degree-four coefficient polynomial; inverses
// of root are realized through the denominator power of P
template <class K>
struct CurveRing {
    CPoly<K> P;
    size_t cap = 64;

    // c[k] multiplies v1^k v2^{4-k}; on the affine chart v = (1, base)
    explicit CurveRing(const std::array<K, 5>& c) {
        P.assign(5, scalar_zero<K>());
        for (int k = 0; k <= 4; ++k) P[4 - k] = c[k];
        cpoly_trim(P);
    }
};

// element (a + root*b) / P^k; a null ring pointer marks elements whose
// arithmetic so far never needed the curve relation
template <class K>
struct CurveElem {
    const CurveRing<K>* R = nullptr;
    CPoly<K> a, b;
    int k = 0;

    static CurveElem zero() { return {}; }
    static CurveElem one() { return from_rat(Rat(1)); }
    static CurveElem from_rat(const Rat& c) {
        CurveElem r;
        if (c != 0) r.a = {scalar_from_rat<K>(c)};
        return r;
    }

    bool is_zero() const { return cpoly_is_zero(a) && cpoly_is_zero(b); }
    bool exact() const { return cpoly_exact(a) && cpoly_exact(b); }

    static const CurveRing<K>* ctx(const CurveElem& x, const CurveElem& y) {
        if (x.R && y.R && x.R != y.R) throw std::logic_error("curve elements from different rings");
        return x.R ? x.R : y.R;
    }
    size_t cap() const { return R ? R->cap : 64; }

    // raise the denominator exponent to kk by scaling the numerator
    CurveElem lifted(int kk, const CurveRing<K>* ring) const {
        CurveElem r = *this;
        r.R = ring;
        if (kk == k) return r;
        if (!ring) throw std::logic_error("denominator lift needs the curve relation");
        for (int i = k; i < kk; ++i) {
            r.a = cpoly_mul(r.a, ring->P, ring->cap);
            r.b = cpoly_mul(r.b, ring->P, ring->cap);
        }
        r.k = kk;
        return r;
    }

    friend CurveElem operator+(const CurveElem& x, const CurveElem& y) {
        const CurveRing<K>* R = ctx(x, y);
        int kk = std::max(x.k, y.k);
        CurveElem xs = x.lifted(kk, R);
        CurveElem ys = y.lifted(kk, R);
        CurveElem r;
        r.R = R;
        r.a = cpoly_add(xs.a, ys.a);
        r.b = cpoly_add(xs.b, ys.b);
        r.k = kk;
        return r;
    }
    friend CurveElem operator-(const CurveElem& x) {
        CurveElem r = x;
        K m = scalar_from_rat<K>(Rat(-1));
        r.a = cpoly_scale(r.a, m);
        r.b = cpoly_scale(r.b, m);
        return r;
    }
    friend CurveElem operator-(const CurveElem& x, const CurveElem& y) { return x + (-y); }
    friend CurveElem operator*(const CurveElem& x, const CurveElem& y) {
        const CurveRing<K>* R = ctx(x, y);
        CurveElem r;
        r.R = R;
        r.k = x.k + y.k;
        size_t cap = r.cap();
        r.a = cpoly_mul(x.a, y.a, cap);
        if (!cpoly_is_zero(x.b) && !cpoly_is_zero(y.b)) {
            if (!R) throw std::logic_error("root product needs the curve relation");
            r.a = cpoly_add(r.a, cpoly_mul(R->P, cpoly_mul(x.b, y.b, cap), cap));
        }
        r.b = cpoly_add(cpoly_mul(x.a, y.b, cap), cpoly_mul(x.b, y.a, cap));
        return r;
    }
    CurveElem& operator+=(const CurveElem& y) { return *this = *this + y; }
    CurveElem& operator-=(const CurveElem& y) { return *this = *this - y; }
    CurveElem& operator*=(const CurveElem& y) { return *this = *this * y; }
};

template <class K>
struct PivotPolicy<CurveElem<K>> {
    static bool usable(const CurveElem<K>& x) { return !x.is_zero(); }
    static bool better(const CurveElem<K>&, const CurveElem<K>&) { return false; }
};

// equality after clearing denominators; sound because {1, root} is a basis
// over the localized polynomial ring
template <class K>
bool curve_eq(const CurveElem<K>& x, const CurveElem<K>& y) {
    return (x - y).is_zero();
}

template <class K>
CurveElem<K> curve_base(const CurveRing<K>& R) {
    CurveElem<K> r;
    r.R = &R;
    r.a = {scalar_zero<K>(), scalar_one<K>()};
    return r;
}

template <class K>
CurveElem<K> curve_root(const CurveRing<K>& R) {
    CurveElem<K> r;
    r.R = &R;
    r.b = {scalar_one<K>()};
    return r;
}

template <class K>
CurveElem<K> curve_root_inv(const CurveRing<K>& R) {
    CurveElem<K> r = curve_root(R);
    r.k = 1;
    return r;
}

template <class K>
CurveElem<K> curve_poly(const CurveRing<K>& R, CPoly<K> a) {
    CurveElem<K> r;
    r.R = &R;
    r.a = std::move(a);
    cpoly_trim(r.a);
    return r;
}

// derivative along the base coordinate; the root differentiates through the
// curve relation, the denominator through the quotient rule
template <class K>
CurveElem<K> curve_partial(const CurveElem<K>& x) {
    if (!x.R) {
        CurveElem<K> r;
        r.a = cpoly_deriv(x.a);
        r.b = cpoly_deriv(x.b);
        return r;
    }
    const CurveRing<K>& R = *x.R;
    CPoly<K> Pd = cpoly_deriv(R.P);
    K kk = scalar_from_rat<K>(Rat(x.k));
    K half = scalar_from_rat<K>(Rat(1, 2));
    CurveElem<K> r;
    r.R = &R;
    r.k = x.k + 1;
    K hk(half - kk);
    r.a = cpoly_sub(cpoly_mul(R.P, cpoly_deriv(x.a), R.cap), cpoly_scale(cpoly_mul(Pd, x.a, R.cap), kk));
    r.b = cpoly_add(cpoly_mul(R.P, cpoly_deriv(x.b), R.cap),
                    cpoly_scale(cpoly_mul(Pd, x.b, R.cap), hk));
    return r;
}

// exterior derivative expressed in the frame of the standard one-form:
// d(base) = -2*root*frame, so d(f) = -2*root*partial(f) in that frame
template <class K>
CurveElem<K> curve_d_frame(const CurveElem<K>& x) {
    if (!x.R) {
        CurveElem<K> p = curve_partial(x);
        if (p.is_zero()) return p;
        throw std::logic_error("frame derivative needs the curve relation");
    }
    K m2 = scalar_from_rat<K>(Rat(-2));
    CurveElem<K> r = curve_root(*x.R) * curve_partial(x);
    r.a = cpoly_scale(r.a, m2);
    r.b = cpoly_scale(r.b, m2);
    return r;
}

// specialization at a point with root_v^2 = P(base_v); a ring homomorphism
template <class K>
K curve_eval(const CurveElem<K>& x, const K& root_v, const K& base_v) {
    K num = cpoly_eval(x.a, base_v) + root_v * cpoly_eval(x.b, base_v);
    if (x.k == 0) return num;
    if (!x.R) throw std::logic_error("denominator evaluation needs the curve relation");
    K den = scalar_one<K>(), pv = cpoly_eval(x.R->P, base_v);
    for (int i = 0; i < x.k; ++i) den = den * pv;
    return num / den;
}

}  // namespace flux
