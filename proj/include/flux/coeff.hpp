#pragma once

#include <array>
#include <sstream>
#include <vector>

#include "flux/rational.hpp"

namespace flux {

// Gaussian rationals a + b*i
struct Gauss {
    Rat re{0}, im{0};

    Gauss() = default;
    Gauss(Rat r) : re(std::move(r)) {}
    Gauss(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    static Gauss unit_i() { return Gauss(Rat(0), Rat(1)); }

    friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gauss operator/(const Gauss& a, const Gauss& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Gauss& operator+=(const Gauss& b) { return *this = *this + b; }
    Gauss& operator-=(const Gauss& b) { return *this = *this - b; }
    Gauss& operator*=(const Gauss& b) { return *this = *this * b; }
    friend bool operator==(const Gauss& a, const Gauss& b) = default;
};

// element of the degree-4 cyclotomic field generated by a primitive 12th root z,
// minimal polynomial z^4 - z^2 + 1; contains i = z^3, a 6th root z^2, sqrt(-3) = 2z^4+1 = 2z^2-1
struct Cyclo12 {
    std::array<Rat, 4> c{Rat(0), Rat(0), Rat(0), Rat(0)};

    Cyclo12() = default;
    Cyclo12(Rat r) { c[0] = std::move(r); }
    static Cyclo12 gen() {
        Cyclo12 z;
        z.c[1] = 1;
        return z;
    }
    static Cyclo12 unit_i() {
        Cyclo12 v;
        v.c[3] = 1;
        return v;
    }
    static Cyclo12 root6() {  // z^2, satisfies x^2 - x + 1 = 0
        Cyclo12 v;
        v.c[2] = 1;
        return v;
    }
    static Cyclo12 sqrt_m3() {
        Cyclo12 v;
        v.c[0] = -1;
        v.c[2] = 2;
        return v;
    }

    friend Cyclo12 operator+(const Cyclo12& a, const Cyclo12& b) {
        Cyclo12 r;
        for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend Cyclo12 operator-(const Cyclo12& a, const Cyclo12& b) {
        Cyclo12 r;
        for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend Cyclo12 operator-(const Cyclo12& a) {
        Cyclo12 r;
        for (int k = 0; k < 4; ++k) r.c[k] = -a.c[k];
        return r;
    }
    friend Cyclo12 operator*(const Cyclo12& a, const Cyclo12& b) {
        std::array<Rat, 7> raw{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) raw[i + j] += a.c[i] * b.c[j];
        // z^4 = z^2 - 1, applied top-down
        for (int d = 6; d >= 4; --d) {
            raw[d - 2] += raw[d];
            raw[d - 4] -= raw[d];
            raw[d] = 0;
        }
        Cyclo12 r;
        for (int k = 0; k < 4; ++k) r.c[k] = raw[k];
        return r;
    }
    Cyclo12& operator+=(const Cyclo12& b) { return *this = *this + b; }
    Cyclo12& operator-=(const Cyclo12& b) { return *this = *this - b; }
    Cyclo12& operator*=(const Cyclo12& b) { return *this = *this * b; }
    friend bool operator==(const Cyclo12& a, const Cyclo12& b) = default;

    bool is_zero() const {
        for (auto& x : c)
            if (x != 0) return false;
        return true;
    }

    // inverse by extended euclid in Q[z] against the minimal polynomial
    friend Cyclo12 operator/(const Cyclo12& a, const Cyclo12& b);

    // evaluate at a chosen rational stand-in for z (only meaningful for
    // specialization-rank arguments where any transcendence surrogate works)
    Rat eval(const Rat& z) const { return c[0] + z * (c[1] + z * (c[2] + z * c[3])); }
};

namespace detail {
using Poly = std::vector<Rat>;  // dense, ascending degree

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_rem_divmod(Poly a, const Poly& b, Poly* quot = nullptr) {
    poly_trim(a);
    if (quot) quot->assign(a.size(), Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        if (quot) (*quot)[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        poly_trim(a);
    }
    if (quot) poly_trim(*quot);
    return a;
}
}  // namespace detail

inline Cyclo12 operator/(const Cyclo12& a, const Cyclo12& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    using detail::Poly;
    Poly r0{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)};  // minimal polynomial
    Poly r1(b.c.begin(), b.c.end());
    detail::poly_trim(r1);
    Poly s0{}, s1{Rat(1)};  // bezout coefficients tracking r1
    while (true) {
        Poly q;
        Poly r2 = detail::poly_rem_divmod(r0, r1, &q);
        if (r2.empty()) break;
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), q.size() + s1.size() - 1), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        detail::poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant gcd; inverse of b is s1 / r1 reduced mod minimal poly
    Rat g = r1[0];
    Poly inv = s1;
    for (auto& x : inv) x /= g;
    Poly m{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)};
    inv = detail::poly_rem_divmod(inv, m);
    Cyclo12 binv;
    for (size_t k = 0; k < inv.size() && k < 4; ++k) binv.c[k] = inv[k];
    return a * binv;
}

// field operations trait; every coefficient field used by the series layer
// specializes this
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& a) { return a == 0; }
    static Rat from_rat(const Rat& r) { return r; }
    static std::string str(const Rat& a) { return rat_str(a); }
    static std::optional<Rat> sqrt(const Rat& a) { return rat_sqrt(a); }
};

template <>
struct FieldOps<Gauss> {
    static Gauss zero() { return Gauss(); }
    static Gauss one() { return Gauss(Rat(1)); }
    static bool is_zero(const Gauss& a) { return a.re == 0 && a.im == 0; }
    static Gauss from_rat(const Rat& r) { return Gauss(r); }
    static std::string str(const Gauss& a) {
        if (a.im == 0) return rat_str(a.re);
        std::ostringstream os;
        os << "(" << rat_str(a.re) << (a.im < 0 ? "-" : "+") << rat_str(abs(a.im)) << "i)";
        return os.str();
    }
    static std::optional<Gauss> sqrt(const Gauss&) { return std::nullopt; }
};

template <>
struct FieldOps<Cyclo12> {
    static Cyclo12 zero() { return Cyclo12(); }
    static Cyclo12 one() { return Cyclo12(Rat(1)); }
    static bool is_zero(const Cyclo12& a) { return a.is_zero(); }
    static Cyclo12 from_rat(const Rat& r) { return Cyclo12(r); }
    static std::string str(const Cyclo12& a) {
        std::ostringstream os;
        os << "[" << rat_str(a.c[0]) << "," << rat_str(a.c[1]) << "," << rat_str(a.c[2]) << ","
           << rat_str(a.c[3]) << "]";
        return os.str();
    }
    static std::optional<Cyclo12> sqrt(const Cyclo12&) { return std::nullopt; }
};

}  // namespace flux
