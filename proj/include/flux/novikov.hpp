#pragma once

#include <map>
#include <optional>

#include "flux/coeff.hpp"

namespace flux {

struct ZeroDivisor : std::domain_error {
    ZeroDivisor() : std::domain_error("inversion of a series with no visible leading term") {}
};

// extended exponents: nullopt plays the role of +infinity
using XRat = std::optional<Rat>;

inline XRat xmin(const XRat& a, const XRat& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}
inline XRat xadd(const XRat& a, const XRat& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}
inline bool xge(const XRat& a, const Rat& t) { return !a || *a >= t; }
inline bool xlt(const XRat& a, const Rat& t) { return a && *a < t; }

// one-variable generalized series: finitely many visible terms with rational
// exponents, known below the cutoff prec (prec == nullopt means exact).
// arithmetic propagates the cutoff non-archimedeanly:
//   add: min of cutoffs; mul: min(pa + val b, pb + val a)
template <class K = Rat>
class Novikov {
public:
    using Ops = FieldOps<K>;

    Novikov() = default;

    static Novikov zero() { return Novikov(); }
    static Novikov one() { return term(Ops::one(), Rat(0)); }
    static Novikov from_rat(const Rat& c) { return term(Ops::from_rat(c), Rat(0)); }
    static Novikov term(K c, Rat m) {
        Novikov r;
        if (!Ops::is_zero(c)) r.terms_.emplace(std::move(m), std::move(c));
        return r;
    }
    static Novikov h_pow(Rat m) { return term(Ops::one(), std::move(m)); }
    static Novikov unknown_beyond(Rat p) {  // O(h^p)
        Novikov r;
        r.prec_ = std::move(p);
        return r;
    }

    const std::map<Rat, K>& terms() const { return terms_; }
    const XRat& prec() const { return prec_; }
    bool exact() const { return !prec_.has_value(); }

    // no visible term; with finite prec this only certifies vanishing below prec
    bool vanishes() const { return terms_.empty(); }

    // smallest exponent that could carry a nonzero coefficient
    XRat val_bound() const {
        if (!terms_.empty()) return terms_.begin()->first;
        return prec_;
    }

    const Rat& lead_exp() const {
        if (terms_.empty()) throw ZeroDivisor();
        return terms_.begin()->first;
    }
    const K& lead_coeff() const {
        if (terms_.empty()) throw ZeroDivisor();
        return terms_.begin()->second;
    }

    K coeff(const Rat& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Ops::zero() : it->second;
    }
    bool known_at(const Rat& m) const { return !prec_ || m < *prec_; }

    Novikov& truncate(const Rat& p) {
        prec_ = xmin(prec_, XRat(p));
        drop_beyond();
        return *this;
    }

    friend Novikov operator+(const Novikov& a, const Novikov& b) {
        Novikov r = a;
        r.prec_ = xmin(a.prec_, b.prec_);
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        r.drop_beyond();
        return r;
    }
    friend Novikov operator-(const Novikov& a, const Novikov& b) { return a + (-b); }
    friend Novikov operator-(const Novikov& a) {
        Novikov r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Novikov operator*(const Novikov& a, const Novikov& b) {
        Novikov r;
        r.prec_ = xmin(xadd(a.prec_, b.val_bound()), xadd(b.prec_, a.val_bound()));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Rat m = ma + mb;
                if (xlt(r.prec_, m) || (r.prec_ && m == *r.prec_)) continue;
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Novikov& operator+=(const Novikov& b) { return *this = *this + b; }
    Novikov& operator-=(const Novikov& b) { return *this = *this - b; }
    Novikov& operator*=(const Novikov& b) { return *this = *this * b; }

    friend Novikov operator*(const K& c, const Novikov& a) {
        Novikov r = a;
        if (Ops::is_zero(c)) {
            r.terms_.clear();
            return r;
        }
        for (auto& [m, x] : r.terms_) x = c * x;
        r.normalize();
        return r;
    }

    Novikov pow(long n) const {
        if (n < 0) throw std::invalid_argument("pow wants n >= 0; use invert");
        Novikov acc = one(), b = *this;
        for (long k = n; k > 0; k >>= 1) {
            if (k & 1) acc *= b;
            b = (k >> 1) ? b * b : b;
        }
        return acc;
    }

    // structural identity (terms and cutoff); use agrees_below for math equality
    friend bool operator==(const Novikov& a, const Novikov& b) {
        return a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    static bool agrees_below(const Novikov& a, const Novikov& b, const Rat& target) {
        if (!xge(a.prec_, target) || !xge(b.prec_, target)) return false;
        auto ita = a.terms_.begin(), itb = b.terms_.begin();
        while (true) {
            while (ita != a.terms_.end() && ita->first >= target) ++ita;
            while (itb != b.terms_.end() && itb->first >= target) ++itb;
            bool ea = ita == a.terms_.end() || ita->first >= target;
            bool eb = itb == b.terms_.end() || itb->first >= target;
            if (ea || eb) return ea && eb;
            if (ita->first != itb->first || !(ita->second == itb->second)) return false;
            ++ita, ++itb;
        }
    }

    // certified-zero below target
    static bool vanishes_below(const Novikov& a, const Rat& target) {
        return agrees_below(a, zero(), target);
    }

    // multiplicative inverse; output certified below min(prec - 2*val, target).
    // exact non-monomial input needs an explicit target
    Novikov invert(const XRat& target = std::nullopt) const {
        if (terms_.empty()) throw ZeroDivisor();
        Rat v = lead_exp();
        const K& c = lead_coeff();
        XRat pout = xmin(target, prec_ ? XRat(*prec_ - 2 * v) : XRat());
        Novikov x = term(Ops::one() / c, -v);
        if (!pout) {
            if (terms_.size() == 1) return x;
            throw std::invalid_argument("exact inverse of a non-monomial needs a target cutoff");
        }
        while (true) {
            Novikov r = one() - *this * x;
            auto it = r.terms_.begin();
            if (it == r.terms_.end() || it->first >= *pout + v) break;
            x.add_term(it->first - v, it->second / c);
        }
        x.prec_ = pout;
        x.drop_beyond();
        return x;
    }

    Novikov operator/(const Novikov& b) const { return *this * b.invert(); }

    // exact-coefficient square root when the leading coefficient is a square;
    // certified below min(prec - val/2, target)
    std::optional<Novikov> sqrt(const XRat& target = std::nullopt) const {
        if (terms_.empty()) {
            if (!prec_) return zero();
            return unknown_beyond(*prec_ / 2);
        }
        Rat v = lead_exp();
        auto c = Ops::sqrt(lead_coeff());
        if (!c) return std::nullopt;
        XRat pout = xmin(target, prec_ ? XRat(*prec_ - v / 2) : XRat());
        Novikov x = term(*c, v / 2);
        if (!pout) {
            if (terms_.size() == 1) return x;
            throw std::invalid_argument("exact sqrt of a non-monomial needs a target cutoff");
        }
        K twoc = (Ops::one() + Ops::one()) * *c;
        while (true) {
            Novikov r = *this - x * x;
            auto it = r.terms_.begin();
            if (it == r.terms_.end() || it->first >= *pout + v / 2) break;
            x.add_term(it->first - v / 2, it->second / twoc);
        }
        x.prec_ = pout;
        x.drop_beyond();
        return x;
    }

    // substitute h -> h^c for positive rational c
    Novikov exponent_rescale(const Rat& c) const {
        if (c <= 0) throw std::invalid_argument("exponent_rescale wants c > 0");
        Novikov r;
        if (prec_) r.prec_ = *prec_ * c;
        for (const auto& [m, x] : terms_) r.terms_.emplace(m * c, x);
        return r;
    }

    std::string to_text() const {
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += Ops::str(c);
            if (m != 0) out += "*h^(" + rat_str(m) + ")";
        }
        if (out.empty()) out = "0";
        if (prec_) out += " + O(h^(" + rat_str(*prec_) + "))";
        return out;
    }

    // internal builder for deserializers; keeps canonical form
    static Novikov build(std::map<Rat, K> terms, XRat prec) {
        Novikov r;
        r.terms_ = std::move(terms);
        r.prec_ = std::move(prec);
        r.normalize();
        r.drop_beyond();
        return r;
    }

private:
    void add_term(const Rat& m, const K& c) {
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (Ops::is_zero(it->second)) terms_.erase(it);
        } else if (Ops::is_zero(c)) {
            terms_.erase(it);
        }
    }
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = Ops::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    void drop_beyond() {
        if (!prec_) return;
        terms_.erase(terms_.lower_bound(*prec_), terms_.end());
    }

    std::map<Rat, K> terms_;
    XRat prec_;
};

using Nov = Novikov<Rat>;

}  // namespace flux
