#pragma once

#include "flux/novikov.hpp"

namespace flux {

// series in two directions: finitely many integer t-powers (columns), each
// column a one-variable series in h. absent columns are exactly zero; the
// lossy flag records that a construction or truncation dropped a column that
// still carried visible terms
template <class K = Rat>
class Laurent {
public:
    using Col = Novikov<K>;

    Laurent() = default;

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return from_scalar(Col::one()); }
    static Laurent from_scalar(Col s) {
        Laurent r;
        r.set_col(0, std::move(s));
        return r;
    }
    static Laurent term(K c, Rat m, long n) {
        Laurent r;
        r.set_col(n, Col::term(std::move(c), std::move(m)));
        return r;
    }
    static Laurent t_pow(long n) {
        Laurent r;
        r.set_col(n, Col::one());
        return r;
    }

    const std::map<long, Col>& cols() const { return cols_; }
    bool lossy() const { return lossy_; }
    void mark_lossy() { lossy_ = true; }

    Col col(long n) const {
        auto it = cols_.find(n);
        return it == cols_.end() ? Col::zero() : it->second;
    }
    void set_col(long n, Col s) {
        if (s.vanishes() && s.exact())
            cols_.erase(n);
        else
            cols_[n] = std::move(s);
    }

    bool vanishes() const {
        for (const auto& [n, s] : cols_)
            if (!s.vanishes()) return false;
        return true;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        r.lossy_ = a.lossy_ || b.lossy_;
        for (const auto& [n, s] : b.cols_) r.set_col(n, r.col(n) + s);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator-(const Laurent& a) {
        Laurent r = a;
        for (auto& [n, s] : r.cols_) s = -s;
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        r.lossy_ = a.lossy_ || b.lossy_;
        for (const auto& [na, sa] : a.cols_)
            for (const auto& [nb, sb] : b.cols_) r.set_col(na + nb, r.col(na + nb) + sa * sb);
        return r;
    }
    Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
    Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
    Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

    friend Laurent operator*(const Col& c, const Laurent& a) {
        Laurent r;
        r.lossy_ = a.lossy_;
        for (const auto& [n, s] : a.cols_) r.set_col(n, c * s);
        return r;
    }

    Laurent pow(long e) const {
        if (e < 0) throw std::invalid_argument("pow wants e >= 0");
        Laurent acc = one(), b = *this;
        for (long k = e; k > 0; k >>= 1) {
            if (k & 1) acc *= b;
            b = (k >> 1) ? b * b : b;
        }
        return acc;
    }

    // (m, n) -> (m + n, n + d)
    Laurent translate(long d) const {
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) r.set_col(n + d, Col::h_pow(Rat(n)) * s);
        return r;
    }

    // every h-exponent scaled by c > 0, column by column
    Laurent exponent_rescale(const Rat& c) const {
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) r.set_col(n, s.exponent_rescale(c));
        return r;
    }

    // t -> h^c * t
    Laurent subst_h_shift(const Rat& c) const {
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) r.set_col(n, Col::h_pow(c * n) * s);
        return r;
    }

    // t -> t^k for k >= 1
    Laurent subst_t_pow(long k) const {
        if (k < 1) throw std::invalid_argument("subst_t_pow wants k >= 1");
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) r.set_col(n * k, s);
        return r;
    }

    // t -> 1/t
    Laurent subst_t_inv() const {
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) r.set_col(-n, s);
        return r;
    }

    // t -> u * t for an invertible scalar u
    Laurent subst_t_scale(const Col& u) const {
        Laurent r;
        r.lossy_ = lossy_;
        Col ui = u.invert();
        for (const auto& [n, s] : cols_)
            r.set_col(n, (n >= 0 ? u.pow(n) : ui.pow(-n)) * s);
        return r;
    }

    Col eval(const Col& u) const {
        Col acc = Col::zero();
        std::optional<Col> ui;
        for (const auto& [n, s] : cols_) {
            if (n >= 0)
                acc += u.pow(n) * s;
            else {
                if (!ui) ui = u.invert();
                acc += ui->pow(-n) * s;
            }
        }
        return acc;
    }

    Laurent derivative() const {  // d/dt
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_)
            if (n != 0) r.set_col(n - 1, Col::from_rat(Rat(n)) * s);
        return r;
    }

    Laurent truncate_h(const Rat& p) const {
        Laurent r = *this;
        for (auto& [n, s] : r.cols_) s.truncate(p);
        for (auto it = r.cols_.begin(); it != r.cols_.end();)
            it = (it->second.vanishes() && it->second.exact()) ? r.cols_.erase(it) : std::next(it);
        return r;
    }

    // keep columns in [lo, hi]; flags loss if a dropped column was visibly nonzero
    Laurent restrict_cols(long lo, long hi) const {
        Laurent r;
        r.lossy_ = lossy_;
        for (const auto& [n, s] : cols_) {
            if (n < lo || n > hi) {
                if (!s.vanishes()) r.lossy_ = true;
                continue;
            }
            r.set_col(n, s);
        }
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.cols_ == b.cols_;  // lossy flags are advisory, not part of the value
    }

    static bool agrees_below(const Laurent& a, const Laurent& b, const Rat& target) {
        for (const auto& [n, s] : a.cols_)
            if (!Col::agrees_below(s, b.col(n), target)) return false;
        for (const auto& [n, s] : b.cols_)
            if (a.cols_.find(n) == a.cols_.end() && !Col::vanishes_below(s, target)) return false;
        return true;
    }

    static bool vanishes_below(const Laurent& a, const Rat& target) {
        return agrees_below(a, zero(), target);
    }

    std::string to_text() const {
        // visible terms in increasing (m, n), then a single coarsest cutoff marker
        std::map<std::pair<Rat, long>, K> flat;
        XRat p;
        bool any_prec = false;
        for (const auto& [n, s] : cols_) {
            for (const auto& [m, c] : s.terms()) flat.emplace(std::make_pair(m, n), c);
            if (!s.exact()) {
                p = any_prec ? xmin(p, s.prec()) : s.prec();
                any_prec = true;
            }
        }
        std::string out;
        for (const auto& [mn, c] : flat) {
            if (!out.empty()) out += " + ";
            out += FieldOps<K>::str(c);
            if (mn.first != 0) out += "*h^(" + rat_str(mn.first) + ")";
            if (mn.second != 0) out += "*t^(" + std::to_string(mn.second) + ")";
        }
        if (out.empty()) out = "0";
        if (any_prec && p) out += " + O(h^(" + rat_str(*p) + "))";
        return out;
    }

private:
    std::map<long, Col> cols_;
    bool lossy_ = false;
};

using Lau = Laurent<Rat>;

}  // namespace flux
