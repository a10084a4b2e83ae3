#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "flux/ainf.hpp"
#include "flux/novikov.hpp"

namespace flux {

struct Unsolvable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// magnitude of the visible part; zero iff the scalar vanishes at working precision
inline double coeff_norm(const Rat& c) {
    Rat a = c < 0 ? Rat(-c) : c;
    return a.convert_to<double>();
}
template <class K>
double coeff_norm(const Novikov<K>& c) {
    if (c.vanishes()) return 0.0;
    return coeff_norm(c.terms().begin()->second);
}

namespace detail {

using QpKey = std::pair<std::vector<Bref>, Bref>;
using QpTensor = std::map<QpKey, Rat>;

// rational model of the deformed products, solved once: quartic[k] is the
// order-four tensor whose diagonal restriction is the monomial v1^k v2^(4-k)
// on both cyclic-word buckets, sextic[{k,l}] the order-six correction paired
// with the coefficient product p[k] p[l]
struct QpTensors {
    std::array<QpTensor, 5> quartic;
    std::map<std::pair<int, int>, QpTensor> sextic;
};

const QpTensors& qp_tensors();

}  // namespace detail

// deformation of the wedge-pair category whose order-four product has
// diagonal part p (coefficient k against v1^k v2^(4-k), matching Quartic);
// with arity_bound >= 7 the order-six completion is included
template <class K>
AinfStructure<K> build_Qp(const std::array<K, 5>& p, int arity_bound = 7) {
    const auto& model = detail::qp_tensors();
    AinfStructure<K> st = make_strict<K>(make_wedge_pair());
    std::map<int, std::map<std::vector<Bref>, std::map<Bref, K>>> acc;
    auto add = [&](const detail::QpTensor& t, const K& c, int arity) {
        if (scalar_is_zero(c)) return;
        for (const auto& [key, r] : t)
            acc[arity][key.first][key.second] += c * scalar_from_rat<K>(r);
    };
    for (int k = 0; k <= 4; ++k) add(model.quartic[k], p[k], 4);
    if (arity_bound >= 7)
        for (int k = 0; k <= 4; ++k)
            for (int l = k; l <= 4; ++l) add(model.sextic.at({k, l}), p[k] * p[l], 6);
    for (auto& [arity, tuples] : acc)
        for (auto& [in, vals] : tuples) {
            Combo<K> combo;
            for (auto& [out, c] : vals)
                if (!scalar_is_zero(c)) combo.emplace_back(out, std::move(c));
            if (!combo.empty()) st.higher[arity][in] = std::move(combo);
        }
    return st;
}

// worst coefficient magnitude of the arity-d associativity defect, over all
// composable basis tuples including vertex units
template <class K>
double ainf_residual(const AinfStructure<K>& st, int d) {
    std::vector<Bref> basis;
    for (int v = 0; v < st.alg.nverts(); ++v) basis.push_back({0, v});
    for (int w = 1; st.alg.dim(w) > 0; ++w)
        for (int i = 0; i < st.alg.dim(w); ++i) basis.push_back({w, i});

    double worst = 0.0;
    std::vector<Bref> cur;
    auto eval = [&]() {
        std::map<Bref, K> defect;
        for (int n = 0; n < d; ++n) {
            int par = 0;
            for (int i = 0; i < n; ++i) par += st.deg(cur[i]) + 1;
            bool neg = par % 2 != 0;
            for (int m = 2; m <= d - n; ++m) {
                if (m == d) continue;
                std::vector<Bref> inner(cur.begin() + n, cur.begin() + n + m);
                Combo<K> ci = st.mu(inner);
                for (const auto& [y, cy] : ci) {
                    std::vector<Bref> outer(cur.begin(), cur.begin() + n);
                    outer.push_back(y);
                    outer.insert(outer.end(), cur.begin() + n + m, cur.end());
                    for (const auto& [z, cz] : st.mu(outer))
                        defect[z] += neg ? K(-(cy * cz)) : cy * cz;
                }
            }
        }
        for (const auto& [z, c] : defect) worst = std::max(worst, coeff_norm(c));
    };
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == d) {
            eval();
            return;
        }
        for (const auto& b : basis) {
            if (!cur.empty() && st.src(b) != st.tgt(cur.back())) continue;
            cur.push_back(b);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return worst;
}

}  // namespace flux
