#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "flux/ainf.hpp"
#include "flux/linalg.hpp"

namespace flux {

// thrown by splits() when the coefficient field cannot deliver the square root
struct SqrtUnavailable : std::runtime_error {
    SqrtUnavailable() : std::runtime_error("leading coefficient has no square root in the field") {}
};

// thrown by lift_idempotent when an obstruction survives every allowed adjustment
struct ObstructionNonexact : std::runtime_error {
    explicit ObstructionNonexact(int d)
        : std::runtime_error("idempotent lift obstructed at order " + std::to_string(d)) {}
};

// element of the endomorphism complex of a two-term cone; blk[to][from] holds a
// combination of algebra basis classes running from summand `from` to summand
// `to`. summand 0 is the shifted source, summand 1 the unshifted target
template <class K>
struct ConeElem {
    std::array<std::array<std::map<Bref, K>, 2>, 2> blk{};

    bool is_zero() const {
        for (const auto& row : blk)
            for (const auto& b : row)
                for (const auto& [r, c] : b)
                    if (!scalar_is_zero<K>(c)) return false;
        return true;
    }
};

// accumulate c into b[r]; exact zeros are dropped, truncated zeros kept so the
// precision content of series coefficients survives
template <class K, class C>
void combo_add(std::map<Bref, K>& b, const Bref& r, const C& cin) {
    K c(cin);
    auto exactly_zero = [](const K& x) {
        if constexpr (requires { x.exact(); })
            return x.exact() && scalar_is_zero<K>(x);
        else
            return scalar_is_zero<K>(x);
    };
    if (exactly_zero(c)) return;
    auto it = b.emplace(r, scalar_zero<K>()).first;
    it->second = it->second + c;
    if (exactly_zero(it->second)) b.erase(it);
}

template <class K, class S>
void ce_acc(ConeElem<K>& a, const ConeElem<K>& b, const S& sin) {
    K s(sin);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [r, c] : b.blk[i][j]) combo_add(a.blk[i][j], r, s * c);
}

template <class K>
ConeElem<K> ce_sub(const ConeElem<K>& a, const ConeElem<K>& b) {
    ConeElem<K> out = a;
    ce_acc(out, b, scalar_from_rat<K>(Rat(-1)));
    return out;
}

template <class K>
bool ce_eq(const ConeElem<K>& a, const ConeElem<K>& b) {
    return ce_sub(a, b).is_zero();
}

// column of the hom complex from one of the algebra's objects into the cone;
// col[k] collects the classes landing in summand k
template <class K>
struct ConeColumn {
    std::array<std::map<Bref, K>, 2> col{};

    bool is_zero() const {
        for (const auto& b : col)
            for (const auto& [r, c] : b)
                if (!scalar_is_zero<K>(c)) return false;
        return true;
    }
};

template <class K>
void col_acc(ConeColumn<K>& a, const ConeColumn<K>& b, const K& s) {
    for (int k = 0; k < 2; ++k)
        for (const auto& [r, c] : b.col[k]) combo_add(a.col[k], r, s * c);
}

template <class K>
bool col_eq(const ConeColumn<K>& a, const ConeColumn<K>& b) {
    ConeColumn<K> d = a;
    col_acc(d, b, scalar_from_rat<K>(Rat(-1)));
    return d.is_zero();
}

// two-term cone on a degree-zero morphism v between the algebra's objects,
// with the twisted structure maps of its endomorphism complex assembled
// generically from connecting-map insertions. a chain whose slots switch
// summands T times contributes (-1)^(T(T-1)/2 + s), s = 1 when the chain
// starts at the shifted summand
template <class K>
struct Cone {
    const AinfStructure<K>* st = nullptr;
    std::array<K, 2> v{};
    std::map<Bref, K> delta;  // v as an element of blk[1][0]

    static constexpr int shift[2] = {1, 0};

    Cone() = default;
    Cone(const AinfStructure<K>& s, std::array<K, 2> vv) : st(&s), v(std::move(vv)) {
        combo_add(delta, Bref{1, 0}, v[0]);
        combo_add(delta, Bref{1, 1}, v[1]);
    }

    int entry_degree(int to, int from, const Bref& r) const {
        return st->deg(r) + shift[from] - shift[to];
    }

    // degree of a homogeneous element; nullopt for zero or mixed degrees
    std::optional<int> elem_degree(const ConeElem<K>& x) const {
        std::optional<int> d;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (const auto& [r, c] : x.blk[i][j]) {
                    if (scalar_is_zero<K>(c)) continue;
                    int e = entry_degree(i, j, r);
                    if (d && *d != e) return std::nullopt;
                    d = e;
                }
        return d;
    }

    ConeElem<K> unit() const {
        ConeElem<K> e;
        combo_add(e.blk[0][0], Bref{0, 0}, scalar_from_rat<K>(Rat(-1)));
        combo_add(e.blk[1][1], Bref{0, 1}, scalar_one<K>());
        return e;
    }

    // degree-zero off-diagonal line; t is deg0_line(v)
    ConeElem<K> deg0_line(const std::array<K, 2>& w) const {
        ConeElem<K> x;
        combo_add(x.blk[0][1], Bref{1, 2}, w[0]);
        combo_add(x.blk[0][1], Bref{1, 3}, w[1]);
        return x;
    }
    ConeElem<K> t_elem() const { return deg0_line(v); }

    // degree-one off-diagonal line in the opposite corner
    ConeElem<K> deg1_line(const std::array<K, 2>& w) const {
        ConeElem<K> x;
        combo_add(x.blk[1][0], Bref{1, 0}, w[0]);
        combo_add(x.blk[1][0], Bref{1, 1}, w[1]);
        return x;
    }

    // scale times the standard loop on each diagonal entry
    ConeElem<K> loop_diag(const K& scale) const {
        const QuadraticAlgebra& alg = st->alg;
        ConeElem<K> q;
        for (const auto& [cls, c] : alg.mul_basis(1, 2, 1, 1))
            combo_add(q.blk[0][0], Bref{2, cls}, scale * scalar_from_rat<K>(c));
        for (const auto& [cls, c] : alg.mul_basis(1, 0, 1, 3))
            combo_add(q.blk[1][1], Bref{2, cls}, scale * scalar_from_rat<K>(c));
        return q;
    }

    // a direction w with v[0]*w[1] - v[1]*w[0] = 1, when a coordinate is invertible
    std::optional<std::array<K, 2>> dual_direction() const {
        try {
            if (!scalar_is_zero<K>(v[0]))
                return std::array<K, 2>{scalar_zero<K>(), scalar_one<K>() / v[0]};
            if (!scalar_is_zero<K>(v[1]))
                return std::array<K, 2>{scalar_zero<K>() - scalar_one<K>() / v[1], scalar_zero<K>()};
        } catch (const std::invalid_argument&) {
        }
        return std::nullopt;
    }

    // generic twisted product; args in application order, first-acting first.
    // want_deltas restricts to chains with that many insertions (-1 = all)
    ConeElem<K> mu(const std::vector<const ConeElem<K>*>& args, int want_deltas = -1) const {
        ConeElem<K> out;
        std::vector<Bref> tup;
        walk(args, 0, -1, -1, scalar_one<K>(), 0, 0, 0, want_deltas, tup, out);
        return out;
    }
    ConeElem<K> mu1(const ConeElem<K>& x) const { return mu({&x}); }
    // x1 acts first, matching the bare structure maps
    ConeElem<K> mu2(const ConeElem<K>& x2, const ConeElem<K>& x1) const { return mu({&x1, &x2}); }

    // coefficient in mu2(t, t) = p(v) * unit, read off the unshifted diagonal
    K p_of_v() const {
        ConeElem<K> tt = mu2(t_elem(), t_elem());
        auto it = tt.blk[1][1].find(Bref{0, 1});
        return it == tt.blk[1][1].end() ? scalar_zero<K>() : it->second;
    }

    // ambient structure maps applied to pure tuples of the connecting map;
    // every arity is assembled and the sum returned for the caller to test
    std::map<Bref, K> mc_residual() const {
        std::map<Bref, K> out;
        std::vector<std::pair<Bref, K>> supp(delta.begin(), delta.end());
        if (supp.empty()) return out;
        for (int r = 1; r <= 6; ++r) {
            std::vector<int> idx(r, 0);
            while (true) {
                K coef = scalar_one<K>();
                std::vector<Bref> tup(r);
                for (int i = 0; i < r; ++i) {
                    tup[i] = supp[idx[i]].first;
                    coef = coef * supp[idx[i]].second;
                }
                for (const auto& [cls, c] : st->mu(tup)) combo_add(out, cls, coef * c);
                int i = 0;
                for (; i < r; ++i) {
                    if (++idx[i] < static_cast<int>(supp.size())) break;
                    idx[i] = 0;
                }
                if (i == r) break;
            }
        }
        return out;
    }

    // module-side product: the column acts first, then the listed endomorphisms,
    // with insertions allowed in every later gap
    ConeColumn<K> mu_module(const ConeColumn<K>& a, const std::vector<const ConeElem<K>*>& ps) const {
        ConeColumn<K> out;
        std::vector<Bref> tup;
        for (int k = 0; k < 2; ++k)
            for (const auto& [r, c] : a.col[k]) {
                tup.push_back(r);
                walk_col(ps, 0, k, c, 0, shift[k], tup, out);
                tup.pop_back();
            }
        return out;
    }

  private:
    // g = next argument to consume, cur = current summand (-1 before the first
    // slot), k0 = starting summand; tcross accumulates pairwise products of the
    // summand-switch indicators, tsum their running total
    void walk(const std::vector<const ConeElem<K>*>& args, int g, int cur, int k0, K coef,
              int tcross, int tsum, int nd, int wantd, std::vector<Bref>& tup,
              ConeElem<K>& out) const {
        const int d = static_cast<int>(args.size());
        const int arity = static_cast<int>(tup.size());
        if (g == d && arity >= 2 && arity % 2 == 0 && (wantd < 0 || nd == wantd)) {
            Combo<K> val = st->mu(tup);
            if (!val.empty()) {
                K s = (tcross + (k0 == 0 ? 1 : 0)) % 2 ? scalar_from_rat<K>(Rat(-1))
                                                       : scalar_one<K>();
                for (const auto& [cls, c] : val) combo_add(out.blk[cur][k0], cls, coef * s * c);
            }
        }
        if (arity >= 6) return;
        if (cur <= 0) {
            for (const auto& [r, c] : delta) {
                tup.push_back(r);
                walk(args, g, 1, k0 < 0 ? 0 : k0, coef * c, tcross + tsum, tsum + 1, nd + 1,
                     wantd, tup, out);
                tup.pop_back();
            }
        }
        if (g < d) {
            for (int to = 0; to < 2; ++to)
                for (int from = 0; from < 2; ++from) {
                    if (cur >= 0 && from != cur) continue;
                    int tau = shift[from] ^ shift[to];
                    for (const auto& [r, c] : args[g]->blk[to][from]) {
                        tup.push_back(r);
                        walk(args, g + 1, to, k0 < 0 ? from : k0, coef * c, tcross + tau * tsum,
                             tsum + tau, nd, wantd, tup, out);
                        tup.pop_back();
                    }
                }
        }
    }

    // column variant: the chain is already started at summand cur and the
    // unshifted module source contributes no starting sign
    void walk_col(const std::vector<const ConeElem<K>*>& ps, int g, int cur, K coef, int tcross,
                  int tsum, std::vector<Bref>& tup, ConeColumn<K>& out) const {
        const int d = static_cast<int>(ps.size());
        const int arity = static_cast<int>(tup.size());
        if (g == d && arity >= 2 && arity % 2 == 0) {
            Combo<K> val = st->mu(tup);
            if (!val.empty()) {
                K s = tcross % 2 ? scalar_from_rat<K>(Rat(-1)) : scalar_one<K>();
                for (const auto& [cls, c] : val) combo_add(out.col[cur], cls, coef * s * c);
            }
        }
        if (arity >= 6) return;
        if (cur == 0) {
            for (const auto& [r, c] : delta) {
                tup.push_back(r);
                walk_col(ps, g, 1, coef * c, tcross + tsum, tsum + 1, tup, out);
                tup.pop_back();
            }
        }
        if (g < d) {
            for (int to = 0; to < 2; ++to) {
                int tau = shift[cur] ^ shift[to];
                for (const auto& [r, c] : ps[g]->blk[to][cur]) {
                    tup.push_back(r);
                    walk_col(ps, g + 1, to, coef * c, tcross + tau * tsum, tsum + tau, tup, out);
                    tup.pop_back();
                }
            }
        }
    }
};

// plain path-algebra product of block entries, second factor acting first
template <class K>
std::map<Bref, K> block_mul(const QuadraticAlgebra& alg, const std::map<Bref, K>& a,
                            const std::map<Bref, K>& b) {
    std::map<Bref, K> out;
    for (const auto& [ra, ca] : a)
        for (const auto& [rb, cb] : b)
            for (const auto& [cls, c] : alg.mul_basis(ra.first, ra.second, rb.first, rb.second))
                combo_add(out, Bref{ra.first + rb.first, cls}, ca * cb * scalar_from_rat<K>(c));
    return out;
}

// differential in naive block-matrix form, transcribed independently of the
// generic assembler: (0,0) <- x01.v, (1,0) <- -v.x00 - x11.v, (1,1) <- v.x01
template <class K>
ConeElem<K> blockwise_mu1(const Cone<K>& C, const ConeElem<K>& x) {
    const QuadraticAlgebra& alg = C.st->alg;
    ConeElem<K> out;
    out.blk[0][0] = block_mul(alg, x.blk[0][1], C.delta);
    for (const auto& [r, c] : block_mul(alg, C.delta, x.blk[0][0]))
        combo_add(out.blk[1][0], r, scalar_zero<K>() - c);
    for (const auto& [r, c] : block_mul(alg, x.blk[1][1], C.delta))
        combo_add(out.blk[1][0], r, scalar_zero<K>() - c);
    out.blk[1][1] = block_mul(alg, C.delta, x.blk[0][1]);
    return out;
}

// block-matrix product of the plain compositions, with no internal signs; the
// generic product reproduces it only through a per-block sign dictionary,
// which the tests pin down
template <class K>
ConeElem<K> blockwise_mu2_plain(const Cone<K>& C, const ConeElem<K>& y, const ConeElem<K>& x) {
    const QuadraticAlgebra& alg = C.st->alg;
    ConeElem<K> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (const auto& [r, c] : block_mul(alg, y.blk[i][k], x.blk[k][j]))
                    combo_add(out.blk[i][j], r, c);
    return out;
}

// the order-four correction terms of the product, each placed in the block its
// composition chain lands in (one summand, with x00 on the inside, is typed
// into the lower-left corner rather than the upper-right where the naive
// matrix layout would put it)
template <class K>
ConeElem<K> blockwise_mu2_corrections(const Cone<K>& C, const ConeElem<K>& y, const ConeElem<K>& x) {
    const AinfStructure<K>& st = *C.st;
    auto mu4 = [&](const std::map<Bref, K>& a1, const std::map<Bref, K>& a2,
                   const std::map<Bref, K>& a3, const std::map<Bref, K>& a4) {
        std::map<Bref, K> acc;
        for (const auto& [r1, c1] : a1)
            for (const auto& [r2, c2] : a2)
                for (const auto& [r3, c3] : a3)
                    for (const auto& [r4, c4] : a4)
                        for (const auto& [cls, c] : st.mu({r1, r2, r3, r4}))
                            combo_add(acc, cls, c1 * c2 * c3 * c4 * c);
        return acc;
    };
    const std::map<Bref, K>& v = C.delta;
    ConeElem<K> out;
    for (const auto& [r, c] : mu4(v, x.blk[0][1], v, y.blk[0][1])) combo_add(out.blk[0][0], r, c);
    for (const auto& [r, c] : mu4(v, x.blk[0][1], v, y.blk[1][1])) combo_add(out.blk[1][0], r, c);
    for (const auto& [r, c] : mu4(v, x.blk[1][1], y.blk[0][1], v)) combo_add(out.blk[1][0], r, c);
    for (const auto& [r, c] : mu4(v, x.blk[0][1], y.blk[0][0], v)) combo_add(out.blk[1][0], r, c);
    for (const auto& [r, c] : mu4(x.blk[0][0], v, y.blk[0][1], v)) combo_add(out.blk[1][0], r, c);
    for (const auto& [r, c] : mu4(x.blk[0][1], v, y.blk[0][1], v)) combo_add(out.blk[1][1], r, c);
    return out;
}

// fixed coordinate frame for the eight-dimensional endomorphism complex;
// slots 0..3 have degree zero, slots 4..7 degree one
template <class K>
struct ConeFrame {
    std::array<std::tuple<int, int, Bref>, 8> slot;
    std::map<std::tuple<int, int, Bref>, int> index;

    static ConeFrame build(const QuadraticAlgebra& alg) {
        int q0 = -1, q1 = -1;
        for (int i = 0; i < alg.dim(2); ++i) (alg.basis_tgt(2, i) == 0 ? q0 : q1) = i;
        ConeFrame f;
        f.slot[0] = {0, 0, Bref{0, 0}};
        f.slot[1] = {1, 1, Bref{0, 1}};
        f.slot[2] = {0, 1, Bref{1, 2}};
        f.slot[3] = {0, 1, Bref{1, 3}};
        f.slot[4] = {0, 0, Bref{2, q0}};
        f.slot[5] = {1, 1, Bref{2, q1}};
        f.slot[6] = {1, 0, Bref{1, 0}};
        f.slot[7] = {1, 0, Bref{1, 1}};
        for (int i = 0; i < 8; ++i) f.index.emplace(f.slot[i], i);
        return f;
    }

    std::vector<K> coords(const ConeElem<K>& x) const {
        std::vector<K> c(8, scalar_zero<K>());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (const auto& [r, cf] : x.blk[i][j]) {
                    auto it = index.find({i, j, r});
                    if (it == index.end()) throw std::logic_error("entry outside the cone frame");
                    c[it->second] = c[it->second] + cf;
                }
        return c;
    }

    ConeElem<K> elem(const std::vector<K>& c) const {
        ConeElem<K> x;
        for (int i = 0; i < 8 && i < static_cast<int>(c.size()); ++i) {
            const auto& [to, from, r] = slot[i];
            combo_add(x.blk[to][from], r, c[i]);
        }
        return x;
    }
};

// differential of the endomorphism complex as a 4x4 matrix from the degree-zero
// to the degree-one slots of the frame
template <class K>
Mat<K> endo_differential(const Cone<K>& C, const ConeFrame<K>& frame) {
    Mat<K> d = mat_zero(4, 4, scalar_zero<K>());
    for (int j = 0; j < 4; ++j) {
        const auto& [to, from, r] = frame.slot[j];
        ConeElem<K> x;
        combo_add(x.blk[to][from], r, scalar_one<K>());
        std::vector<K> c = frame.coords(C.mu1(x));
        for (int i = 0; i < 4; ++i) {
            if (!scalar_is_zero<K>(c[i])) throw std::logic_error("differential produced degree zero");
            d[i][j] = c[4 + i];
        }
    }
    return d;
}

// cohomology of the endomorphism complex with representatives and the full
// table of products between them. when the canonical flag is set the bases are
// {unit, t} in degree zero and {diagonal loop pair, complementary line} in
// degree one, so [t]^2 = p_value * [unit] presents the degree-zero ring
template <class K>
struct EndoRing {
    ConeFrame<K> frame;
    Mat<K> d;
    std::vector<ConeElem<K>> h0_reps, h1_reps;
    bool canonical = false;
    K p_value = scalar_zero<K>();
    // prod00[i][j] = class coordinates of (rep i after rep j); likewise for the
    // mixed tables, whose second factor acts first
    std::vector<std::vector<std::vector<K>>> prod00, prod01, prod10;
    bool degree_one_products_vanish = true;

    std::vector<K> deg0_part(const ConeElem<K>& x) const {
        std::vector<K> c = frame.coords(x);
        return {c[0], c[1], c[2], c[3]};
    }
    std::vector<K> deg1_part(const ConeElem<K>& x) const {
        std::vector<K> c = frame.coords(x);
        return {c[4], c[5], c[6], c[7]};
    }

    // class coordinates of a degree-zero cocycle in the h0 representatives
    std::optional<std::vector<K>> h0_class(const ConeElem<K>& x) const {
        Mat<K> a = mat_zero(4, h0_reps.size(), scalar_zero<K>());
        for (size_t j = 0; j < h0_reps.size(); ++j) {
            std::vector<K> c = deg0_part(h0_reps[j]);
            for (int i = 0; i < 4; ++i) a[i][j] = c[i];
        }
        return mat_solve(a, deg0_part(x));
    }

    // class coordinates of a degree-one element modulo coboundaries
    std::optional<std::vector<K>> h1_class(const ConeElem<K>& x) const {
        size_t n = h1_reps.size();
        Mat<K> a = mat_zero(4, 4 + n, scalar_zero<K>());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a[i][j] = d[i][j];
        for (size_t j = 0; j < n; ++j) {
            std::vector<K> c = deg1_part(h1_reps[j]);
            for (int i = 0; i < 4; ++i) a[i][4 + j] = c[i];
        }
        auto sol = mat_solve(a, deg1_part(x));
        if (!sol) return std::nullopt;
        return std::vector<K>(sol->begin() + 4, sol->end());
    }

    bool is_coboundary(const ConeElem<K>& x) const {
        auto cls = h1_class(x);
        if (!cls) return false;
        for (const K& c : *cls)
            if (!scalar_is_zero<K>(c)) return false;
        return true;
    }

    bool same_class(const ConeElem<K>& a, const ConeElem<K>& b) const {
        return is_coboundary(ce_sub(a, b));
    }
};

template <class K>
EndoRing<K> cone_endo_ring(const Cone<K>& C) {
    EndoRing<K> R;
    R.frame = ConeFrame<K>::build(C.st->alg);
    R.d = endo_differential(C, R.frame);
    R.p_value = C.p_of_v();

    // canonical representatives when v spans a direction with an invertible
    // coordinate; otherwise fall back to raw kernel/cokernel picks
    auto dual = C.dual_direction();
    if (dual) {
        ConeElem<K> e = C.unit(), t = C.t_elem();
        ConeElem<K> q = C.loop_diag(scalar_one<K>());
        ConeElem<K> u = C.deg1_line(*dual);
        Mat<K> probe = mat_zero(4, 6, scalar_zero<K>());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) probe[i][j] = R.d[i][j];
        std::vector<K> qc = R.deg1_part(q), uc = R.deg1_part(u);
        for (int i = 0; i < 4; ++i) {
            probe[i][4] = qc[i];
            probe[i][5] = uc[i];
        }
        bool closed = true;
        for (const K& c : R.deg1_part(C.mu1(e)))
            if (!scalar_is_zero<K>(c)) closed = false;
        for (const K& c : R.deg1_part(C.mu1(t)))
            if (!scalar_is_zero<K>(c)) closed = false;
        if (closed && mat_rank(R.d) == 2 && mat_rank(probe) == 4) {
            R.canonical = true;
            R.h0_reps = {e, t};
            R.h1_reps = {q, u};
        }
    }
    if (!R.canonical) {
        for (const auto& k : mat_kernel(R.d)) {
            std::vector<K> full(8, scalar_zero<K>());
            for (int i = 0; i < 4; ++i) full[i] = k[i];
            R.h0_reps.push_back(R.frame.elem(full));
        }
        // greedily extend the image columns to a full basis; the extra unit
        // vectors represent the cokernel
        Mat<K> cols = mat_zero(4, 0, scalar_zero<K>());
        auto add_col = [&](const std::vector<K>& c) {
            for (int i = 0; i < 4; ++i) cols[i].push_back(c[i]);
        };
        for (int j = 0; j < 4; ++j) {
            std::vector<K> c(4);
            for (int i = 0; i < 4; ++i) c[i] = R.d[i][j];
            add_col(c);
        }
        size_t rk = mat_rank(cols);
        for (int j = 0; j < 4 && rk < 4; ++j) {
            std::vector<K> c(4, scalar_zero<K>());
            c[j] = scalar_one<K>();
            add_col(c);
            size_t rk2 = mat_rank(cols);
            if (rk2 > rk) {
                rk = rk2;
                std::vector<K> full(8, scalar_zero<K>());
                full[4 + j] = scalar_one<K>();
                R.h1_reps.push_back(R.frame.elem(full));
            } else {
                for (int i = 0; i < 4; ++i) cols[i].pop_back();
            }
        }
    }

    auto classify0 = [&](const ConeElem<K>& x) {
        auto c = R.h0_class(x);
        if (!c) throw std::logic_error("degree-zero product escaped the cocycle span");
        return *c;
    };
    auto classify1 = [&](const ConeElem<K>& x) {
        auto c = R.h1_class(x);
        if (!c) throw std::logic_error("degree-one product escaped the complex");
        return *c;
    };
    size_t n0 = R.h0_reps.size(), n1 = R.h1_reps.size();
    R.prod00.assign(n0, std::vector<std::vector<K>>(n0));
    R.prod01.assign(n0, std::vector<std::vector<K>>(n1));
    R.prod10.assign(n1, std::vector<std::vector<K>>(n0));
    for (size_t i = 0; i < n0; ++i)
        for (size_t j = 0; j < n0; ++j)
            R.prod00[i][j] = classify0(C.mu2(R.h0_reps[i], R.h0_reps[j]));
    for (size_t i = 0; i < n0; ++i)
        for (size_t j = 0; j < n1; ++j)
            R.prod01[i][j] = classify1(C.mu2(R.h0_reps[i], R.h1_reps[j]));
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < n0; ++j)
            R.prod10[i][j] = classify1(C.mu2(R.h1_reps[i], R.h0_reps[j]));
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < n1; ++j)
            if (!C.mu2(R.h1_reps[i], R.h1_reps[j]).is_zero())
                R.degree_one_products_vanish = false;
    return R;
}

template <class K>
std::optional<K> scalar_sqrt(const K& a) {
    if constexpr (requires { a.sqrt(); })
        return a.sqrt();
    else
        return FieldOps<K>::sqrt(a);
}

template <class K>
struct SplitInfo {
    bool split = false;
    K root = scalar_zero<K>();   // square root of the diagonal product coefficient
    ConeElem<K> idempotent;      // (unit + root^{-1} t) / 2
};

// the cone decomposes exactly when the product coefficient is invertible; the
// complementary idempotent is obtained by flipping the sign of the root
template <class K>
SplitInfo<K> splits(const Cone<K>& C) {
    SplitInfo<K> out;
    K p = C.p_of_v();
    if (scalar_is_zero<K>(p)) return out;
    auto root = scalar_sqrt<K>(p);
    if (!root) throw SqrtUnavailable();
    out.split = true;
    out.root = *root;
    K half = scalar_from_rat<K>(Rat(1, 2));
    out.idempotent = ConeElem<K>{};
    ce_acc(out.idempotent, C.unit(), half);
    ce_acc(out.idempotent, C.t_elem(), half / *root);
    return out;
}

// left-hand side of the lifting equation at order d, minus its right-hand
// side, with the order-d unknown left out: compositions of the existing lifts
// across all arities, less the previous lift at even orders
template <class K>
ConeElem<K> lift_obstruction(const Cone<K>& C, const std::vector<ConeElem<K>>& lifts, int d) {
    ConeElem<K> obst;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            if (parts.size() < 2) return;
            std::vector<const ConeElem<K>*> args;
            for (int k : parts) args.push_back(&lifts[k - 1]);
            ce_acc(obst, C.mu(args), scalar_one<K>());
            return;
        }
        for (int k = 1; k <= rest; ++k) {
            if (k > static_cast<int>(lifts.size())) break;
            parts.push_back(k);
            self(self, rest - k);
            parts.pop_back();
        }
    };
    rec(rec, d);
    if (d % 2 == 0) ce_acc(obst, lifts[d - 2], scalar_from_rat<K>(Rat(-1)));
    return obst;
}

// the degree-preserving operators an obstruction class is measured against;
// the even-order variant keeps the argument itself
template <class K>
ConeElem<K> periodic_op(const Cone<K>& C, const ConeElem<K>& p1, const ConeElem<K>& a, int deg_a,
                        bool with_identity) {
    ConeElem<K> out;
    K sgn = (deg_a + (with_identity ? 1 : 0)) % 2 ? scalar_from_rat<K>(Rat(-1)) : scalar_one<K>();
    ce_acc(out, C.mu2(p1, a), sgn);
    ce_acc(out, C.mu2(a, p1), scalar_from_rat<K>(Rat(-1)));
    if (with_identity) ce_acc(out, a, scalar_one<K>());
    return out;
}

// lift a strict or cohomological idempotent through the stated order. the
// complex is concentrated in degrees {0,1}, so every higher lift is the zero
// element and each order reduces to a consistency check; at order two the
// seed may be corrected by a cocycle, which enters the equation linearly
template <class K>
std::vector<ConeElem<K>> lift_idempotent(const Cone<K>& C, const ConeElem<K>& p1, int order) {
    if (!C.mu1(p1).is_zero()) throw std::invalid_argument("lift seed is not closed");
    ConeFrame<K> frame = ConeFrame<K>::build(C.st->alg);
    Mat<K> d = endo_differential(C, frame);
    std::vector<ConeElem<K>> lifts{p1};
    for (int ord = 2; ord <= order; ++ord) {
        ConeElem<K> obst = lift_obstruction(C, lifts, ord);
        if (obst.is_zero()) {
            lifts.push_back(ConeElem<K>{});
            continue;
        }
        if (ord != 2) throw ObstructionNonexact(ord);
        Mat<K> kernel = mat_kernel(d);
        for (int pass = 0; pass < 4 && !obst.is_zero(); ++pass) {
            std::vector<ConeElem<K>> cocycles;
            for (const auto& k : kernel) {
                std::vector<K> full(8, scalar_zero<K>());
                for (int i = 0; i < 4; ++i) full[i] = k[i];
                cocycles.push_back(frame.elem(full));
            }
            if (cocycles.empty()) throw ObstructionNonexact(ord);
            Mat<K> m = mat_zero(4, cocycles.size(), scalar_zero<K>());
            for (size_t j = 0; j < cocycles.size(); ++j) {
                ConeElem<K> col = periodic_op(C, lifts[0], cocycles[j], 0, true);
                std::vector<K> cc = frame.coords(col);
                for (int i = 0; i < 4; ++i) m[i][j] = cc[i];
            }
            std::vector<K> rhs = frame.coords(obst);
            auto sol = mat_solve(m, std::vector<K>(rhs.begin(), rhs.begin() + 4));
            if (!sol) throw ObstructionNonexact(ord);
            for (size_t j = 0; j < cocycles.size(); ++j)
                ce_acc(lifts[0], cocycles[j], (*sol)[j]);
            obst = lift_obstruction(C, lifts, ord);
        }
        if (!obst.is_zero()) throw ObstructionNonexact(ord);
        lifts.push_back(ConeElem<K>{});
    }
    return lifts;
}

// element of the q-adic module built on a column: a finite sum of columns
// weighted by powers of the formal variable
template <class K>
struct QModuleElem {
    int src = 0;
    std::map<int, ConeColumn<K>> terms;

    bool is_zero() const {
        for (const auto& [j, c] : terms)
            if (!c.is_zero()) return false;
        return true;
    }
};

template <class K>
bool qm_eq(const QModuleElem<K>& a, const QModuleElem<K>& b) {
    std::map<int, ConeColumn<K>> d = a.terms;
    for (const auto& [j, c] : b.terms) col_acc(d[j], c, scalar_from_rat<K>(Rat(-1)));
    for (const auto& [j, c] : d)
        if (!c.is_zero()) return false;
    return true;
}

// differential of the q-adic module attached to a lifted idempotent: each
// power spends part of its budget on compositions with the lifts, and odd
// powers additionally shift down by one
template <class K>
QModuleElem<K> yoneda_summand_differential(const Cone<K>& C, const std::vector<ConeElem<K>>& lifts,
                                           const QModuleElem<K>& a, int q_order) {
    QModuleElem<K> out;
    out.src = a.src;
    K one = scalar_one<K>();
    for (const auto& [j, col] : a.terms) {
        if (j > q_order || col.is_zero()) continue;
        // insertion terms carry (-1)^{j + parity of the entry}; without that
        // Koszul factor the square of the differential picks up cross terms
        ConeColumn<K> par[2];
        for (int k = 0; k < 2; ++k)
            for (const auto& [r, c] : col.col[k])
                combo_add(par[(C.st->deg(r) + Cone<K>::shift[k]) % 2].col[k], r, c);
        for (int pi = 0; pi < 2; ++pi) {
            if (par[pi].is_zero()) continue;
            K sg = (j + pi) % 2 ? scalar_zero<K>() - one : one;
            std::vector<int> parts;
            auto rec = [&](auto&& self, int budget) -> void {
                int spent = 0;
                for (int k : parts) spent += k;
                std::vector<const ConeElem<K>*> ps;
                for (int k : parts) ps.push_back(&lifts[k - 1]);
                col_acc(out.terms[j - spent], C.mu_module(par[pi], ps), sg);
                for (int k = 1; k <= budget; ++k) {
                    if (k > static_cast<int>(lifts.size())) break;
                    parts.push_back(k);
                    self(self, budget - k);
                    parts.pop_back();
                }
            };
            rec(rec, j);
        }
        if (j % 2 == 1) col_acc(out.terms[j - 1], col, one);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

// twisted matrix of a first-order deformation datum: a weight-two combination
// per object and a linear action on the arrow coordinates
template <class K>
ConeElem<K> gamma_tw(const Cone<K>& C, const std::array<std::map<Bref, K>, 2>& g0,
                     const std::array<std::array<K, 2>, 2>& g1) {
    ConeElem<K> out;
    for (const auto& [r, c] : g0[0]) combo_add(out.blk[0][0], r, scalar_zero<K>() - c);
    for (const auto& [r, c] : g0[1]) combo_add(out.blk[1][1], r, c);
    for (int b = 0; b < 2; ++b) {
        K val = g1[b][0] * C.v[0] + g1[b][1] * C.v[1];
        combo_add(out.blk[1][0], Bref{1, b}, scalar_zero<K>() - val);
    }
    return out;
}

}  // namespace flux
