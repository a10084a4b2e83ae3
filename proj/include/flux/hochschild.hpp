#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flux/ainf.hpp"
#include "flux/linalg.hpp"
#include "flux/novikov.hpp"
#include "flux/quiver.hpp"

namespace flux {

// raised when a length-truncated cohomology answer could still move
struct TruncationUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bigraded Hochschild cohomology of a Koszul algebra from the small complex
// pairing dual classes with algebra classes; a chain at (i, j) is a weight-i
// dual class and an algebra class forming a loop (each one's source is the
// other's target) whose degrees sum to i + j, and the differential transports
// one arrow, growing both sides by a single letter
class KoszulHochschild {
public:
    explicit KoszulHochschild(QuadraticAlgebra a);

    const QuadraticAlgebra& algebra() const { return alg_; }
    const QuadraticAlgebra& dual_algebra() const { return dual_; }

    int chain_dim(int i, int j);
    int dim(int i, int j);
    // nonzero entries in the window i <= imax, jmin <= j <= jmax
    std::map<std::pair<int, int>, int> table(int imax, int jmin, int jmax);

private:
    struct Chain {
        int b;  // dual class index at weight i
        int l;  // algebra weight
        int y;  // algebra class index at weight l
    };

    const std::vector<Chain>& chains(int i, int j);
    size_t rank_out(int i, int j);

    QuadraticAlgebra alg_;
    QuadraticAlgebra dual_;
    int top_;     // largest nonzero algebra weight, -1 when weights never die out
    int maxdeg_;  // largest arrow degree, bounds the weight search otherwise
    std::map<std::pair<int, int>, std::vector<Chain>> chains_;
    std::map<std::pair<int, int>, size_t> ranks_;
};

int hh_koszul(const QuadraticAlgebra& a, int i, int j);

// reduced bar-type Hochschild complex of a product structure, bigraded by
// cochain length s and internal degree j; the differential splits by the
// length it adds: binary products contribute the length-1 part, stored
// arity-4 products the length-3 part
template <class K>
class DirectHochschild {
public:
    // a basis cochain is the functional singling out one composable tuple of
    // non-unit classes, valued in one class compatible with its endpoints
    struct Cochain {
        std::vector<Bref> in;  // application order
        Bref val;
    };

    explicit DirectHochschild(AinfStructure<K> s) : st_(std::move(s)) {
        top_ = -1;
        for (int n = 1; n <= 64; ++n)
            if (st_.alg.dim(n) == 0) {
                top_ = n - 1;
                break;
            }
        if (top_ < 0)
            throw std::invalid_argument("direct complex needs a finite-dimensional algebra");
        for (int n = 1; n <= top_; ++n)
            for (int y = 0; y < st_.alg.dim(n); ++y) classes_.push_back({n, y});
        for (const auto& [d, prods] : st_.higher) {
            if (prods.empty()) continue;
            has_higher_ = true;
            // odd arities would add even lengths, where the page-two
            // correction is not implemented
            if (d % 2) throw std::invalid_argument("only even-arity products are supported");
        }
        for (const auto& x : classes_)
            for (const auto& y : classes_)
                for (const auto& [c, coeff] : st_.mu2(y, x))  // x acts first
                    comu2_[c].push_back({x, y, coeff});
        if (auto it = st_.higher.find(4); it != st_.higher.end())
            for (const auto& [key, combo] : it->second)
                for (const auto& [c, coeff] : combo)
                    if (c.first > 0) comu4_[c].push_back({key, coeff});
    }

    const AinfStructure<K>& structure() const { return st_; }

    int chain_dim(int s, int j) { return static_cast<int>(chains(s, j).size()); }

    // matrix of the length-r differential piece out of (s, j); rows index the
    // target basis at (s + r, j + 1 - r)
    Mat<K> d_matrix(int s, int j, int r) {
        const auto& from = chains(s, j);
        const auto& to = chains(s + r, j + 1 - r);
        Mat<K> m = mat_zero(to.size(), from.size(), scalar_zero<K>());
        if (from.empty() || to.empty()) return m;
        if (r == 3 && !has_higher_) return m;

        std::map<std::pair<std::vector<Bref>, Bref>, size_t> pos;
        for (size_t t = 0; t < to.size(); ++t) pos[{to[t].in, to[t].val}] = t;
        auto add = [&](const std::vector<Bref>& in, Bref val, int sgn, const K& coeff,
                       size_t col) {
            auto it = pos.find({in, val});
            if (it == pos.end()) throw std::logic_error("cochain closure violated");
            K term = coeff;
            if (sgn) term = scalar_zero<K>() - term;
            m[it->second][col] = m[it->second][col] + term;
        };

        for (size_t col = 0; col < from.size(); ++col) {
            const auto& g = from[col];
            int gdeg = j + s;  // cochain degree: internal plus arity

            // the inserted product consumes the cochain value together with
            // r extras split around it
            for (int nb = 0; nb <= r; ++nb)
                for_tuples(nb, [&](const std::vector<Bref>& below, int degb) {
                    if (s > 0 && nb > 0 && st_.tgt(below.back()) != st_.src(g.in.front()))
                        return;
                    for_tuples(r - nb, [&](const std::vector<Bref>& above, int) {
                        if (s > 0 && !above.empty() &&
                            st_.src(above.front()) != st_.tgt(g.in.back()))
                            return;
                        std::vector<Bref> args = below;
                        args.push_back(g.val);
                        args.insert(args.end(), above.begin(), above.end());
                        auto value = st_.mu(args);
                        if (value.empty()) return;
                        std::vector<Bref> tup = below;
                        tup.insert(tup.end(), g.in.begin(), g.in.end());
                        tup.insert(tup.end(), above.begin(), above.end());
                        int e = (gdeg + 1) * (degb + nb);
                        for (const auto& [c, coeff] : value)
                            add(tup, c, parity(e), coeff, col);
                    });
                });

            // one cochain input splits back into the product's arguments
            for (size_t p = 0; p < g.in.size(); ++p) {
                int degbelow = 0;
                for (size_t k = 0; k < p; ++k) degbelow += st_.deg(g.in[k]);
                int e = gdeg + degbelow + static_cast<int>(p);
                if (r == 1) {
                    auto it = comu2_.find(g.in[p]);
                    if (it == comu2_.end()) continue;
                    for (const auto& [x, y, coeff] : it->second) {
                        std::vector<Bref> tup(g.in.begin(), g.in.begin() + p);
                        tup.push_back(x);
                        tup.push_back(y);
                        tup.insert(tup.end(), g.in.begin() + p + 1, g.in.end());
                        add(tup, g.val, parity(e), coeff, col);
                    }
                } else {
                    auto it = comu4_.find(g.in[p]);
                    if (it == comu4_.end()) continue;
                    for (const auto& [key, coeff] : it->second) {
                        std::vector<Bref> tup(g.in.begin(), g.in.begin() + p);
                        tup.insert(tup.end(), key.begin(), key.end());
                        tup.insert(tup.end(), g.in.begin() + p + 1, g.in.end());
                        add(tup, g.val, parity(e), coeff, col);
                    }
                }
            }
        }
        return m;
    }

    // cohomology of the length-1 piece at one bidegree; for a strict
    // structure the whole differential has length 1, so this is exact
    int slice_dim(int s, int j) {
        return chain_dim(s, j) - static_cast<int>(rank1(s, j)) -
               static_cast<int>(s > 0 ? rank1(s - 1, j) : 0);
    }

    // slice after the induced length-3 correction acting on length-1 classes
    int corrected_dim(int s, int j) {
        if (!has_higher_) return slice_dim(s, j);
        return slice_dim(s, j) - induced_rank(s, j) -
               (s >= 3 ? induced_rank(s - 3, j + 2) : 0);
    }

    // total cohomology in one degree, truncated at length D: sums corrected
    // slices for s <= D; the next `window` slices must vanish, and no two
    // live slices may sit at a gap a longer differential could bridge
    int total_dim(int d, int D, int window = 2) {
        if (D < 0 || window < 1) throw std::invalid_argument("bad truncation bounds");
        std::vector<int> dims;
        for (int s = 0; s <= D + window; ++s) dims.push_back(corrected_dim(s, d - s));
        for (int s = D + 1; s <= D + window; ++s)
            if (dims[s] != 0)
                throw TruncationUnstable("classes persist at length " + std::to_string(s) +
                                         ", beyond the requested bound " + std::to_string(D));
        if (has_higher_)
            for (int a = 0; a <= D + window; ++a)
                for (int b = a + 4; b <= D + window; ++b)
                    if (dims[a] != 0 && dims[b] != 0)
                        throw TruncationUnstable(
                            "live classes at lengths " + std::to_string(a) + " and " +
                            std::to_string(b) + " admit an uncorrected interaction");
        int sum = 0;
        for (int s = 0; s <= D; ++s) sum += dims[s];
        return sum;
    }

private:
    static int parity(int x) { return ((x % 2) + 2) % 2; }

    const std::vector<Cochain>& chains(int s, int j) {
        auto key = std::make_pair(s, j);
        auto it = chains_.find(key);
        if (it != chains_.end()) return it->second;
        std::vector<Cochain> out;
        if (s >= 0) {
            std::vector<Bref> vals;
            for (int v = 0; v < st_.alg.dim(0); ++v) vals.push_back({0, v});
            vals.insert(vals.end(), classes_.begin(), classes_.end());
            if (s == 0) {
                for (const auto& v : vals)
                    if (st_.src(v) == st_.tgt(v) && st_.deg(v) == j) out.push_back({{}, v});
            } else {
                std::vector<Bref> cur;
                std::function<void(int, int)> rec = [&](int k, int degsum) {
                    if (k == s) {
                        for (const auto& v : vals) {
                            if (st_.src(v) != st_.src(cur.front())) continue;
                            if (st_.tgt(v) != st_.tgt(cur.back())) continue;
                            if (st_.deg(v) - degsum != j) continue;
                            out.push_back({cur, v});
                        }
                        return;
                    }
                    for (const auto& c : classes_) {
                        if (k > 0 && st_.src(c) != st_.tgt(cur.back())) continue;
                        cur.push_back(c);
                        rec(k + 1, degsum + st_.deg(c));
                        cur.pop_back();
                    }
                };
                rec(0, 0);
            }
        }
        return chains_.emplace(key, std::move(out)).first->second;
    }

    // composable tuples of non-unit classes of a given length
    void for_tuples(int len, const std::function<void(const std::vector<Bref>&, int)>& fn) {
        std::vector<Bref> cur;
        std::function<void(int, int)> rec = [&](int k, int degsum) {
            if (k == len) {
                fn(cur, degsum);
                return;
            }
            for (const auto& c : classes_) {
                if (k > 0 && st_.src(c) != st_.tgt(cur.back())) continue;
                cur.push_back(c);
                rec(k + 1, degsum + st_.deg(c));
                cur.pop_back();
            }
        };
        rec(0, 0);
    }

    size_t rank1(int s, int j) {
        auto key = std::make_pair(s, j);
        auto it = ranks_.find(key);
        if (it != ranks_.end()) return it->second;
        size_t rk = mat_rank(d_matrix(s, j, 1));
        ranks_[key] = rk;
        return rk;
    }

    // rank of the length-3 piece on length-1 cohomology: the span of its
    // values on cycles is measured against the target's boundary space
    int induced_rank(int s, int j) {
        auto key = std::make_pair(s, j);
        auto it = ind_.find(key);
        if (it != ind_.end()) return it->second;
        int rk = 0;
        size_t ncols = chains(s, j).size();
        size_t nrows = chains(s + 3, j - 2).size();
        if (ncols > 0 && nrows > 0) {
            Mat<K> z;
            {
                Mat<K> d1 = d_matrix(s, j, 1);
                if (d1.empty()) {
                    z = mat_zero(ncols, ncols, scalar_zero<K>());
                    for (size_t i = 0; i < ncols; ++i) z[i][i] = scalar_one<K>();
                } else {
                    z = mat_kernel(std::move(d1));
                }
            }
            if (!z.empty()) {
                Mat<K> d3 = d_matrix(s, j, 3);
                Mat<K> bnd = d_matrix(s + 2, j - 2, 1);
                size_t bcols = chains(s + 2, j - 2).size();
                Mat<K> m = mat_zero(nrows, z.size() + bcols, scalar_zero<K>());
                for (size_t zc = 0; zc < z.size(); ++zc)
                    for (size_t t = 0; t < nrows; ++t) {
                        K acc = scalar_zero<K>();
                        for (size_t c = 0; c < ncols; ++c) acc = acc + d3[t][c] * z[zc][c];
                        m[t][zc] = acc;
                    }
                if (!bnd.empty())
                    for (size_t c = 0; c < bcols; ++c)
                        for (size_t t = 0; t < nrows; ++t) m[t][z.size() + c] = bnd[t][c];
                rk = static_cast<int>(mat_rank(std::move(m)) - mat_rank(std::move(bnd)));
            }
        }
        ind_[key] = rk;
        return rk;
    }

    AinfStructure<K> st_;
    int top_ = -1;
    bool has_higher_ = false;
    std::vector<Bref> classes_;
    std::map<Bref, std::vector<std::tuple<Bref, Bref, K>>> comu2_;
    std::map<Bref, std::vector<std::pair<std::vector<Bref>, K>>> comu4_;
    std::map<std::pair<int, int>, std::vector<Cochain>> chains_;
    std::map<std::pair<int, int>, size_t> ranks_;
    std::map<std::pair<int, int>, int> ind_;
};

struct D3Report {
    size_t rank;
    int hh1_dim;
};

// rank of the degree-one page-three differential for the deformation with
// symmetrized quartic p = sum_k p[k] v1^(4-k) v2^k: weight-zero vector
// fields act by Lie derivative, landing in the five quartic monomials
D3Report d3_rank(const std::array<Nov, 5>& p);

}  // namespace flux
