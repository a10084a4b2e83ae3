#include "flux/hochschild.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace flux {

KoszulHochschild::KoszulHochschild(QuadraticAlgebra a)
    : alg_(std::move(a)), dual_(quadratic_dual(alg_)) {
    top_ = -1;
    for (int n = 1; n <= 64; ++n)
        if (alg_.dim(n) == 0) {
            top_ = n - 1;
            break;
        }
    maxdeg_ = 0;
    for (const auto& w : alg_.arrows()) maxdeg_ = std::max(maxdeg_, w.deg);
    if (top_ < 0)
        for (const auto& w : alg_.arrows())
            if (w.deg < 1)
                throw std::invalid_argument(
                    "per-bidegree chains need a finite-dimensional algebra or positive "
                    "arrow degrees");
}

const std::vector<KoszulHochschild::Chain>& KoszulHochschild::chains(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = chains_.find(key);
    if (it != chains_.end()) return it->second;
    std::vector<Chain> out;
    if (i >= 0) {
        // positive arrow degrees bound the weight of a class by its degree
        int lmax = top_ >= 0 ? top_ : std::max(0, j + i * maxdeg_);
        for (int l = 0; l <= lmax; ++l)
            for (int y = 0; y < alg_.dim(l); ++y)
                for (int b = 0; b < dual_.dim(i); ++b) {
                    if (dual_.basis_src(i, b) != alg_.basis_tgt(l, y)) continue;
                    if (dual_.basis_tgt(i, b) != alg_.basis_src(l, y)) continue;
                    if (dual_.basis_deg(i, b) + alg_.basis_deg(l, y) != i + j) continue;
                    out.push_back({b, l, y});
                }
    }
    return chains_.emplace(key, std::move(out)).first->second;
}

int KoszulHochschild::chain_dim(int i, int j) { return static_cast<int>(chains(i, j).size()); }

size_t KoszulHochschild::rank_out(int i, int j) {
    if (i < 0) return 0;
    auto key = std::make_pair(i, j);
    auto it = ranks_.find(key);
    if (it != ranks_.end()) return it->second;

    const auto& from = chains(i, j);
    const auto& to = chains(i + 1, j);
    size_t rk = 0;
    if (!from.empty() && !to.empty()) {
        std::map<std::array<int, 3>, size_t> pos;
        for (size_t t = 0; t < to.size(); ++t)
            pos[{to[t].b, to[t].l, to[t].y}] = t;
        Mat<Rat> m = mat_zero(to.size(), from.size(), Rat(0));
        const auto& arrows = alg_.arrows();
        for (size_t col = 0; col < from.size(); ++col) {
            int b = from[col].b, l = from[col].l, y = from[col].y;
            int degx = alg_.basis_deg(l, y);
            int degb = dual_.basis_deg(i, b);
            Rat s1 = (((degx % 2) + 2) % 2) ? Rat(-1) : Rat(1);
            for (int r = 0; r < static_cast<int>(arrows.size()); ++r) {
                // append the arrow on the dual side while it enters the
                // algebra side from the left
                for (const auto& [b2, cb] : dual_.mul_basis(i, b, 1, r))
                    for (const auto& [y2, cy] : alg_.mul_basis(1, r, l, y)) {
                        auto pit = pos.find({b2, l + 1, y2});
                        if (pit == pos.end()) throw std::logic_error("transport chain missing");
                        m[pit->second][col] += s1 * cb * cy;
                    }
                // and the mirrored insertion, weighted by both total parities
                int e = (arrows[r].deg + 1) * (degx + degb);
                Rat s2 = (((e % 2) + 2) % 2) ? Rat(1) : Rat(-1);
                for (const auto& [b2, cb] : dual_.mul_basis(1, r, i, b))
                    for (const auto& [y2, cy] : alg_.mul_basis(l, y, 1, r)) {
                        auto pit = pos.find({b2, l + 1, y2});
                        if (pit == pos.end()) throw std::logic_error("transport chain missing");
                        m[pit->second][col] += s2 * cb * cy;
                    }
            }
        }
        rk = mat_rank(std::move(m));
    }
    ranks_.emplace(key, rk);
    return rk;
}

int KoszulHochschild::dim(int i, int j) {
    return chain_dim(i, j) - static_cast<int>(rank_out(i, j)) -
           static_cast<int>(rank_out(i - 1, j));
}

std::map<std::pair<int, int>, int> KoszulHochschild::table(int imax, int jmin, int jmax) {
    std::map<std::pair<int, int>, int> out;
    for (int i = 0; i <= imax; ++i)
        for (int j = jmin; j <= jmax; ++j) {
            int d = dim(i, j);
            if (d != 0) out[{i, j}] = d;
        }
    return out;
}

int hh_koszul(const QuadraticAlgebra& a, int i, int j) {
    KoszulHochschild h(a);
    return h.dim(i, j);
}

D3Report d3_rank(const std::array<Nov, 5>& p) {
    // rows index the monomials v1^(4-k) v2^k; columns the four fields
    // v1 d/dv1, v1 d/dv2, v2 d/dv1, v2 d/dv2
    Mat<Nov> m = mat_zero(5, 4, Nov::zero());
    for (int k = 0; k <= 4; ++k) {
        m[k][0] = Nov::from_rat(Rat(4 - k)) * p[k];
        if (k <= 3) m[k][1] = Nov::from_rat(Rat(k + 1)) * p[k + 1];
        if (k >= 1) m[k][2] = Nov::from_rat(Rat(5 - k)) * p[k - 1];
        m[k][3] = Nov::from_rat(Rat(k)) * p[k];
    }
    size_t rank = mat_rank(std::move(m));
    return {rank, 6 - static_cast<int>(rank)};
}

}  // namespace flux
