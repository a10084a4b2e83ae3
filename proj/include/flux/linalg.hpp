#pragma once

#include <vector>

#include "flux/novikov.hpp"

namespace flux {

// pivot usability and preference; exact fields take the first nonzero entry,
// truncated series prefer the smallest leading exponent so elimination never
// divides by something of high valuation
template <class K>
struct PivotPolicy {
    static bool usable(const K& a) { return !FieldOps<K>::is_zero(a); }
    static bool better(const K&, const K&) { return false; }
};

template <class K>
struct PivotPolicy<Novikov<K>> {
    static bool usable(const Novikov<K>& a) { return !a.vanishes(); }
    static bool better(const Novikov<K>& a, const Novikov<K>& b) {
        return a.lead_exp() < b.lead_exp();
    }
};

template <class K>
using Mat = std::vector<std::vector<K>>;

// series types carry zero/one as statics, plain fields via FieldOps
template <class K>
K scalar_zero() {
    if constexpr (requires { FieldOps<K>::zero(); })
        return FieldOps<K>::zero();
    else
        return K::zero();
}
template <class K>
K scalar_one() {
    if constexpr (requires { FieldOps<K>::one(); })
        return FieldOps<K>::one();
    else
        return K::one();
}
template <class K>
bool scalar_is_zero(const K& a) {
    return !PivotPolicy<K>::usable(a);
}
template <class K>
K scalar_from_rat(const Rat& c) {
    if constexpr (requires { FieldOps<K>::from_rat(c); })
        return FieldOps<K>::from_rat(c);
    else
        return K::from_rat(c);
}

template <class K>
Mat<K> mat_zero(size_t rows, size_t cols, const K& z) {
    return Mat<K>(rows, std::vector<K>(cols, z));
}

// row echelon reduction in place; returns pivot (row, col) pairs
template <class K>
std::vector<std::pair<size_t, size_t>> row_echelon(Mat<K>& a) {
    std::vector<std::pair<size_t, size_t>> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t best = rows;
        for (size_t i = r; i < rows; ++i) {
            if (!PivotPolicy<K>::usable(a[i][c])) continue;
            if (best == rows || PivotPolicy<K>::better(a[i][c], a[best][c])) best = i;
        }
        if (best == rows) continue;
        std::swap(a[r], a[best]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || !PivotPolicy<K>::usable(a[i][c])) continue;
            K f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

template <class K>
size_t mat_rank(Mat<K> a) {
    return row_echelon(a).size();
}

// basis of { x : A x = 0 }
template <class K>
Mat<K> mat_kernel(Mat<K> a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    auto pivots = row_echelon(a);
    std::vector<long> pivot_of_col(cols, -1);
    for (auto [r, c] : pivots) pivot_of_col[c] = static_cast<long>(r);
    Mat<K> basis;
    K zero = scalar_zero<K>();
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (pivot_of_col[free_c] >= 0) continue;
        std::vector<K> v(cols, zero);
        v[free_c] = scalar_one<K>();
        for (auto [r, c] : pivots) v[c] = zero - a[r][free_c] / a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// one solution of A x = b, if consistent
template <class K>
std::optional<std::vector<K>> mat_solve(Mat<K> a, std::vector<K> b) {
    size_t rows = a.size();
    if (rows == 0) return std::vector<K>{};
    size_t cols = a[0].size();
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = row_echelon(a);
    K zero = scalar_zero<K>();
    std::vector<K> x(cols, zero);
    for (auto [r, c] : pivots) {
        if (c == cols) return std::nullopt;  // pivot in the constant column
        x[c] = a[r][cols] / a[r][c];
    }
    return x;
}

}  // namespace flux
