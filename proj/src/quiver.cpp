#include "flux/quiver.hpp"

#include <stdexcept>

namespace flux {

QuadraticAlgebra::QuadraticAlgebra(int nverts, std::vector<Arrow> arrows,
                                   std::vector<Rel2> rels)
    : nverts_(nverts), arrows_(std::move(arrows)), rels_(std::move(rels)) {
    for (const auto& a : arrows_) {
        if (a.src < 0 || a.src >= nverts_ || a.tgt < 0 || a.tgt >= nverts_)
            throw std::invalid_argument("arrow endpoint out of range");
    }
    for (const auto& rel : rels_) {
        if (rel.terms.empty()) throw std::invalid_argument("empty relation");
        int t = -1, s = -1;
        for (const auto& [w, c] : rel.terms) {
            (void)c;
            const Arrow& last = arrows_[w[0]];
            const Arrow& first = arrows_[w[1]];
            if (last.src != first.tgt)
                throw std::invalid_argument("non-composable relation word");
            if (t < 0) {
                t = last.tgt;
                s = first.src;
            } else if (t != last.tgt || s != first.src) {
                throw std::invalid_argument("relation mixes buckets");
            }
        }
    }
}

int QuadraticAlgebra::word_src(const std::vector<int>& w) const {
    return arrows_[w.back()].src;
}
int QuadraticAlgebra::word_tgt(const std::vector<int>& w) const {
    return arrows_[w[0]].tgt;
}
int QuadraticAlgebra::word_deg(const std::vector<int>& w) const {
    int d = 0;
    for (int a : w) d += arrows_[a].deg;
    return d;
}
bool QuadraticAlgebra::word_composable(const std::vector<int>& w) const {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (arrows_[w[i]].src != arrows_[w[i + 1]].tgt) return false;
    return true;
}

const WeightComponent& QuadraticAlgebra::component(int n) const {
    if (n < 1) throw std::invalid_argument("component weight must be positive");
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;

    WeightComponent comp;
    if (n == 1) {
        // single letters are untouched by the relations
        for (int r = 0; r < static_cast<int>(arrows_.size()); ++r) {
            comp.basis_words.push_back({r});
            comp.red[{r, arrows_[r].src}] = {{r, Rat(1)}};
        }
        return cache_.emplace(n, std::move(comp)).first->second;
    }

    // weight n is spanned by (arrow, weight n-1 class) pairs; what dies here
    // is each relation multiplied into every class two weights down
    const auto& prev = component(n - 1);
    int dprev = static_cast<int>(prev.basis_words.size());
    int dprev2 = (n == 2) ? nverts_ : dim(n - 2);

    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> pos;
    for (int r = 0; r < static_cast<int>(arrows_.size()); ++r) {
        for (int j = 0; j < dprev; ++j) {
            if (arrows_[r].src != basis_tgt(n - 1, j)) continue;
            pos[{r, j}] = static_cast<int>(pairs.size());
            pairs.emplace_back(r, j);
        }
    }

    Mat<Rat> rows;
    for (const auto& rel : rels_) {
        for (int k = 0; k < dprev2; ++k) {
            std::vector<Rat> row(pairs.size(), Rat(0));
            bool nz = false;
            for (const auto& [w, c] : rel.terms) {
                for (const auto& [t, d] : mul_basis(1, w[1], n - 2, k)) {
                    auto pit = pos.find({w[0], t});
                    if (pit == pos.end()) throw std::logic_error("relation pair missing");
                    row[pit->second] += c * d;
                    nz = true;
                }
            }
            if (nz) rows.push_back(std::move(row));
        }
    }

    auto pivots = row_echelon(rows);
    std::vector<long> pivot_row(pairs.size(), -1);
    for (auto [r, c] : pivots) pivot_row[c] = static_cast<long>(r);
    std::vector<int> basis_pos(pairs.size(), -1);
    for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
        if (pivot_row[c] >= 0) continue;
        basis_pos[c] = static_cast<int>(comp.basis_words.size());
        std::vector<int> word{pairs[c].first};
        const auto& tail = prev.basis_words[pairs[c].second];
        word.insert(word.end(), tail.begin(), tail.end());
        comp.basis_words.push_back(std::move(word));
    }
    for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
        std::vector<std::pair<int, Rat>> combo;
        if (pivot_row[c] < 0) {
            combo = {{basis_pos[c], Rat(1)}};
        } else {
            const auto& row = rows[pivot_row[c]];
            for (int c2 = c + 1; c2 < static_cast<int>(pairs.size()); ++c2)
                if (basis_pos[c2] >= 0 && row[c2] != 0)
                    combo.emplace_back(basis_pos[c2], -row[c2] / row[c]);
        }
        comp.red[pairs[c]] = std::move(combo);
    }

    return cache_.emplace(n, std::move(comp)).first->second;
}

int QuadraticAlgebra::dim(int n) const {
    if (n == 0) return nverts_;
    return static_cast<int>(component(n).basis_words.size());
}

std::vector<std::pair<int, Rat>> QuadraticAlgebra::prepend_arrow(
    int r, int n, const std::vector<std::pair<int, Rat>>& combo) const {
    const auto& comp = component(n + 1);
    std::map<int, Rat> acc;
    for (const auto& [cls, c] : combo) {
        auto it = comp.red.find({r, cls});
        if (it == comp.red.end()) continue;
        for (const auto& [t, d] : it->second) acc[t] += c * d;
    }
    std::vector<std::pair<int, Rat>> out;
    for (const auto& [t, c] : acc)
        if (c != 0) out.emplace_back(t, c);
    return out;
}

std::vector<std::pair<int, Rat>> QuadraticAlgebra::reduce_word(
    const std::vector<int>& w) const {
    if (w.empty() || !word_composable(w)) return {};
    std::vector<std::pair<int, Rat>> combo{{w.back(), Rat(1)}};
    int n = static_cast<int>(w.size());
    for (int k = n - 2; k >= 0; --k) combo = prepend_arrow(w[k], n - 1 - k, combo);
    return combo;
}

std::vector<std::pair<int, Rat>> QuadraticAlgebra::mul_basis(int m, int i, int n,
                                                             int j) const {
    if (m == 0) {
        if (n == 0) return (i == j) ? std::vector<std::pair<int, Rat>>{{j, Rat(1)}}
                                    : std::vector<std::pair<int, Rat>>{};
        return (basis_tgt(n, j) == i) ? std::vector<std::pair<int, Rat>>{{j, Rat(1)}}
                                      : std::vector<std::pair<int, Rat>>{};
    }
    if (n == 0) {
        return (basis_src(m, i) == j) ? std::vector<std::pair<int, Rat>>{{i, Rat(1)}}
                                      : std::vector<std::pair<int, Rat>>{};
    }
    const auto& wa = component(m).basis_words[i];
    if (word_src(wa) != basis_tgt(n, j)) return {};
    std::vector<std::pair<int, Rat>> combo{{j, Rat(1)}};
    for (int k = m - 1; k >= 0; --k)
        combo = prepend_arrow(wa[k], n + (m - 1 - k), combo);
    return combo;
}

int QuadraticAlgebra::basis_src(int n, int i) const {
    if (n == 0) return i;
    return word_src(component(n).basis_words[i]);
}
int QuadraticAlgebra::basis_tgt(int n, int i) const {
    if (n == 0) return i;
    return word_tgt(component(n).basis_words[i]);
}
int QuadraticAlgebra::basis_deg(int n, int i) const {
    if (n == 0) return 0;
    return word_deg(component(n).basis_words[i]);
}

QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a) {
    const auto& arrows = a.arrows();
    std::vector<Arrow> dual_arrows;
    for (const auto& w : arrows)
        dual_arrows.push_back({w.tgt, w.src, 1 - w.deg});

    // a dual word (c, d) pairs with the path word (d, c), weighted by the
    // parity of the path's first-applied arrow, which is arrow c
    std::vector<Rel2> dual_rels;
    for (int T = 0; T < a.nverts(); ++T) {
        for (int S = 0; S < a.nverts(); ++S) {
            std::vector<std::array<int, 2>> dw;
            for (int c = 0; c < static_cast<int>(arrows.size()); ++c) {
                for (int d = 0; d < static_cast<int>(arrows.size()); ++d) {
                    if (dual_arrows[c].src != dual_arrows[d].tgt) continue;
                    if (dual_arrows[c].tgt != T || dual_arrows[d].src != S) continue;
                    dw.push_back({c, d});
                }
            }
            if (dw.empty()) continue;
            std::vector<const Rel2*> bucket_rels;
            for (const auto& rel : a.rels()) {
                int rt = arrows[rel.terms[0].first[0]].tgt;
                int rs = arrows[rel.terms[0].first[1]].src;
                if (rt == S && rs == T) bucket_rels.push_back(&rel);
            }
            Mat<Rat> m;
            for (const auto* rel : bucket_rels) {
                std::vector<Rat> row(dw.size(), Rat(0));
                for (size_t k = 0; k < dw.size(); ++k) {
                    auto [c, d] = dw[k];
                    for (const auto& [w, coef] : rel->terms) {
                        if (w[0] == d && w[1] == c)
                            row[k] += (arrows[c].deg % 2 ? -coef : coef);
                    }
                }
                m.push_back(std::move(row));
            }
            if (m.empty()) {
                for (const auto& w : dw) dual_rels.push_back({{{w, Rat(1)}}});
                continue;
            }
            for (const auto& v : mat_kernel(m)) {
                Rel2 rel;
                for (size_t k = 0; k < dw.size(); ++k)
                    if (v[k] != 0) rel.terms.emplace_back(dw[k], v[k]);
                dual_rels.push_back(std::move(rel));
            }
        }
    }
    return QuadraticAlgebra(a.nverts(), std::move(dual_arrows), std::move(dual_rels));
}

QuadraticAlgebra doubled_grading(const QuadraticAlgebra& a) {
    std::vector<Arrow> arrows = a.arrows();
    for (auto& w : arrows) w.deg *= 2;
    return QuadraticAlgebra(a.nverts(), std::move(arrows), a.rels());
}

KoszulReport koszul_acyclicity(const QuadraticAlgebra& a, int bound) {
    KoszulReport rep;
    auto dual = quadratic_dual(a);
    for (int n = 1; n <= bound; ++n) {
        KoszulDegreeReport deg;
        deg.weight = n;

        // chain level k: functionals on the dual's weight-k classes, paired
        // with weight-(n-k) classes sharing the dual class's target; the
        // functional transposes left multiplication, so appending an arrow
        // on the algebra side strips the matching arrow from the dual side
        std::vector<std::vector<std::pair<int, int>>> chains(n + 1);
        std::vector<std::map<std::pair<int, int>, int>> pos(n + 1);
        for (int k = 0; k <= n; ++k) {
            for (int b = 0; b < dual.dim(k); ++b) {
                for (int y = 0; y < a.dim(n - k); ++y) {
                    if (dual.basis_tgt(k, b) != a.basis_tgt(n - k, y)) continue;
                    pos[k][{b, y}] = static_cast<int>(chains[k].size());
                    chains[k].emplace_back(b, y);
                }
            }
            deg.chain_dims.push_back(static_cast<int>(chains[k].size()));
            deg.euler += (k % 2 ? -1L : 1L) * chains[k].size();
        }

        std::vector<size_t> ranks(n + 2, 0);
        int narr = static_cast<int>(a.arrows().size());
        for (int k = 1; k <= n; ++k) {
            if (chains[k].empty() || chains[k - 1].empty()) continue;
            Mat<Rat> d = mat_zero(chains[k - 1].size(), chains[k].size(), Rat(0));
            for (size_t col = 0; col < chains[k].size(); ++col) {
                auto [b, y] = chains[k][col];
                int sy = a.basis_deg(n - k, y) % 2 ? -1 : 1;
                for (int g = 0; g < dual.dim(k - 1); ++g) {
                    for (int r = 0; r < narr; ++r) {
                        Rat cb(0);
                        for (const auto& [bb, c] : dual.mul_basis(1, r, k - 1, g))
                            if (bb == b) cb = c;
                        if (cb == 0) continue;
                        for (const auto& [z, cz] : a.mul_basis(1, r, n - k, y)) {
                            auto it = pos[k - 1].find({g, z});
                            if (it == pos[k - 1].end())
                                throw std::logic_error("chain closure violated");
                            d[it->second][col] += Rat(sy) * cb * cz;
                        }
                    }
                }
            }
            ranks[k] = mat_rank(std::move(d));
        }

        deg.exact = true;
        for (int k = 0; k <= n; ++k) {
            int h = deg.chain_dims[k] - static_cast<int>(ranks[k]) -
                    static_cast<int>(ranks[k + 1]);
            deg.homology.push_back(h);
            if (h != 0) deg.exact = false;
        }
        if (!deg.exact) rep.acyclic = false;
        rep.degrees.push_back(std::move(deg));
    }
    return rep;
}

QuadraticAlgebra make_wedge_pair() {
    std::vector<Arrow> arrows = {
        {0, 1, 0}, {0, 1, 0},  // w1, w2
        {1, 0, 1}, {1, 0, 1},  // w3, w4
    };
    std::vector<Rel2> rels = {
        {{{{2, 1}, Rat(1)}, {{3, 0}, Rat(1)}}},  // w3 w2 + w4 w1
        {{{{2, 0}, Rat(1)}}},                    // w3 w1
        {{{{3, 1}, Rat(1)}}},                    // w4 w2
        {{{{0, 3}, Rat(1)}, {{1, 2}, Rat(1)}}},  // w1 w4 + w2 w3
        {{{{0, 2}, Rat(1)}}},                    // w1 w3
        {{{{1, 3}, Rat(1)}}},                    // w2 w4
    };
    return QuadraticAlgebra(2, std::move(arrows), std::move(rels));
}

QuadraticAlgebra make_free_odd() {
    return QuadraticAlgebra(1, {{0, 0, 1}}, {});
}

QuadraticAlgebra make_exterior(int k) {
    std::vector<Arrow> arrows(k, Arrow{0, 0, 1});
    std::vector<Rel2> rels;
    for (int i = 0; i < k; ++i)
        rels.push_back({{{{i, i}, Rat(1)}}});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            rels.push_back({{{{i, j}, Rat(1)}, {{j, i}, Rat(1)}}});
    return QuadraticAlgebra(1, std::move(arrows), std::move(rels));
}

QuadraticAlgebra make_symmetric(int k) {
    std::vector<Arrow> arrows(k, Arrow{0, 0, 0});
    std::vector<Rel2> rels;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            rels.push_back({{{{i, j}, Rat(1)}, {{j, i}, Rat(-1)}}});
    return QuadraticAlgebra(1, std::move(arrows), std::move(rels));
}

QuadraticAlgebra make_nonacyclic_control() {
    // x^2 = 0, xy + yx = 0, y^2 + zx = 0; the weight-4 complex has euler
    // characteristic 21 - 3*11 + 3*6 - 2*3 + 2 = 2, so it cannot be exact
    std::vector<Arrow> arrows(3, Arrow{0, 0, 0});
    std::vector<Rel2> rels = {
        {{{{0, 0}, Rat(1)}}},
        {{{{0, 1}, Rat(1)}, {{1, 0}, Rat(1)}}},
        {{{{1, 1}, Rat(1)}, {{2, 0}, Rat(1)}}},
    };
    return QuadraticAlgebra(1, std::move(arrows), std::move(rels));
}

}  // namespace flux
