#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>

#include "flux/deform.hpp"

namespace flux {
namespace detail {
namespace {

// coordinate weights of a basis class: arrows 0 and 2 span the first
// coordinate line, 1 and 3 the second, weight-two loops touch both
std::pair<int, int> mdeg(const QuadraticAlgebra& a, Bref r) {
    if (r.first == 0) return {0, 0};
    std::pair<int, int> d{0, 0};
    for (int arrow : a.component(r.first).basis_words[r.second]) {
        if (arrow == 0 || arrow == 2)
            ++d.first;
        else
            ++d.second;
    }
    return d;
}

std::vector<Bref> nonunit_basis(const QuadraticAlgebra& a) {
    std::vector<Bref> out;
    for (int w = 1; a.dim(w) > 0; ++w)
        for (int i = 0; i < a.dim(w); ++i) out.push_back({w, i});
    return out;
}

std::vector<std::vector<Bref>> composable_tuples(const AinfStructure<Rat>& st,
                                                 const std::vector<Bref>& pool, int len) {
    std::vector<std::vector<Bref>> out;
    std::vector<Bref> cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (const auto& b : pool) {
            if (!cur.empty() && st.src(b) != st.tgt(cur.back())) continue;
            cur.push_back(b);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

struct Unknowns {
    std::vector<QpKey> keys;
    std::map<QpKey, int> pos;
    std::map<std::vector<Bref>, std::vector<std::pair<Bref, int>>> by_tuple;
};

// slots of an arity-u component: composable non-unit tuples against every
// basis class (units allowed as outputs) matching endpoints and degree
Unknowns enumerate_unknowns(const AinfStructure<Rat>& st, int u,
                            std::optional<std::pair<int, int>> drop) {
    const auto& a = st.alg;
    Unknowns un;
    std::vector<Bref> outs;
    for (int v = 0; v < a.nverts(); ++v) outs.push_back({0, v});
    for (const auto& b : nonunit_basis(a)) outs.push_back(b);
    for (const auto& in : composable_tuples(st, nonunit_basis(a), u)) {
        int degsum = 0;
        std::pair<int, int> md{0, 0};
        for (const auto& b : in) {
            degsum += st.deg(b);
            auto m = mdeg(a, b);
            md.first += m.first;
            md.second += m.second;
        }
        for (const auto& z : outs) {
            if (st.src(z) != st.src(in.front()) || st.tgt(z) != st.tgt(in.back())) continue;
            if (st.deg(z) != degsum - (u - 2)) continue;
            if (drop) {
                auto mz = mdeg(a, z);
                if (md.first - mz.first != drop->first || md.second - mz.second != drop->second)
                    continue;
            }
            int col = static_cast<int>(un.keys.size());
            un.pos[{in, z}] = col;
            un.by_tuple[in].emplace_back(z, col);
            un.keys.push_back({in, z});
        }
    }
    return un;
}

using SparseRow = std::map<int, Rat>;
using RowKey = std::pair<int, Bref>;  // instance index (constraints negative), output class

struct System {
    std::map<RowKey, SparseRow> lin;
    std::vector<std::map<RowKey, Rat>> consts;  // negated right-hand side per solve
};

using TensorIndex = std::map<std::vector<Bref>, Combo<Rat>>;

TensorIndex index_tensor(const QpTensor& t) {
    TensorIndex ix;
    for (const auto& [key, c] : t) ix[key.first].emplace_back(key.second, c);
    return ix;
}

// associativity rows at arity d = u + 1, linear in the arity-u unknown; each
// known (inner, outer) four-tensor list accumulates constants into its slot
System assemble(const AinfStructure<Rat>& st, int d, int u, const Unknowns& un,
                const std::vector<std::vector<std::pair<const TensorIndex*, const TensorIndex*>>>&
                    known_pairs) {
    assert(d == u + 1);
    System sys;
    sys.consts.resize(known_pairs.empty() ? 0 : known_pairs.size());
    auto instances = composable_tuples(st, nonunit_basis(st.alg), d);
    for (int xi = 0; xi < static_cast<int>(instances.size()); ++xi) {
        const auto& x = instances[xi];
        for (int n = 0; n < d; ++n) {
            int par = 0;
            for (int i = 0; i < n; ++i) par += st.deg(x[i]) + 1;
            Rat sgn(par % 2 ? -1 : 1);
            for (int m = 2; m <= d - n && m < d; m += 2) {
                std::vector<Bref> inner(x.begin() + n, x.begin() + n + m);
                auto outer_of = [&](Bref y) {
                    std::vector<Bref> o(x.begin(), x.begin() + n);
                    o.push_back(y);
                    o.insert(o.end(), x.begin() + n + m, x.end());
                    return o;
                };
                if (m == 2) {
                    // strict product inside, arity-u unknown outside
                    for (const auto& [y, cy] : st.mu2(x[n + 1], x[n])) {
                        auto bt = un.by_tuple.find(outer_of(y));
                        if (bt == un.by_tuple.end()) continue;
                        for (const auto& [z, col] : bt->second) sys.lin[{xi, z}][col] += sgn * cy;
                    }
                } else if (m == u) {
                    // unknown inside, strict product outside
                    auto bt = un.by_tuple.find(inner);
                    if (bt == un.by_tuple.end()) continue;
                    for (const auto& [y, col] : bt->second) {
                        auto o = outer_of(y);
                        for (const auto& [z, cz] : st.mu2(o[1], o[0]))
                            sys.lin[{xi, z}][col] += sgn * cz;
                    }
                } else {
                    // both factors known four-tensors
                    for (size_t pi = 0; pi < known_pairs.size(); ++pi)
                        for (const auto& [tin, tout] : known_pairs[pi]) {
                            auto iit = tin->find(inner);
                            if (iit == tin->end()) continue;
                            for (const auto& [y, cy] : iit->second) {
                                auto oit = tout->find(outer_of(y));
                                if (oit == tout->end()) continue;
                                for (const auto& [z, cz] : oit->second)
                                    sys.consts[pi][{xi, z}] += sgn * cy * cz;
                            }
                        }
                }
            }
        }
    }
    return sys;
}

// reduced solve with several right-hand sides, free variables zero
std::vector<std::vector<Rat>> multi_solve(const Unknowns& un, const System& sys) {
    std::vector<RowKey> row_keys;
    for (const auto& [rk, row] : sys.lin) row_keys.push_back(rk);
    for (const auto& c : sys.consts)
        for (const auto& [rk, val] : c)
            if (!sys.lin.count(rk)) row_keys.push_back(rk);
    std::sort(row_keys.begin(), row_keys.end());
    row_keys.erase(std::unique(row_keys.begin(), row_keys.end()), row_keys.end());

    size_t cols = un.keys.size(), nrhs = sys.consts.size();
    // proportional rows collapse once scaled by their first coefficient
    std::set<std::pair<std::vector<std::pair<int, Rat>>, std::vector<Rat>>> seen;
    Mat<Rat> a;
    for (const auto& rk : row_keys) {
        std::vector<std::pair<int, Rat>> lin;
        std::vector<Rat> cst(nrhs, Rat(0));
        auto lit = sys.lin.find(rk);
        if (lit != sys.lin.end())
            for (const auto& [c, v] : lit->second)
                if (v != 0) lin.emplace_back(c, v);
        for (size_t j = 0; j < nrhs; ++j) {
            auto cit = sys.consts[j].find(rk);
            if (cit != sys.consts[j].end()) cst[j] = cit->second;
        }
        Rat scale = !lin.empty() ? lin.front().second : Rat(0);
        for (size_t j = 0; j < nrhs && scale == 0; ++j)
            if (cst[j] != 0) scale = cst[j];
        if (scale == 0) continue;
        for (auto& [c, v] : lin) v /= scale;
        for (auto& v : cst) v /= scale;
        if (!seen.insert({lin, cst}).second) continue;
        std::vector<Rat> row(cols + nrhs, Rat(0));
        for (const auto& [c, v] : lin) row[c] = v;
        for (size_t j = 0; j < nrhs; ++j) row[cols + j] = -cst[j];
        a.push_back(std::move(row));
    }
    std::vector<std::vector<Rat>> sol(nrhs, std::vector<Rat>(cols, Rat(0)));
    if (a.empty()) return sol;
    auto pivots = row_echelon(a);
    for (auto [r, c] : pivots)
        if (c >= cols) throw Unsolvable("associativity system has no solution");
    for (auto [r, c] : pivots)
        for (size_t j = 0; j < nrhs; ++j) sol[j][c] = a[r][cols + j] / a[r][c];
    return sol;
}

QpTensor materialize(const Unknowns& un, const std::vector<Rat>& x) {
    QpTensor t;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) t[un.keys[i]] = x[i];
    return t;
}

QpTensors build_model() {
    QpTensors model;
    AinfStructure<Rat> st = make_strict<Rat>(make_wedge_pair());
    assert(st.alg.dim(1) == 4 && st.alg.dim(2) == 2);

    // order four: one shared relation matrix, five diagonal targets; the
    // diagonal restriction is pinned on both alternating-word buckets, where
    // the output is the start vertex unit
    Unknowns un4 = enumerate_unknowns(st, 4, std::nullopt);
    System sys4 = assemble(st, 5, 4, un4, {});
    sys4.consts.assign(5, {});
    int constraint = 0;
    std::array<std::vector<int>, 2> coords = {{{0, 1}, {2, 3}}};
    for (int start = 0; start < 2; ++start) {
        Bref unit{0, start};
        for (int k1 = 0; k1 <= 4; ++k1) {
            RowKey rk{-1 - constraint, unit};
            ++constraint;
            for (int a0 : coords[start])
                for (int a1 : coords[1 - start])
                    for (int a2 : coords[start])
                        for (int a3 : coords[1 - start]) {
                            int ones = (a0 % 2 == 0) + (a1 % 2 == 0) + (a2 % 2 == 0) +
                                       (a3 % 2 == 0);
                            if (ones != k1) continue;
                            std::vector<Bref> in{{1, a0}, {1, a1}, {1, a2}, {1, a3}};
                            sys4.lin[rk][un4.pos.at({in, unit})] += 1;
                        }
            sys4.consts[k1][rk] = Rat(-1);  // diagonal coefficient 1 on monomial k1
        }
    }
    auto sols4 = multi_solve(un4, sys4);
    std::array<TensorIndex, 5> ix4;
    for (int k = 0; k <= 4; ++k) {
        model.quartic[k] = materialize(un4, sols4[k]);
        ix4[k] = index_tensor(model.quartic[k]);
    }

    // order six: one graded system per total coordinate drop
    for (int m = 0; m <= 8; ++m) {
        std::vector<std::pair<int, int>> pairs;
        for (int k = 0; k <= 4; ++k)
            for (int l = k; l <= 4; ++l)
                if (k + l == m) pairs.push_back({k, l});
        if (pairs.empty()) continue;
        Unknowns un6 = enumerate_unknowns(st, 6, std::pair<int, int>{m, 8 - m});
        std::vector<std::vector<std::pair<const TensorIndex*, const TensorIndex*>>> kp;
        for (auto [k, l] : pairs) {
            std::vector<std::pair<const TensorIndex*, const TensorIndex*>> terms;
            terms.push_back({&ix4[k], &ix4[l]});
            if (k != l) terms.push_back({&ix4[l], &ix4[k]});
            kp.push_back(std::move(terms));
        }
        System sys6 = assemble(st, 7, 6, un6, kp);
        auto sols6 = multi_solve(un6, sys6);
        for (size_t j = 0; j < pairs.size(); ++j)
            model.sextic[pairs[j]] = materialize(un6, sols6[j]);
    }
    return model;
}

}  // namespace

const QpTensors& qp_tensors() {
    static const QpTensors model = build_model();
    return model;
}

}  // namespace detail
}  // namespace flux
