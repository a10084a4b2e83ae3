#pragma once

#include <map>
#include <utility>
#include <vector>

#include "flux/linalg.hpp"
#include "flux/quiver.hpp"

namespace flux {

// reference to a homogeneous basis class: (weight, index); weight 0 names a vertex
using Bref = std::pair<int, int>;

template <class K>
using Combo = std::vector<std::pair<Bref, K>>;

// minimal-model product structure on the basis of a graded quiver algebra;
// the binary product is the algebra's own, higher products are stored
// sparsely and vanish whenever an input is a vertex unit
template <class K>
struct AinfStructure {
    QuadraticAlgebra alg;
    // higher[d] maps an input tuple, listed in application order with the
    // first-acting morphism first, to its value combination
    std::map<int, std::map<std::vector<Bref>, Combo<K>>> higher;

    int deg(Bref r) const { return r.first == 0 ? 0 : alg.basis_deg(r.first, r.second); }
    int src(Bref r) const { return r.first == 0 ? r.second : alg.basis_src(r.first, r.second); }
    int tgt(Bref r) const { return r.first == 0 ? r.second : alg.basis_tgt(r.first, r.second); }

    // x1 acts first; the sign twists by the parity of the first-acting input
    Combo<K> mu2(Bref x2, Bref x1) const {
        Combo<K> out;
        if (tgt(x1) != src(x2)) return out;
        Rat s = (((deg(x1) % 2) + 2) % 2) ? Rat(-1) : Rat(1);
        for (const auto& [cls, c] : alg.mul_basis(x2.first, x2.second, x1.first, x1.second))
            out.emplace_back(Bref{x2.first + x1.first, cls}, scalar_from_rat<K>(s * c));
        return out;
    }

    // inputs in application order; unit inputs kill every product except mu2
    Combo<K> mu(const std::vector<Bref>& in) const {
        if (in.size() == 2) return mu2(in[1], in[0]);
        for (const auto& r : in)
            if (r.first == 0) return {};
        auto dit = higher.find(static_cast<int>(in.size()));
        if (dit == higher.end()) return {};
        auto it = dit->second.find(in);
        return it == dit->second.end() ? Combo<K>{} : it->second;
    }
};

template <class K>
AinfStructure<K> make_strict(QuadraticAlgebra a) {
    return AinfStructure<K>{std::move(a), {}};
}

}  // namespace flux
