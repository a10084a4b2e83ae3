#pragma once

#include <optional>

#include "flux/curvering.hpp"
#include "flux/deform.hpp"
#include "flux/report.hpp"
#include "flux/twist.hpp"

namespace flux {

// the standard cone over the curve ring, with the parameter as second
// coordinate; carries the generating endomorphisms of its hom complex
template <class K>
struct FamilyModel {
    using E = CurveElem<K>;
    CurveRing<K> ring;
    AinfStructure<E> st;
    Cone<E> cone;

    static std::array<E, 5> embed(const CurveRing<K>& R, const std::array<K, 5>& c) {
        std::array<E, 5> r;
        for (int k = 0; k <= 4; ++k) {
            r[k].R = &R;
            r[k].a = {c[k]};
            cpoly_trim(r[k].a);
        }
        return r;
    }

    explicit FamilyModel(const std::array<K, 5>& c, int arity_bound = 7)
        : ring(c),
          st(build_Qp<E>(embed(ring, c), arity_bound)),
          cone(st, {E::one(), curve_base(ring)}) {}

    FamilyModel(const FamilyModel&) = delete;
    FamilyModel& operator=(const FamilyModel&) = delete;

    E root() const { return curve_root(ring); }
    ConeElem<E> t() const { return cone.t_elem(); }
    ConeElem<E> u() const { return cone.deg1_line({E::zero(), E::one()}); }
    ConeElem<E> q() const { return cone.loop_diag(E::one()); }
    // the cohomology idempotent: half of unit plus root-inverse times t
    ConeElem<E> w() const {
        E half = E::from_rat(Rat(1, 2));
        ConeElem<E> out = cone.unit();
        for (auto& [to, from] : {std::pair<int, int>{0, 0}, {1, 1}})
            for (auto& [r, c] : out.blk[to][from]) c = c * half;
        ConeElem<E> ts = cone.t_elem();
        E hs = half * curve_root_inv(ring);
        for (const auto& [r, c] : ts.blk[0][1]) combo_add(out.blk[0][1], r, c * hs);
        return out;
    }
};

// coefficients of a degree-one endomorphism on the four representing slots:
// the two loop classes and the two arrow entries of the lower-left block
template <class K>
struct DegOneCoords {
    K c00, c11, a0, a1;
};

template <class K>
std::optional<DegOneCoords<K>> deg_one_coords(const Cone<K>& C, const ConeElem<K>& x) {
    const QuadraticAlgebra& alg = C.st->alg;
    int q0 = -1, q1 = -1;
    for (int i = 0; i < alg.dim(2); ++i) (alg.basis_tgt(2, i) == 0 ? q0 : q1) = i;
    DegOneCoords<K> out{scalar_zero<K>(), scalar_zero<K>(), scalar_zero<K>(), scalar_zero<K>()};
    for (int to = 0; to < 2; ++to)
        for (int from = 0; from < 2; ++from)
            for (const auto& [r, c] : x.blk[to][from]) {
                if (C.entry_degree(to, from, r) != 1) {
                    if (!scalar_is_zero(c)) return std::nullopt;
                    continue;
                }
                if (to == 0 && from == 0 && r == Bref{2, q0})
                    out.c00 = out.c00 + c;
                else if (to == 1 && from == 1 && r == Bref{2, q1})
                    out.c11 = out.c11 + c;
                else if (to == 1 && from == 0 && r == Bref{1, 0})
                    out.a0 = out.a0 + c;
                else if (to == 1 && from == 0 && r == Bref{1, 1})
                    out.a1 = out.a1 + c;
                else if (!scalar_is_zero(c))
                    return std::nullopt;
            }
    return out;
}

// cohomology class of a degree-one element in the basis (loop, arrow dual).
// Coboundaries are exactly the elements with opposite loop coefficients and
// arrow part proportional to the connecting morphism; this needs the first
// component of v to be the unit, which holds for the family cone
template <class K>
std::optional<std::array<K, 2>> family_h1_class(const Cone<K>& C, const ConeElem<K>& x) {
    auto co = deg_one_coords(C, x);
    if (!co) return std::nullopt;
    K half = scalar_from_rat<K>(Rat(1, 2));
    K lam = (co->c00 + co->c11) * half;
    K nu = co->a1 - co->a0 * C.v[1];
    return std::array<K, 2>{lam, nu};
}

// theta-frame coefficient of the deformation cocycle of the trivial
// pre-connection: minus the frame derivative of each connecting entry
template <class K>
ConeElem<CurveElem<K>> deformation_cocycle(const Cone<CurveElem<K>>& C) {
    ConeElem<CurveElem<K>> out;
    for (const auto& [r, c] : C.delta) combo_add(out.blk[1][0], r, -curve_d_frame(c));
    return out;
}

template <class K>
ConeElem<CurveElem<K>> deformation_cocycle(const FamilyModel<K>& F) {
    return deformation_cocycle(F.cone);
}

// theta-frame coefficient of the twisted matrix of c1*(first loop cocycle) +
// c2*(second loop cocycle); both have vanishing next-order term
template <class K>
ConeElem<CurveElem<K>> family_gamma(const FamilyModel<K>& F, const Rat& c1, const Rat& c2) {
    using E = CurveElem<K>;
    const QuadraticAlgebra& alg = F.st.alg;
    std::array<std::map<Bref, E>, 2> g0{};
    for (const auto& [cls, c] : alg.mul_basis(1, 2, 1, 1))
        combo_add(g0[0], Bref{2, cls}, E::from_rat(c1 * c));
    for (const auto& [cls, c] : alg.mul_basis(1, 0, 1, 3))
        combo_add(g0[1], Bref{2, cls}, E::from_rat(c2 * c));
    std::array<std::array<E, 2>, 2> g1{};
    for (auto& row : g1)
        for (E& v : row) v = E::zero();
    return gamma_tw(F.cone, g0, g1);
}

namespace family {

CheckResult check_ring(unsigned seed);
CheckResult check_structure(const Rat& target);
CheckResult check_verify(const Rat& target, const Rat& g1_multiple);

}  // namespace family

}  // namespace flux
