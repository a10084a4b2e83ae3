#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flux/family.hpp"
#include "flux/theta.hpp"

using namespace flux;

namespace {

using E = CurveElem<Rat>;

std::array<Rat, 5> dense_coeffs() { return {Rat(1), Rat(2), Rat(4), Rat(8), Rat(16)}; }

E poly_of(const CurveRing<Rat>& R, std::initializer_list<Rat> cs) {
    return curve_poly(R, CPoly<Rat>(cs));
}

template <class K>
ConeElem<K> scaled(const ConeElem<K>& x, const K& s) {
    ConeElem<K> out;
    ce_acc(out, x, s);
    return out;
}

}  // namespace

TEST_CASE("curve ring arithmetic") {
    CurveRing<Rat> R(dense_coeffs());
    E one = E::one(), root = curve_root(R), base = curve_base(R);

    CHECK(R.P == CPoly<Rat>{Rat(16), Rat(8), Rat(4), Rat(2), Rat(1)});
    CHECK(curve_eq(root * root, curve_poly(R, R.P)));
    CHECK(curve_eq(curve_root_inv(R) * root, one));
    CHECK(curve_eq(root * base + base * root, (root + root) * base));
    CHECK((root - root).is_zero());
    CHECK(!curve_eq(root, base));

    // denominators: (root / P) * P == root across different powers
    E rinv = curve_root_inv(R);
    CHECK(curve_eq(rinv * curve_poly(R, R.P), root));
    E deep = rinv * rinv;
    CHECK(deep.k == 2);
    CHECK(curve_eq(deep * curve_poly(R, R.P), one));

    // context-free constants combine with ringed elements
    E c3 = E::from_rat(Rat(3));
    CHECK(c3.R == nullptr);
    CHECK(curve_eq(c3 * root + root, E::from_rat(Rat(4)) * root));
    CHECK(curve_eq(c3 * E::from_rat(Rat(5)), E::from_rat(Rat(15))));

    CurveRing<Rat> R2({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK_THROWS_AS(curve_root(R) + curve_root(R2), std::logic_error);
    CHECK_THROWS_AS(curve_root(R) * curve_base(R2), std::logic_error);
}

TEST_CASE("curve ring derivative and evaluation") {
    CurveRing<Rat> R(dense_coeffs());
    E root = curve_root(R), base = curve_base(R);
    CPoly<Rat> Pd = cpoly_deriv(R.P);

    CHECK(curve_eq(curve_d_frame(base), E::from_rat(Rat(-2)) * root));
    CHECK(curve_eq(curve_d_frame(root), E::zero() - curve_poly(R, Pd)));
    CHECK(curve_d_frame(E::from_rat(Rat(9))).is_zero());

    E f = root * base + poly_of(R, {Rat(1), Rat(0), Rat(5)});
    E g = curve_root_inv(R) * poly_of(R, {Rat(0), Rat(2)});
    CHECK(curve_eq(curve_d_frame(f * g), f * curve_d_frame(g) + g * curve_d_frame(f)));

    // specialization at base 0: P(0) = 16, root evaluates to either sign
    CHECK(curve_eval(f, Rat(4), Rat(0)) == Rat(1));
    CHECK(curve_eval(g, Rat(-4), Rat(0)) == Rat(0));
    E h = curve_root_inv(R);
    CHECK(curve_eval(h, Rat(4), Rat(0)) == Rat(1, 4));
    CHECK(curve_eval(h, Rat(-4), Rat(0)) == Rat(-1, 4));
    CHECK(curve_eval(f * g + h, Rat(4), Rat(0)) ==
          curve_eval(f, Rat(4), Rat(0)) * curve_eval(g, Rat(4), Rat(0)) +
              curve_eval(h, Rat(4), Rat(0)));
}

TEST_CASE("family cone generators over the rationals") {
    FamilyModel<Rat> F(dense_coeffs());
    const Cone<E>& C = F.cone;
    E P = curve_poly(F.ring, F.ring.P);

    ConeElem<E> ee = C.unit(), t = F.t(), u = F.u(), q = F.q(), w = F.w();
    CHECK(ce_eq(C.mu2(t, t), scaled(ee, P)));
    CHECK(ce_eq(C.mu2(w, w), w));
    CHECK(C.mu1(t).is_zero());
    CHECK(C.mu1(u).is_zero());
    CHECK(C.mu1(q).is_zero());
    CHECK(C.mu1(w).is_zero());
    CHECK(curve_eq(C.p_of_v(), P));

    // unit laws with the curve-ring scalars
    CHECK(ce_eq(C.mu2(ee, t), t));
    CHECK(ce_eq(C.mu2(t, ee), t));
    CHECK(ce_eq(C.mu2(ee, u), scaled(u, E::from_rat(Rat(-1)))));
    CHECK(ce_eq(C.mu2(u, ee), u));
}

TEST_CASE("degree one coordinates and classes") {
    FamilyModel<Rat> F(dense_coeffs());
    const Cone<E>& C = F.cone;
    ConeElem<E> u = F.u(), q = F.q();

    auto cq = family_h1_class(C, q);
    REQUIRE(cq);
    CHECK(curve_eq((*cq)[0], E::zero() - E::one()));
    CHECK((*cq)[1].is_zero());
    auto cu = family_h1_class(C, u);
    REQUIRE(cu);
    CHECK((*cu)[0].is_zero());
    CHECK(curve_eq((*cu)[1], E::one()));

    // classes are blind to coboundaries
    ConeElem<E> probe;
    combo_add(probe.blk[0][1], Bref{1, 2}, curve_root(F.ring));
    combo_add(probe.blk[0][0], Bref{0, 0}, curve_base(F.ring));
    ConeElem<E> shifted = q;
    ce_acc(shifted, C.mu1(probe), E::from_rat(Rat(5)));
    auto cs = family_h1_class(C, shifted);
    REQUIRE(cs);
    CHECK(curve_eq((*cs)[0], (*cq)[0]));
    CHECK(curve_eq((*cs)[1], (*cq)[1]));

    // elements outside the representing slots are rejected
    CHECK(!family_h1_class(C, F.t()));
    CHECK(!deg_one_coords(C, F.t()));
    CHECK(family_h1_class(C, ConeElem<E>{}));
}

TEST_CASE("deformation cocycle over the rationals") {
    FamilyModel<Rat> F(dense_coeffs());
    const Cone<E>& C = F.cone;
    E root = F.root(), two_s1 = root + root;

    ConeElem<E> def = deformation_cocycle(F);
    CHECK(C.mu1(def).is_zero());
    CHECK(ce_eq(def, scaled(F.u(), two_s1)));
    auto cd = family_h1_class(C, def);
    REQUIRE(cd);
    CHECK((*cd)[0].is_zero());
    CHECK(curve_eq((*cd)[1], two_s1));
}

TEST_CASE("rescaling cocycle and projection over the rationals") {
    FamilyModel<Rat> F(dense_coeffs());
    const Cone<E>& C = F.cone;
    E root = F.root(), half = E::from_rat(Rat(1, 2));
    ConeElem<E> u = F.u(), t = F.t(), w = F.w();
    ConeElem<E> def = deformation_cocycle(F);

    for (Rat c : {Rat(0), Rat(3), Rat(-1, 2)}) {
        ConeElem<E> gam = family_gamma(F, c, c - Rat(2));
        CHECK(C.mu1(gam).is_zero());
        auto cg = family_h1_class(C, gam);
        REQUIRE(cg);
        CHECK(curve_eq((*cg)[0], E::one()));
        CHECK((*cg)[1].is_zero());

        auto pl = family_h1_class(C, C.mu2(w, gam));
        auto pr = family_h1_class(C, C.mu2(gam, w));
        REQUIRE(pl);
        REQUIRE(pr);
        CHECK(curve_eq((*pl)[0], E::zero() - half));
        CHECK(curve_eq((*pl)[1], E::zero() - root));
        CHECK(curve_eq((*pr)[0], half));
        CHECK(curve_eq((*pr)[1], root));
    }

    auto cg2 = family_h1_class(C, scaled(C.mu2(u, t), E::from_rat(Rat(2))));
    REQUIRE(cg2);
    CHECK(curve_eq((*cg2)[0], E::one()));
    CHECK((*cg2)[1].is_zero());

    auto pdl = family_h1_class(C, C.mu2(w, def));
    auto pdr = family_h1_class(C, C.mu2(def, w));
    REQUIRE(pdl);
    REQUIRE(pdr);
    CHECK(curve_eq((*pdl)[0], E::zero() - half));
    CHECK(curve_eq((*pdl)[1], E::zero() - root));
    CHECK(curve_eq((*pdr)[0], half));
    CHECK(curve_eq((*pdr)[1], root));
}

TEST_CASE("check drivers") {
    auto ring = family::check_ring(20260816u);
    INFO(ring.detail);
    CHECK(ring.pass);

    auto structure = family::check_structure(Rat(4));
    INFO(structure.detail);
    CHECK(structure.pass);

    auto verify = family::check_verify(Rat(4), Rat(0));
    INFO(verify.detail);
    CHECK(verify.pass);

    auto shifted = family::check_verify(Rat(4), Rat(5, 2));
    INFO(shifted.detail);
    CHECK(shifted.pass);
}
