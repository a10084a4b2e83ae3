#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flux/serialize.hpp"

using namespace flux;

namespace {
// sum of h^(k^2/2) over all integers k, truncated below p
Nov theta_point_one(const Rat& p) {
    Nov acc = Nov::unknown_beyond(p);
    for (long k = 0; Rat(k * k, 2) < p; ++k)
        acc += Nov::term(Rat(k == 0 ? 1 : 2), Rat(k * k, 2));
    return acc;
}
}  // namespace

TEST_CASE("exact polynomial arithmetic") {
    Nov a = Nov::one() + Nov::h_pow(1);
    Nov b = Nov::one() - Nov::h_pow(1);
    Nov p = a * b;
    CHECK(p.exact());
    CHECK(p == Nov::one() - Nov::h_pow(2));
    CHECK((a - a).vanishes());
}

TEST_CASE("geometric inverse") {
    Nov a = Nov::one() + Nov::h_pow(1);
    Nov inv = a.invert(Rat(10));
    Nov expect = Nov::unknown_beyond(10);
    for (long k = 0; k < 10; ++k) expect += Nov::term(Rat(k % 2 ? -1 : 1), Rat(k));
    CHECK(inv == expect);
    CHECK(Nov::agrees_below(a * inv, Nov::one(), Rat(10)));
}

TEST_CASE("series inverse of a theta-like value") {
    Nov t1 = theta_point_one(Rat(8));
    CHECK(t1.coeff(Rat(1, 2)) == 2);
    CHECK(t1.coeff(Rat(2)) == 2);
    CHECK(t1.coeff(Rat(9, 2)) == 2);

    Nov sq = t1 * t1;
    CHECK(sq.coeff(Rat(1, 2)) == 4);
    CHECK(xge(sq.prec(), Rat(8)));

    Nov inv = t1.invert();
    CHECK(inv.coeff(Rat(0)) == 1);
    CHECK(inv.coeff(Rat(1, 2)) == -2);
    CHECK(inv.coeff(Rat(1)) == 4);
    CHECK(inv.coeff(Rat(3, 2)) == -8);
    CHECK(Nov::agrees_below(t1 * inv, Nov::one(), Rat(7)));
}

TEST_CASE("cutoff propagation") {
    Nov a = Nov::build({{Rat(0), Rat(1)}}, Rat(3));
    Nov b = Nov::h_pow(2);
    CHECK((a * b).prec() == XRat(Rat(5)));
    CHECK((a + b).prec() == XRat(Rat(3)));
    CHECK(a.invert().prec() == XRat(Rat(3)));

    Nov c = Nov::build({{Rat(-1), Rat(1)}}, Rat(3));
    Nov d = Nov::build({{Rat(1), Rat(1)}}, Rat(4));
    Nov cd = c * d;
    CHECK(cd.prec() == XRat(Rat(3)));
    CHECK(cd.coeff(Rat(0)) == 1);

    // inverting shifts the certified range by twice the leading exponent
    Nov e = Nov::build({{Rat(2), Rat(5)}}, Rat(6));
    CHECK(e.invert().prec() == XRat(Rat(2)));
}

TEST_CASE("truncated comparison") {
    Nov a = Nov::one() + Nov::h_pow(5);
    Nov b = Nov::one() + Nov::term(Rat(3), Rat(6));
    CHECK(Nov::agrees_below(a, b, Rat(5)));
    CHECK(!Nov::agrees_below(a, b, Rat(6)));
    Nov c = Nov::build({{Rat(0), Rat(1)}}, Rat(4));
    CHECK(!Nov::agrees_below(a, c, Rat(5)));  // c is not certified that far
    CHECK(Nov::agrees_below(a, c, Rat(4)));
}

TEST_CASE("square roots") {
    Nov perfect = Nov::one() + Nov::term(Rat(2), Rat(1)) + Nov::h_pow(2);
    auto r = perfect.sqrt(Rat(10));
    REQUIRE(r.has_value());
    CHECK(Nov::agrees_below(*r, Nov::one() + Nov::h_pow(1), Rat(10)));

    auto mono = (Nov::term(Rat(4), Rat(2))).sqrt();
    REQUIRE(mono.has_value());
    CHECK(*mono == Nov::term(Rat(2), Rat(1)));
    CHECK(mono->exact());

    CHECK(Nov::h_pow(1).sqrt()->lead_exp() == Rat(1, 2));
    CHECK(!Nov::term(Rat(2), Rat(2)).sqrt().has_value());

    Nov trunc = Nov::build({{Rat(0), Rat(1)}, {Rat(1), Rat(1)}}, Rat(5));
    auto s = trunc.sqrt();
    REQUIRE(s.has_value());
    CHECK(s->prec() == XRat(Rat(5)));
    CHECK(Nov::agrees_below(*s * *s, trunc, Rat(5)));
}

TEST_CASE("exponent rescale") {
    Nov a = Nov::build({{Rat(0), Rat(1)}, {Rat(1, 2), Rat(1)}}, Rat(2));
    Nov r = a.exponent_rescale(Rat(3));
    CHECK(r.coeff(Rat(3, 2)) == 1);
    CHECK(r.prec() == XRat(Rat(6)));
}

TEST_CASE("inverting nothing fails loudly") {
    CHECK_THROWS_AS(Nov::zero().invert(), ZeroDivisor);
    CHECK_THROWS_AS(Nov::unknown_beyond(Rat(2)).invert(), ZeroDivisor);
    CHECK_THROWS_AS((Nov::one() + Nov::h_pow(1)).invert(), std::invalid_argument);
}

TEST_CASE("gaussian coefficients") {
    Novikov<Gauss> u = Novikov<Gauss>::term(Gauss::unit_i(), Rat(1, 2));
    Novikov<Gauss> sq = u * u;
    CHECK(sq == Novikov<Gauss>::term(Gauss(Rat(-1)), Rat(1)));
    Novikov<Gauss> inv = u.invert();
    CHECK((u * inv) == Novikov<Gauss>::one());
}

TEST_CASE("cyclotomic coefficients") {
    Cyclo12 z = Cyclo12::gen();
    Cyclo12 i = Cyclo12::unit_i();
    CHECK(i * i == Cyclo12(Rat(-1)));
    Cyclo12 lam = Cyclo12::root6();
    CHECK(lam * lam * lam == Cyclo12(Rat(-1)));
    CHECK(Cyclo12::sqrt_m3() * Cyclo12::sqrt_m3() == Cyclo12(Rat(-3)));
    Cyclo12 q = Cyclo12(Rat(3)) + z * z * z - z;
    CHECK(q / q == Cyclo12(Rat(1)));
    CHECK((Cyclo12(Rat(1)) / z) * z == Cyclo12(Rat(1)));
}

TEST_CASE("scalar text round trip") {
    Nov a = Nov::build({{Rat(0), Rat(3)}, {Rat(1, 2), Rat(-1)}}, Rat(7, 2));
    CHECK(a.to_text() == "3 + -1*h^(1/2) + O(h^(7/2))");
    CHECK(nov_from_text(a.to_text()) == a);
    CHECK(nov_from_text("0") == Nov::zero());
    CHECK(nov_from_text("h^(-2)") == Nov::h_pow(-2));
    CHECK(nov_from_text("-h^1/2") == Nov::term(Rat(-1), Rat(1, 2)));
}

TEST_CASE("scalar json round trip") {
    Nov a = Nov::build({{Rat(-1, 3), Rat(2)}, {Rat(5), Rat(7, 11)}}, Rat(9));
    CHECK(nov_from_json(nov_to_json(a)) == a);
    Nov b = Nov::one();
    CHECK(nov_from_json(nov_to_json(b)) == b);
}

TEST_CASE("two-direction translate") {
    Lau x = Lau::term(Rat(1), Rat(1, 2), 3);
    Lau once = x.translate(1);
    CHECK(once == Lau::term(Rat(1), Rat(7, 2), 4));
    Lau twice = once.translate(1);
    // applying the shift twice sends (m, n) to (m + 2n + d, n + 2d)
    CHECK(twice == Lau::term(Rat(1), Rat(1, 2) + 2 * 3 + 1, 3 + 2));
}

TEST_CASE("two-direction arithmetic") {
    Lau s = Lau::t_pow(1) + Lau::t_pow(-1);
    Lau sq = s * s;
    CHECK(sq.col(2) == Nov::one());
    CHECK(sq.col(0) == Nov::from_rat(Rat(2)));
    CHECK(sq.col(-2) == Nov::one());
    CHECK(sq.subst_t_inv() == sq);

    CHECK(Lau::t_pow(2).subst_h_shift(Rat(1, 2)) == Lau::term(Rat(1), Rat(1), 2));

    Nov u = Nov::h_pow(Rat(1, 3));
    Nov ev = s.eval(u);
    CHECK(ev.coeff(Rat(1, 3)) == 1);
    CHECK(ev.coeff(Rat(-1, 3)) == 1);

    Lau scaled = s.subst_t_scale(u);
    CHECK(scaled.col(1) == Nov::h_pow(Rat(1, 3)));
    CHECK(scaled.col(-1) == Nov::h_pow(Rat(-1, 3)));
}

TEST_CASE("column window loss flag") {
    Lau s = Lau::t_pow(5) + Lau::one();
    Lau kept = s.restrict_cols(-2, 6);
    CHECK(!kept.lossy());
    Lau cut = s.restrict_cols(-2, 2);
    CHECK(cut.lossy());
    CHECK(cut.col(5).vanishes());
    CHECK((cut * Lau::one()).lossy());
}

TEST_CASE("two-direction text and json round trip") {
    Lau a = Lau::term(Rat(2), Rat(1, 2), -1) + Lau::term(Rat(5), Rat(0), 0);
    CHECK(a.to_text() == "5 + 2*h^(1/2)*t^(-1)");
    CHECK(lau_from_text(a.to_text()) == a);
    CHECK(lau_from_json(lau_to_json(a)) == a);

    Lau b = a.truncate_h(Rat(4));
    CHECK(lau_from_text(b.to_text()) == b);
    CHECK(lau_from_json(lau_to_json(b)) == b);
}

TEST_CASE("derivative in the second direction") {
    Lau s = Lau::t_pow(3) + Lau::t_pow(-2);
    Lau d = s.derivative();
    CHECK(d.col(2) == Nov::from_rat(Rat(3)));
    CHECK(d.col(-3) == Nov::from_rat(Rat(-2)));
}
