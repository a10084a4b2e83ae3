#pragma once

#include <array>

#include "flux/laurent.hpp"
#include "flux/report.hpp"

namespace flux::theta {

// the basic series indexed by (n, k): sum over i in nZ + k of h^(i^2/2n) t^i,
// restricted to |i| <= imax; every stored column is complete
template <class K = Rat>
Laurent<K> series(long n, long k, long imax) {
    Laurent<K> r;
    for (long i = -imax; i <= imax; ++i) {
        long rem = ((i - k) % n + n) % n;
        if (rem == 0) r.set_col(i, Novikov<K>::h_pow(Rat(i * i, 2 * n)));
    }
    return r;
}

// smallest imax so that every index with i^2/2n + drift(i) below the target
// satisfies |i| <= imax, where |drift| <= (|i| + 1) * vmax
inline long series_reach(long n, const Rat& vmax, const Rat& target) {
    Rat v = vmax < 0 ? -vmax : vmax;
    long imax = n + 1;
    while (Rat(imax * imax, 2 * n) - Rat(imax + 1) * v < target || Rat(imax) < Rat(n) * v)
        imax += n;
    return imax;
}

// evaluation at an invertible scalar u, certified below target
template <class K = Rat>
Novikov<K> point(long n, long k, const Novikov<K>& u, const Rat& target) {
    XRat vu = u.val_bound();
    long imax = series_reach(n, vu ? *vu : Rat(0), target);
    return series<K>(n, k, imax).eval(u).truncate(target);
}

// d/dt of the series, evaluated at u
template <class K = Rat>
Novikov<K> deriv_point(long n, long k, const Novikov<K>& u, const Rat& target) {
    XRat vu = u.val_bound();
    Rat v = vu ? (*vu < 0 ? -*vu : *vu) : Rat(0);
    long imax = series_reach(n, v, target + v + 1);
    return series<K>(n, k, imax).derivative().eval(u).truncate(target);
}

// quartic in two variables with only even monomials expected; c[k] multiplies
// v1^k v2^(4-k)
struct Quartic {
    std::array<Nov, 5> c;

    Nov eval(const Nov& v1, const Nov& v2) const {
        Nov acc = Nov::zero();
        for (int k = 0; k <= 4; ++k) acc += c[k] * v1.pow(k) * v2.pow(4 - k);
        return acc;
    }
};

// overall scale of the two-line factorization
Nov quartic_scale(const Rat& target);
Quartic unit_square_quartic(const Rat& target);

// curve coordinates attached to a unit u
Nov s2_at(const Nov& u, const Rat& target);
Nov s1_at(const Nov& u, const Rat& target);

CheckResult check_periodicity(const Rat& target, long twindow);
CheckResult check_half_shift(const Rat& target, long twindow);
CheckResult check_inversion(const Rat& target, long twindow);
CheckResult check_addition(const Rat& target, long twindow);
CheckResult check_specializations(const Rat& target, long twindow);
CheckResult check_quadruple_product(const Rat& target, long twindow);
CheckResult check_wronskian(const Rat& target, long twindow);
CheckResult check_special_points(const Rat& target);
CheckResult check_square_coefficient(const Rat& target);
CheckResult check_parametrization(const Rat& target);
CheckResult check_involutions(const Rat& target);
CheckResult check_perfect_square(const Rat& target, long twindow);

}  // namespace flux::theta
