#include "cantorlab/pisot.hpp"

#include <cassert>
#include <iostream>

using namespace cantorlab;

int main() {
    // root isolation: x^2 - 2
    auto roots = isolate_real_roots(IntPolynomial::from_ints({-2, 0, 1}));
    assert(roots.size() == 2);
    assert(roots[0].interval.hi < 0 && roots[1].interval.lo > -1);

    // x^3 + 2x^2 + x - 1 has one real root in (0.46, 0.47)
    IntPolynomial p_ex1 = IntPolynomial::from_ints({-1, 1, 2, 1});
    auto r2 = isolate_real_roots(p_ex1);
    assert(r2.size() == 1);
    AlgebraicReal alpha2 = AlgebraicReal::algebraic(p_ex1, r2[0].interval);
    RatInterval e = alpha2.enclosure(BigRational(1, 1000000));
    std::cout << "alpha_2 in [" << static_cast<double>(e.lo) << ", " << static_cast<double>(e.hi)
              << "]\n";
    assert(e.lo > BigRational(46, 100) && e.hi < BigRational(47, 100));

    // sqrt(2): arithmetic in Q(sqrt 2)
    AlgebraicReal s2 = AlgebraicReal::algebraic(IntPolynomial::from_ints({-2, 0, 1}),
                                                RatInterval(BigRational(1), BigRational(2)));
    assert((s2 * s2).is_rational() && (s2 * s2).rational() == 2);
    AlgebraicReal theta = s2 + AlgebraicReal(1);
    assert((theta.pow(3) - (AlgebraicReal(5) * theta + AlgebraicReal(2))).is_zero());

    // Pisot checks
    PisotVerdict v1 = is_pisot(IntPolynomial::from_ints({-1, -2, 1}),
                               RatInterval(BigRational(2), BigRational(3)));
    std::cout << "1+sqrt2 pisot=" << v1.is_pisot
              << " bound=" << static_cast<double>(v1.conjugate_modulus_upper_bound) << "\n";
    assert(v1.is_pisot);
    assert(v1.conjugate_modulus_upper_bound < BigRational(1, 2));

    PisotVerdict v2 = is_pisot(IntPolynomial::from_ints({-2, 0, 1}),
                               RatInterval(BigRational(1), BigRational(2)));
    assert(!v2.is_pisot && v2.not_pisot_certified);

    // x^3 - 2x^2 - 1: Pisot with a complex conjugate pair
    PisotVerdict v3 = is_pisot(IntPolynomial::from_ints({-1, 0, -2, 1}),
                               RatInterval(BigRational(2), BigRational(3)));
    std::cout << "x^3-2x^2-1 pisot=" << v3.is_pisot
              << " bound=" << static_cast<double>(v3.conjugate_modulus_upper_bound) << "\n";
    assert(v3.is_pisot);

    // Garsia: theta = 1 + sqrt2, alphabet {-1, 0, 1} -> C close to 2 - sqrt2
    GarsiaResult g = garsia_separation(theta, {IntPolynomial::from_ints({-1}), IntPolynomial(),
                                               IntPolynomial::from_ints({1})});
    std::cout << "garsia C=" << static_cast<double>(g.separation) << "\n";
    assert(g.separation > BigRational(58, 100) && g.separation <= BigRational(586, 1000));

    std::cout << "smoke ok\n";
    return 0;
}
