#pragma once

#include "cantorlab/algebraic.hpp"

namespace cantorlab {

struct PisotVerdict {
    bool is_algebraic_integer = false;
    bool is_pisot = false;
    BigRational conjugate_modulus_upper_bound;
    Minimality minimality = Minimality::Unverified;
    /// Whether a negative verdict is exactly certified (a real conjugate of
    /// modulus >= 1, a failed norm test, a non-monic polynomial, or a root
    /// <= 1) as opposed to merely "the upper bound did not land below 1".
    bool not_pisot_certified = false;
    std::string detail;
};

/// Certified upper bound on the modulus of every root of p other than the
/// simple real root isolated by `excluded`. Real conjugates are bounded by
/// refined isolating intervals; complex ones by interval Graeffe iterations
/// with a Fujiwara bound, falling back to the Cauchy bound.
BigRational conjugate_modulus_bound(const IntPolynomial& p, const RatInterval& excluded,
                                    int graeffe_iterations = 8);

/// Classify the root of p designated by `root_selector` (which must isolate a
/// single real root > 1).
PisotVerdict is_pisot(const IntPolynomial& p, const RatInterval& root_selector);

/// Convenience: verdict for an AlgebraicReal via its defining data.
PisotVerdict is_pisot(const AlgebraicReal& theta);

struct GarsiaResult {
    BigRational separation;          // C > 0
    Minimality theta_minimality;     // Unverified propagates as a caveat
};

/// Separation constant C > 0 such that every sum t_1 theta + ... + t_n theta^n
/// with digits from the alphabet is either exactly zero or at least C in
/// absolute value. Alphabet entries are integer polynomials in theta.
GarsiaResult garsia_separation(const AlgebraicReal& theta,
                               const std::vector<IntPolynomial>& alphabet);

}  // namespace cantorlab
