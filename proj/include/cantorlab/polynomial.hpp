#pragma once

#include "cantorlab/rational.hpp"

#include <vector>

namespace cantorlab {

/// Univariate polynomial over Z, coefficients stored constant term first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial from_ints(std::initializer_list<long> coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    const BigInt& leading() const;
    const BigInt& coeff(size_t i) const;  // 0 beyond degree
    const std::vector<BigInt>& coeffs() const { return c_; }

    int sign_at(const BigRational& x) const;
    BigRational eval(const BigRational& x) const;
    RatInterval eval_interval(const RatInterval& x) const;

    IntPolynomial derivative() const;
    IntPolynomial negated_variable() const;  // p(-x)
    IntPolynomial primitive_part() const;    // content removed, leading coefficient > 0
    BigInt content() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string() const;  // human-readable, for diagnostics

private:
    std::vector<BigInt> c_;
    void normalize();
};

/// gcd over Z via subresultant pseudo-remainders; primitive, positive leading coefficient.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// p with repeated factors stripped: p / gcd(p, p'), primitive.
IntPolynomial square_free_part(const IntPolynomial& p);

/// Exact quotient for known-divisible pairs (throws if division is not exact).
IntPolynomial poly_exact_div(const IntPolynomial& p, const IntPolynomial& d);

/// All real roots lie inside (-bound, bound).
BigRational cauchy_root_bound(const IntPolynomial& p);

/// Sturm chain of a square-free polynomial; counts real roots in half-open (a, b].
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& square_free);
    int count_roots(const BigRational& a, const BigRational& b) const;  // roots in (a, b]
    int variations_at(const BigRational& x) const;

private:
    std::vector<IntPolynomial> chain_;
};

struct IsolatedRoot {
    RatInterval interval;  // open interval containing exactly one real root
    int sign_lo = 0;       // sign of the square-free part at interval.lo
    int sign_hi = 0;       // sign at interval.hi; sign_lo * sign_hi < 0
};

/// Isolating intervals for all real roots of p (square-free part is taken
/// internally). Intervals are pairwise disjoint and sorted.
std::vector<IsolatedRoot> isolate_real_roots(const IntPolynomial& p);

/// Shrink an isolating interval of `square_free` by sign-preserving bisection
/// until its width is at most `width`. Probes that land on the root exactly are
/// dodged so endpoint signs stay nonzero.
RatInterval refine_isolating_interval(const IntPolynomial& square_free, RatInterval iv,
                                      const BigRational& width);

/// Rational roots of p inside `window` (nullptr window: everywhere). Empty when
/// the divisor enumeration exceeds its budget (reported via *complete = false).
std::vector<BigRational> rational_roots(const IntPolynomial& p, const RatInterval* window,
                                        bool* complete);

/// true iff p mod `prime` has the same degree and is irreducible over F_prime.
bool irreducible_mod_p(const IntPolynomial& p, int prime);

}  // namespace cantorlab
