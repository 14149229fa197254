#pragma once

#include "cantorlab/polynomial.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

namespace cantorlab {

enum class Minimality { Verified, Unverified };

/// Irreducibility policy: Verified when the rational-root test passes and
/// (degree <= 3 or the polynomial is irreducible mod one of {2,3,5,7,11}).
/// Full integer factorization is out of scope.
Minimality minimality_policy(const IntPolynomial& square_free);

/// Q[x]/(P) with a designated real root theta isolated by a sign-change
/// interval. The isolator shrinks monotonically and never changes which root
/// it designates; refinement is thread-safe.
class NumberField {
public:
    static std::shared_ptr<const NumberField> make(const IntPolynomial& p, RatInterval isolator);

    const IntPolynomial& poly() const { return p_; }
    int degree() const { return p_.degree(); }
    Minimality minimality() const { return minimality_; }

    RatInterval isolator() const;
    /// Refine the designated root's interval to the requested width.
    RatInterval enclosure(const BigRational& width) const;
    /// Number of real roots of the defining polynomial in (a, b].
    int count_roots(const BigRational& a, const BigRational& b) const;

private:
    NumberField(IntPolynomial p, RatInterval isolator, Minimality m);
    IntPolynomial p_;
    SturmChain chain_;
    Minimality minimality_;
    mutable RatInterval box_;
    mutable std::mutex mu_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// An exact real number: a big rational, or an element of a NumberField
/// represented by a reduced polynomial in the field generator. All predicates
/// (sign, comparison, equality) are decided exactly.
class AlgebraicReal {
public:
    AlgebraicReal() : v_(BigRational(0)) {}
    AlgebraicReal(long v) : v_(BigRational(v)) {}        // NOLINT(google-explicit-constructor)
    AlgebraicReal(BigRational q) : v_(std::move(q)) {}   // NOLINT(google-explicit-constructor)

    /// The unique real root of p inside `isolator`. Collapses to a rational
    /// when that root is rational.
    static AlgebraicReal algebraic(const IntPolynomial& p, const RatInterval& isolator);
    /// Element sum coeffs[i] * theta^i of an existing field.
    static AlgebraicReal field_element(FieldPtr field, std::vector<BigRational> coeffs);
    static AlgebraicReal generator(FieldPtr field);

    bool is_rational() const { return std::holds_alternative<BigRational>(v_); }
    const BigRational& rational() const { return std::get<BigRational>(v_); }
    FieldPtr field() const;
    const std::vector<BigRational>& coeffs() const;

    friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b);
    friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b);
    friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b);
    friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b);
    AlgebraicReal operator-() const;
    AlgebraicReal pow(long e) const;

    int sign() const;
    int compare(const AlgebraicReal& o) const;
    bool operator==(const AlgebraicReal& o) const { return compare(o) == 0; }
    bool operator!=(const AlgebraicReal& o) const { return compare(o) != 0; }
    bool operator<(const AlgebraicReal& o) const { return compare(o) < 0; }
    bool operator<=(const AlgebraicReal& o) const { return compare(o) <= 0; }
    bool operator>(const AlgebraicReal& o) const { return compare(o) > 0; }
    bool operator>=(const AlgebraicReal& o) const { return compare(o) >= 0; }

    bool is_zero() const { return sign() == 0; }

    /// Enclosure of width at most `width`; cached and monotone shrinking.
    RatInterval enclosure(const BigRational& width) const;
    RatInterval enclosure_bits(unsigned bits) const;

    /// Defining data for serialization: an integer polynomial with this value
    /// as a root, plus an interval isolating it among the real roots. Computed
    /// lazily via the characteristic polynomial for field elements.
    IntPolynomial defining_polynomial() const;
    RatInterval isolating_interval() const;
    Minimality minimality() const;

    /// Deterministic key for canonical-form maps ("r:p/q" or "f:c0,c1,...").
    std::string canonical_key() const;
    double to_double() const;
    std::string to_string() const;

private:
    struct ElemCache {
        std::mutex mu;
        bool has_box = false;
        RatInterval box;
        std::optional<std::pair<IntPolynomial, RatInterval>> defining;
    };
    struct AlgRep {
        FieldPtr field;
        std::vector<BigRational> coeffs;  // reduced mod field->poly(), degree > 0 part nonzero
        std::shared_ptr<ElemCache> cache;
    };
    std::variant<BigRational, AlgRep> v_;
    const AlgRep& rep() const { return std::get<AlgRep>(v_); }
    static AlgebraicReal from_rep(FieldPtr field, std::vector<BigRational> coeffs);
    void ensure_defining() const;
};

/// Coefficient vector of x in Q(theta); rationals embed as constants. Fails
/// with DataOutsideField when x lives in a different field.
std::vector<BigRational> as_field_coeffs(const AlgebraicReal& x, const FieldPtr& field);

/// Remainder of a rational-coefficient polynomial modulo an integer polynomial.
std::vector<BigRational> qpoly_rem(std::vector<BigRational> a, const IntPolynomial& p);

/// Canonical representative of a polynomial-in-theta modulo the defining
/// polynomial. Identity (plain evaluation) when theta is rational.
AlgebraicReal reduce_in_field(const std::vector<BigRational>& poly_in_theta,
                              const AlgebraicReal& theta);

}  // namespace cantorlab
