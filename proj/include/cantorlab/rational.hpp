#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace cantorlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class Errc {
    ZeroPolynomial,
    RootNotIsolated,
    RootNotGreaterThanOne,
    MultipleRootsInSelector,
    NotPisot,
    RationalTheta,
    InvalidLetter,
    DepthBudgetExceeded,
    IncommensurableRatios,
    DataOutsideField,
    StateBudgetExceeded,
    NotApplicable,
    ScaleConditionViolated,
    CodingAmbiguous,
    NoExpansionExists,
    BudgetExceeded,
    ScaleOutOfRange,
    NotConstructible,
    CommensurableBases,
    PrefixTooShort,
    MixedFields,
    DivisionByZero,
    InvalidArgument,
    ParseError,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline BigInt num(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const BigRational& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const BigRational& q) { return q.sign(); }
inline int sign_of(const BigInt& n) { return n.sign(); }

inline BigRational rat_abs(const BigRational& q) { return q < 0 ? BigRational(-q) : q; }

BigInt floor_int(const BigRational& q);
BigInt ceil_int(const BigRational& q);

/// q^e for integer e (e may be negative; q must be nonzero then).
BigRational rat_pow(const BigRational& q, long e);

/// Largest r >= 0 with r^n <= x (x >= 0).
BigInt iroot_floor(const BigInt& x, unsigned n);
/// Smallest r >= 0 with r^n >= x (x >= 0).
BigInt iroot_ceil(const BigInt& x, unsigned n);

/// Rational r with r^n >= x and r within relative 2^-prec_bits of x^(1/n); x >= 0.
BigRational nth_root_upper(const BigRational& x, unsigned n, unsigned prec_bits = 48);
/// Rational r with 0 <= r^n <= x, same tightness.
BigRational nth_root_lower(const BigRational& x, unsigned n, unsigned prec_bits = 48);

/// Parse "p/q", "p", or a finite decimal string ("0.25", "-1.5e2") exactly.
BigRational parse_rational(const std::string& s);
/// Canonical form: lowest terms, '-' on the numerator, "/q" omitted when q == 1.
std::string format_rational(const BigRational& q);

/// Closed interval with exact rational endpoints.
struct RatInterval {
    BigRational lo;
    BigRational hi;

    RatInterval() = default;
    RatInterval(BigRational l, BigRational h) : lo(std::move(l)), hi(std::move(h)) {}
    static RatInterval point(const BigRational& x) { return {x, x}; }

    BigRational width() const { return hi - lo; }
    BigRational mid() const { return (lo + hi) / 2; }
    bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool is_point() const { return lo == hi; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
    friend RatInterval operator+(const RatInterval& a, const BigRational& s) {
        return {a.lo + s, a.hi + s};
    }
    friend RatInterval operator*(const BigRational& s, const RatInterval& a) {
        return s >= 0 ? RatInterval{s * a.lo, s * a.hi} : RatInterval{s * a.hi, s * a.lo};
    }
};

/// Signed magnitude bound: max(|lo|, |hi|).
BigRational abs_upper(const RatInterval& iv);

/// Round outward to endpoints with denominator 2^bits. Caps coordinate bit
/// growth in deep cover recursions; the result contains the input.
RatInterval dyadic_round_out(const RatInterval& iv, unsigned bits);

/// Round a positive rational down/up to `bits` significant bits (relative
/// error below 2^(1-bits)); keeps magnitudes representable without huge
/// fixed-point denominators.
BigRational round_down_sig(const BigRational& x, unsigned bits);
BigRational round_up_sig(const BigRational& x, unsigned bits);

}  // namespace cantorlab
