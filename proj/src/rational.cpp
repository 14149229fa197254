#include "cantorlab/rational.hpp"

#include <cctype>

namespace cantorlab {

BigInt floor_int(const BigRational& q) {
    BigInt n = num(q), d = den(q);
    if (n >= 0) return n / d;
    return -((-n + d - 1) / d);
}

BigInt ceil_int(const BigRational& q) { return -floor_int(-q); }

BigRational rat_pow(const BigRational& q, long e) {
    if (e == 0) return BigRational(1);
    if (e < 0) {
        if (q == 0) fail(Errc::DivisionByZero, "rat_pow: 0 to a negative power");
        return 1 / rat_pow(q, -e);
    }
    BigInt n = boost::multiprecision::pow(num(q), static_cast<unsigned>(e));
    BigInt d = boost::multiprecision::pow(den(q), static_cast<unsigned>(e));
    return BigRational(n, d);
}

BigInt iroot_floor(const BigInt& x, unsigned n) {
    if (x < 0) fail(Errc::InvalidArgument, "iroot_floor: negative radicand");
    if (n == 0) fail(Errc::InvalidArgument, "iroot_floor: zeroth root");
    if (x == 0 || x == 1 || n == 1) return x;
    unsigned bits = boost::multiprecision::msb(x) + 1;
    BigInt lo = BigInt(1) << ((bits - 1) / n);  // lo^n <= x
    BigInt hi = (BigInt(1) << (bits / n + 1));  // hi^n > x
    while (hi - lo > 1) {
        BigInt m = (lo + hi) / 2;
        if (boost::multiprecision::pow(m, n) <= x)
            lo = m;
        else
            hi = m;
    }
    return lo;
}

BigInt iroot_ceil(const BigInt& x, unsigned n) {
    BigInt r = iroot_floor(x, n);
    if (boost::multiprecision::pow(r, n) == x) return r;
    return r + 1;
}

namespace {

// Scale exponent giving relative precision: for x < 1 the plain 2^-prec grid
// swamps tiny radicands, so widen by the magnitude deficit.
unsigned root_scale_bits(const BigRational& x, unsigned n, unsigned prec_bits) {
    long mag = static_cast<long>(boost::multiprecision::msb(num(x))) -
               static_cast<long>(boost::multiprecision::msb(den(x)));
    unsigned extra = 0;
    if (mag < 0) extra = static_cast<unsigned>((-mag) / n + 2);
    return prec_bits + extra;
}

}  // namespace

BigRational nth_root_upper(const BigRational& x, unsigned n, unsigned prec_bits) {
    if (x < 0) fail(Errc::InvalidArgument, "nth_root_upper: negative radicand");
    if (x == 0) return BigRational(0);
    unsigned s = root_scale_bits(x, n, prec_bits);
    BigInt scaled = ceil_int(x * rat_pow(BigRational(2), static_cast<long>(n) * s));
    BigInt r = iroot_ceil(scaled, n);
    return BigRational(r, BigInt(1) << s);
}

BigRational nth_root_lower(const BigRational& x, unsigned n, unsigned prec_bits) {
    if (x < 0) fail(Errc::InvalidArgument, "nth_root_lower: negative radicand");
    if (x == 0) return BigRational(0);
    unsigned s = root_scale_bits(x, n, prec_bits);
    BigInt scaled = floor_int(x * rat_pow(BigRational(2), static_cast<long>(n) * s));
    BigInt r = iroot_floor(scaled, n);
    return BigRational(r, BigInt(1) << s);
}

namespace {

BigRational parse_decimal(const std::string& s) {
    // [sign] digits [. digits] [ (e|E) [sign] digits ]
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string int_part, frac_part;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
    }
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        if (digits.empty()) fail(Errc::ParseError, "bad exponent in rational literal: " + s);
        exp10 = std::stol(digits);
        if (eneg) exp10 = -exp10;
    }
    if (i != s.size() || (int_part.empty() && frac_part.empty()))
        fail(Errc::ParseError, "bad rational literal: " + s);
    BigInt mantissa(int_part.empty() ? "0" : int_part);
    for (char c : frac_part) mantissa = mantissa * 10 + (c - '0');
    long e = exp10 - static_cast<long>(frac_part.size());
    BigRational q(mantissa);
    q *= rat_pow(BigRational(10), e);
    return neg ? BigRational(-q) : q;
}

}  // namespace

BigRational parse_rational(const std::string& s) {
    if (s.empty()) fail(Errc::ParseError, "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty()) fail(Errc::ParseError, "bad rational literal: " + s);
        try {
            BigInt n(ns), d(ds);
            if (d == 0) fail(Errc::ParseError, "zero denominator: " + s);
            return BigRational(n, d);
        } catch (const std::runtime_error&) {
            fail(Errc::ParseError, "bad rational literal: " + s);
        }
    }
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        return parse_decimal(s);
    try {
        return BigRational(BigInt(s));
    } catch (const std::runtime_error&) {
        fail(Errc::ParseError, "bad rational literal: " + s);
    }
}

std::string format_rational(const BigRational& q) {
    std::string out = num(q).str();
    if (den(q) != 1) {
        out += '/';
        out += den(q).str();
    }
    return out;
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    BigRational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    BigRational lo = p1, hi = p1;
    for (const BigRational* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (*p > hi) hi = *p;
    }
    return {lo, hi};
}

BigRational abs_upper(const RatInterval& iv) {
    BigRational a = rat_abs(iv.lo), b = rat_abs(iv.hi);
    return a > b ? a : b;
}

RatInterval dyadic_round_out(const RatInterval& iv, unsigned bits) {
    BigInt scale = BigInt(1) << bits;
    BigInt lo = floor_int(iv.lo * BigRational(scale));
    BigInt hi = ceil_int(iv.hi * BigRational(scale));
    return {BigRational(lo, scale), BigRational(hi, scale)};
}

namespace {

BigRational round_sig(const BigRational& x, unsigned bits, bool up) {
    if (x <= 0) {
        if (x == 0) return x;
        fail(Errc::InvalidArgument, "significant-bit rounding expects positive input");
    }
    BigInt a = num(x), b = den(x);
    long t = static_cast<long>(boost::multiprecision::msb(a)) -
             static_cast<long>(boost::multiprecision::msb(b)) - static_cast<long>(bits);
    BigInt m;
    if (t >= 0) {
        BigInt scaled_den = b << static_cast<unsigned>(t);
        if (up)
            m = (a + scaled_den - 1) / scaled_den;
        else
            m = a / scaled_den;
        return BigRational(m << static_cast<unsigned>(t));
    }
    BigInt scaled_num = a << static_cast<unsigned>(-t);
    if (up)
        m = (scaled_num + b - 1) / b;
    else
        m = scaled_num / b;
    return BigRational(m, BigInt(1) << static_cast<unsigned>(-t));
}

}  // namespace

BigRational round_down_sig(const BigRational& x, unsigned bits) { return round_sig(x, bits, false); }
BigRational round_up_sig(const BigRational& x, unsigned bits) { return round_sig(x, bits, true); }

}  // namespace cantorlab
