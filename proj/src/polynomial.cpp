#include "cantorlab/polynomial.hpp"

#include <algorithm>

namespace cantorlab {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPolynomial IntPolynomial::from_ints(std::initializer_list<long> coeffs) {
    std::vector<BigInt> c;
    c.reserve(coeffs.size());
    for (long x : coeffs) c.emplace_back(x);
    return IntPolynomial(std::move(c));
}

void IntPolynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& IntPolynomial::leading() const {
    if (c_.empty()) fail(Errc::ZeroPolynomial, "leading coefficient of the zero polynomial");
    return c_.back();
}

const BigInt& IntPolynomial::coeff(size_t i) const {
    static const BigInt zero(0);
    return i < c_.size() ? c_[i] : zero;
}

int IntPolynomial::sign_at(const BigRational& x) const {
    // Homogenized Horner: sign of sum c_i a^i b^(d-i), all-integer.
    if (c_.empty()) return 0;
    const BigInt a = num(x), b = den(x);
    BigInt acc = c_.back();
    BigInt bpow(1);
    for (size_t i = c_.size() - 1; i-- > 0;) {
        bpow *= b;
        acc = acc * a + c_[i] * bpow;
    }
    return acc.sign();
}

BigRational IntPolynomial::eval(const BigRational& x) const {
    BigRational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + BigRational(c_[i]);
    return acc;
}

RatInterval IntPolynomial::eval_interval(const RatInterval& x) const {
    RatInterval acc(BigRational(0), BigRational(0));
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * x;
        acc.lo += BigRational(c_[i]);
        acc.hi += BigRational(c_[i]);
    }
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return IntPolynomial();
    std::vector<BigInt> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::negated_variable() const {
    std::vector<BigInt> d = c_;
    for (size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
    return IntPolynomial(std::move(d));
}

BigInt IntPolynomial::content() const {
    BigInt g(0);
    for (const BigInt& x : c_) g = boost::multiprecision::gcd(g, x);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (c_.empty()) return IntPolynomial();
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> d = c_;
    for (BigInt& x : d) x /= g;
    return IntPolynomial(std::move(d));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return IntPolynomial();
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty())
            out += c_[i] > 0 ? " + " : " - ";
        else if (c_[i] < 0)
            out += "-";
        BigInt a = boost::multiprecision::abs(c_[i]);
        if (a != 1 || i == 0) out += a.str();
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

namespace {

// Exact pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g, all steps in Z.
IntPolynomial pseudo_rem(const IntPolynomial& f, const IntPolynomial& g) {
    int delta = f.degree() - g.degree() + 1;
    if (delta < 1) return f;
    BigInt scale = boost::multiprecision::pow(g.leading(), static_cast<unsigned>(delta));
    std::vector<BigInt> p = f.coeffs();
    for (BigInt& x : p) x *= scale;
    IntPolynomial r{std::vector<BigInt>(p)};
    while (!r.is_zero() && r.degree() >= g.degree()) {
        BigInt q = r.leading() / g.leading();  // exact for pre-scaled dividend
        int k = r.degree() - g.degree();
        std::vector<BigInt> c = r.coeffs();
        for (int i = 0; i <= g.degree(); ++i) c[static_cast<size_t>(k + i)] -= q * g.coeff(static_cast<size_t>(i));
        r = IntPolynomial(std::move(c));
    }
    return r;
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial f = a.primitive_part(), g = b.primitive_part();
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        IntPolynomial r = pseudo_rem(f, g);
        f = std::move(g);
        g = r.is_zero() ? IntPolynomial() : r.primitive_part();
    }
    return f.primitive_part();
}

IntPolynomial poly_exact_div(const IntPolynomial& p, const IntPolynomial& d) {
    if (d.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
    if (p.is_zero()) return IntPolynomial();
    std::vector<BigRational> rem(p.coeffs().size());
    for (size_t i = 0; i < rem.size(); ++i) rem[i] = BigRational(p.coeff(i));
    int dd = d.degree();
    int qd = p.degree() - dd;
    if (qd < 0) fail(Errc::InvalidArgument, "poly_exact_div: degree underflow");
    std::vector<BigRational> q(static_cast<size_t>(qd) + 1);
    BigRational lead(d.leading());
    for (int k = qd; k >= 0; --k) {
        BigRational coef = rem[static_cast<size_t>(k + dd)] / lead;
        q[static_cast<size_t>(k)] = coef;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<size_t>(k + i)] -= coef * BigRational(d.coeff(static_cast<size_t>(i)));
    }
    for (const BigRational& r : rem)
        if (r != 0) fail(Errc::InvalidArgument, "poly_exact_div: not divisible");
    std::vector<BigInt> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (den(q[i]) != 1) fail(Errc::InvalidArgument, "poly_exact_div: non-integral quotient");
        qi[i] = num(q[i]);
    }
    return IntPolynomial(std::move(qi));
}

IntPolynomial square_free_part(const IntPolynomial& p) {
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "square_free_part of zero polynomial");
    IntPolynomial pp = p.primitive_part();
    if (pp.degree() <= 1) return pp;
    IntPolynomial g = poly_gcd(pp, pp.derivative());
    if (g.degree() == 0) return pp;
    return poly_exact_div(pp, g).primitive_part();
}

BigRational cauchy_root_bound(const IntPolynomial& p) {
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "root bound of zero polynomial");
    BigRational m(0);
    BigInt lead = boost::multiprecision::abs(p.leading());
    for (int i = 0; i < p.degree(); ++i) {
        BigRational r(boost::multiprecision::abs(p.coeff(static_cast<size_t>(i))), lead);
        if (r > m) m = r;
    }
    return m + 1;
}

SturmChain::SturmChain(const IntPolynomial& square_free) {
    chain_.push_back(square_free);
    IntPolynomial d = square_free.derivative();
    if (d.is_zero()) return;
    chain_.push_back(d.primitive_part());
    while (true) {
        const IntPolynomial& f = chain_[chain_.size() - 2];
        const IntPolynomial& g = chain_.back();
        IntPolynomial r = pseudo_rem(f, g);
        if (r.is_zero()) break;
        // prem = lc(g)^delta * rem; the chain needs sign(-rem), so undo the
        // scale's sign before dropping the content.
        int delta = f.degree() - g.degree() + 1;
        bool scale_negative = g.leading() < 0 && delta % 2 == 1;
        BigInt cont = r.content();  // positive
        std::vector<BigInt> c = r.coeffs();
        for (BigInt& x : c) {
            x /= cont;
            if (!scale_negative) x = -x;
        }
        chain_.push_back(IntPolynomial(std::move(c)));
    }
}

int SturmChain::variations_at(const BigRational& x) const {
    int v = 0, prev = 0;
    for (const IntPolynomial& q : chain_) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int SturmChain::count_roots(const BigRational& a, const BigRational& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
}

namespace {

// A point in (lo, hi) at which q does not vanish; q has finitely many roots so
// the probe ladder terminates.
BigRational nonroot_probe(const IntPolynomial& q, const BigRational& lo, const BigRational& hi) {
    BigRational w = hi - lo;
    for (long k = 2;; k = k * 2 + 1) {
        BigRational m = lo + w / k;
        if (q.sign_at(m) != 0) return m;
    }
}

void isolate_recursive(const IntPolynomial& q, const SturmChain& chain, const BigRational& lo,
                       const BigRational& hi, std::vector<IsolatedRoot>& out) {
    int n = chain.count_roots(lo, hi);
    if (n == 0) return;
    int slo = q.sign_at(lo), shi = q.sign_at(hi);
    if (n == 1 && slo * shi < 0) {
        out.push_back({RatInterval(lo, hi), slo, shi});
        return;
    }
    BigRational m = nonroot_probe(q, lo, hi);
    isolate_recursive(q, chain, lo, m, out);
    isolate_recursive(q, chain, m, hi, out);
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const IntPolynomial& p) {
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "cannot isolate roots of the zero polynomial");
    IntPolynomial q = square_free_part(p);
    std::vector<IsolatedRoot> out;
    if (q.degree() < 1) return out;
    SturmChain chain(q);
    BigRational b = cauchy_root_bound(q);
    isolate_recursive(q, chain, -b, b, out);
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& c) {
        return a.interval.lo < c.interval.lo;
    });
    return out;
}

RatInterval refine_isolating_interval(const IntPolynomial& square_free, RatInterval iv,
                                      const BigRational& width) {
    int slo = square_free.sign_at(iv.lo);
    int shi = square_free.sign_at(iv.hi);
    if (slo * shi >= 0)
        fail(Errc::RootNotIsolated, "refine: endpoints do not bracket a sign change");
    while (iv.width() > width) {
        BigRational m = iv.mid();
        int sm = square_free.sign_at(m);
        if (sm == 0) {
            // m is the root itself; bracket it tightly.
            BigRational h = iv.width() / 4;
            while (true) {
                BigRational a = m - h, b = m + h;
                if (a > iv.lo && b < iv.hi && b - a <= width &&
                    square_free.sign_at(a) * square_free.sign_at(b) < 0)
                    return {a, b};
                h /= 2;
            }
        }
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

std::vector<BigRational> rational_roots(const IntPolynomial& p, const RatInterval* window,
                                        bool* complete) {
    if (complete) *complete = true;
    std::vector<BigRational> out;
    if (p.is_zero()) return out;
    IntPolynomial q = p.primitive_part();
    if (q.coeff(0) == 0) {
        BigRational zero(0);
        if (!window || window->contains(zero)) out.push_back(zero);
        std::vector<BigInt> c = q.coeffs();
        size_t k = 0;
        while (k < c.size() && c[k] == 0) ++k;
        q = IntPolynomial(std::vector<BigInt>(c.begin() + static_cast<long>(k), c.end()));
    }
    if (q.degree() < 1) return out;
    BigInt a0 = boost::multiprecision::abs(q.coeff(0));
    BigInt an = boost::multiprecision::abs(q.leading());
    auto divisors = [complete](const BigInt& n) {
        std::vector<BigInt> ds;
        if (n > BigInt("1000000000000")) {
            if (complete) *complete = false;
            ds.push_back(1);
            return ds;
        }
        for (BigInt d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        }
        return ds;
    };
    for (const BigInt& dn : divisors(a0))
        for (const BigInt& dd : divisors(an))
            for (int s : {1, -1}) {
                BigRational cand(s * dn, dd);
                if (window && !window->contains(cand)) continue;
                if (q.sign_at(cand) == 0 && std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using ModPoly = std::vector<int>;  // constant first, coefficients in [0, p)

ModPoly mp_trim(ModPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return mp_trim(std::move(c));
}

// remainder of a by monic f
ModPoly mp_mod(ModPoly a, const ModPoly& f, int p) {
    a = mp_trim(std::move(a));
    while (a.size() >= f.size()) {
        int coef = a.back();
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) {
            a[shift + i] = (a[shift + i] - coef * f[i]) % p;
            if (a[shift + i] < 0) a[shift + i] += p;
        }
        a = mp_trim(std::move(a));
    }
    return a;
}

int mp_inv(int x, int p) {
    for (int k = 1; k < p; ++k)
        if (k * x % p == 1) return k;
    return 0;
}

ModPoly mp_monic(ModPoly v, int p) {
    v = mp_trim(std::move(v));
    if (v.empty()) return v;
    int inv = mp_inv(v.back(), p);
    for (int& x : v) x = x * inv % p;
    return v;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, int p) {
    a = mp_monic(std::move(a), p);
    b = mp_monic(std::move(b), p);
    while (!b.empty()) {
        ModPoly r = mp_mod(a, b, p);
        a = std::move(b);
        b = mp_monic(std::move(r), p);
    }
    return a;
}

ModPoly mp_pow(ModPoly base, int e, const ModPoly& f, int p) {
    ModPoly result{1};
    while (e > 0) {
        if (e & 1) result = mp_mod(mp_mul(result, base, p), f, p);
        base = mp_mod(mp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

ModPoly mp_sub(ModPoly a, const ModPoly& b, int p) {
    a.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); ++i) {
        a[i] = (a[i] - b[i]) % p;
        if (a[i] < 0) a[i] += p;
    }
    return mp_trim(std::move(a));
}

}  // namespace

bool irreducible_mod_p(const IntPolynomial& poly, int prime) {
    int n = poly.degree();
    if (n < 1) return false;
    ModPoly f(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        int v = static_cast<int>(poly.coeff(static_cast<size_t>(i)) % prime);
        if (v < 0) v += prime;
        f[static_cast<size_t>(i)] = v;
    }
    if (f.back() == 0) return false;  // degree dropped mod prime
    f = mp_monic(std::move(f), prime);
    if (n == 1) return true;
    ModPoly x{0, 1};
    // iterated Frobenius: frob[k] = x^(prime^k) mod f
    std::vector<ModPoly> frob(static_cast<size_t>(n) + 1);
    frob[0] = mp_mod(x, f, prime);
    for (int k = 1; k <= n; ++k)
        frob[static_cast<size_t>(k)] = mp_pow(frob[static_cast<size_t>(k - 1)], prime, f, prime);
    if (!mp_sub(frob[static_cast<size_t>(n)], mp_mod(x, f, prime), prime).empty()) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool r_prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) r_prime = false;
        if (!r_prime) continue;
        ModPoly diff = mp_sub(frob[static_cast<size_t>(n / r)], mp_mod(x, f, prime), prime);
        if (mp_gcd(diff, f, prime).size() != 1) return false;
    }
    return true;
}

}  // namespace cantorlab
