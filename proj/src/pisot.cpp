#include "cantorlab/pisot.hpp"

#include <algorithm>

namespace cantorlab {

namespace {

using IvPoly = std::vector<RatInterval>;  // constant first, interval coefficients

// Synthetic division of an interval polynomial by (x - r), r enclosed.
IvPoly deflate(const IvPoly& a, const RatInterval& r) {
    if (a.size() < 2) fail(Errc::InvalidArgument, "deflate: degree underflow");
    IvPoly b(a.size() - 1);
    b.back() = a.back();
    for (size_t i = a.size() - 2; i >= 1; --i) {
        b[i - 1] = a[i] + r * b[i];
        if (i == 1) break;
    }
    return b;
}

IvPoly graeffe_step(const IvPoly& p) {
    // p = E(x^2) + x O(x^2);  next(y) = (-1)^n (E(y)^2 - y O(y)^2), roots squared
    size_t n = p.size() - 1;
    IvPoly even((n / 2) + 1, RatInterval(BigRational(0), BigRational(0)));
    IvPoly odd(((n + 1) / 2), RatInterval(BigRational(0), BigRational(0)));
    for (size_t i = 0; i < p.size(); ++i) {
        if (i % 2 == 0)
            even[i / 2] = p[i];
        else
            odd[i / 2] = p[i];
    }
    auto sq = [](const IvPoly& a) {
        IvPoly c(a.empty() ? 1 : 2 * a.size() - 1, RatInterval(BigRational(0), BigRational(0)));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < a.size(); ++j) c[i + j] = c[i + j] + a[i] * a[j];
        return c;
    };
    IvPoly e2 = sq(even), o2 = sq(odd);
    IvPoly out(n + 1, RatInterval(BigRational(0), BigRational(0)));
    for (size_t i = 0; i < e2.size() && i <= n; ++i) out[i] = out[i] + e2[i];
    for (size_t i = 0; i + 1 <= n && i < o2.size(); ++i) out[i + 1] = out[i + 1] - o2[i];
    if (n % 2 == 1)
        for (RatInterval& c : out) c = BigRational(-1) * c;
    return out;
}

// Fujiwara: roots of a monic polynomial are bounded by
// 2 max(|a_{n-1}|, |a_{n-2}|^(1/2), ..., |a_1|^(1/(n-1)), |a_0/2|^(1/n)).
BigRational fujiwara_bound(const IvPoly& p) {
    size_t n = p.size() - 1;
    BigRational best(0);
    for (size_t i = 0; i < n; ++i) {
        BigRational m = abs_upper(p[i]);
        if (i == 0) m /= 2;
        if (m == 0) continue;
        BigRational r = nth_root_upper(m, static_cast<unsigned>(n - i));
        if (r > best) best = r;
    }
    return 2 * best;
}

}  // namespace

BigRational conjugate_modulus_bound(const IntPolynomial& p, const RatInterval& excluded,
                                    int graeffe_iterations) {
    IntPolynomial q = square_free_part(p);
    if (q.degree() < 1) fail(Errc::InvalidArgument, "conjugate bound needs degree >= 1");
    if (q.sign_at(excluded.lo) == 0 || q.sign_at(excluded.hi) == 0)
        fail(Errc::MultipleRootsInSelector, "selector endpoint is a root");
    {
        SturmChain chain(q);
        if (chain.count_roots(excluded.lo, excluded.hi) != 1)
            fail(Errc::MultipleRootsInSelector, "selector must isolate exactly one real root");
    }
    if (q.degree() == 1) return BigRational(0);

    std::vector<IsolatedRoot> roots = isolate_real_roots(q);
    // partition into designated vs other; refine until each bracket is inside
    // or outside the selector
    const BigRational tight(BigInt(1), BigInt(1) << 40);
    BigRational real_bound(0);
    int designated = -1;
    for (size_t i = 0; i < roots.size(); ++i) {
        RatInterval iv = roots[i].interval;
        while (!(excluded.contains(iv) || !excluded.intersects(iv)))
            iv = refine_isolating_interval(q, iv, iv.width() / 4);
        if (excluded.contains(iv)) {
            designated = static_cast<int>(i);
            roots[i].interval = iv;
            continue;
        }
        iv = refine_isolating_interval(q, iv, tight);
        roots[i].interval = iv;
        BigRational m = abs_upper(iv);
        if (m > real_bound) real_bound = m;
    }
    if (designated < 0) fail(Errc::MultipleRootsInSelector, "selector contains no root");

    int n_real = static_cast<int>(roots.size());
    int n_complex = q.degree() - n_real;
    if (n_complex == 0) return real_bound;

    // complex part: deflate all real roots, Graeffe-square, Fujiwara bound.
    // Deflation precision and per-step outward rounding must outrun the
    // squared-root decay, otherwise the enclosure widths dominate the bound.
    const unsigned base_bits = 96;
    const BigRational deflate_width(BigInt(1), BigInt(1) << (base_bits + 64));
    IvPoly iv_poly(q.coeffs().size());
    for (size_t i = 0; i < iv_poly.size(); ++i)
        iv_poly[i] = RatInterval::point(BigRational(q.coeff(i)));
    for (size_t i = 0; i < roots.size(); ++i) {
        RatInterval r = refine_isolating_interval(q, roots[i].interval, deflate_width);
        iv_poly = deflate(iv_poly, r);
    }
    // leading coefficient of every quotient equals lc(q) exactly
    BigRational lead(q.leading());
    for (RatInterval& c : iv_poly) c = (1 / lead) * c;
    iv_poly.back() = RatInterval::point(BigRational(1));

    IvPoly g = iv_poly;
    long squared = 1;
    for (int t = 0; t < graeffe_iterations; ++t) {
        g = graeffe_step(g);
        squared *= 2;
        unsigned bits = base_bits * static_cast<unsigned>(t + 2);
        for (size_t i = 0; i + 1 < g.size(); ++i) g[i] = dyadic_round_out(g[i], bits);
    }
    BigRational fb = fujiwara_bound(g);
    BigRational complex_bound = nth_root_upper(fb, static_cast<unsigned>(squared));
    BigRational cauchy = cauchy_root_bound(q);  // sound fallback for every root
    if (complex_bound > cauchy) complex_bound = cauchy;
    return std::max(real_bound, complex_bound);
}

PisotVerdict is_pisot(const IntPolynomial& p, const RatInterval& root_selector) {
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "is_pisot on the zero polynomial");
    IntPolynomial q = square_free_part(p);
    if (q.degree() < 1) fail(Errc::InvalidArgument, "is_pisot: degree must be >= 1");
    if (q.sign_at(root_selector.lo) == 0 || q.sign_at(root_selector.hi) == 0)
        fail(Errc::RootNotIsolated, "selector endpoint is a root");
    SturmChain chain(q);
    if (chain.count_roots(root_selector.lo, root_selector.hi) != 1)
        fail(Errc::RootNotIsolated, "selector must isolate exactly one real root");

    // bracket of the designated root inside the selector
    std::vector<IsolatedRoot> roots = isolate_real_roots(q);
    RatInterval root_iv;
    int designated = -1;
    for (size_t i = 0; i < roots.size(); ++i) {
        RatInterval iv = roots[i].interval;
        while (!(root_selector.contains(iv) || !root_selector.intersects(iv)))
            iv = refine_isolating_interval(q, iv, iv.width() / 4);
        roots[i].interval = iv;
        if (designated < 0 && root_selector.contains(iv)) {
            root_iv = iv;
            designated = static_cast<int>(i);
        }
    }
    if (designated < 0) fail(Errc::RootNotIsolated, "selector contains no root");

    // designated root must exceed 1
    while (root_iv.contains(BigRational(1))) {
        if (q.sign_at(BigRational(1)) == 0)
            fail(Errc::RootNotGreaterThanOne, "designated root equals 1");
        root_iv = refine_isolating_interval(q, root_iv, root_iv.width() / 4);
    }
    if (root_iv.hi < 1) fail(Errc::RootNotGreaterThanOne, "designated root is less than 1");

    PisotVerdict v;
    v.minimality = minimality_policy(q);
    v.is_algebraic_integer = (q.leading() == 1);
    v.conjugate_modulus_upper_bound = conjugate_modulus_bound(q, root_iv);
    v.is_pisot = v.is_algebraic_integer && v.conjugate_modulus_upper_bound < 1;

    if (v.is_pisot) return v;
    if (!v.is_algebraic_integer) {
        v.not_pisot_certified = true;
        v.detail = "not an algebraic integer (non-monic minimal polynomial)";
        return v;
    }
    // try to certify the failure exactly
    if (q.sign_at(BigRational(1)) == 0 || q.sign_at(BigRational(-1)) == 0) {
        v.not_pisot_certified = true;
        v.detail = "x = 1 or x = -1 is a conjugate";
        return v;
    }
    const BigRational tight(BigInt(1), BigInt(1) << 40);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(i) == designated) continue;
        RatInterval iv = roots[i].interval;
        while (!(iv.lo >= 1 || iv.hi <= -1 || (iv.hi < 1 && iv.lo > -1))) {
            if (iv.width() < tight) break;
            iv = refine_isolating_interval(q, iv, iv.width() / 4);
        }
        if (iv.lo >= 1 || iv.hi <= -1) {
            v.not_pisot_certified = true;
            v.detail = "a real conjugate has modulus >= 1";
            return v;
        }
    }
    // norm test: for a monic polynomial, |c_0| = theta * prod |conjugates|
    BigRational c0 = rat_abs(BigRational(q.coeff(0)));
    RatInterval th = root_iv;
    for (int it = 0; it < 80 && th.contains(c0); ++it)
        th = refine_isolating_interval(q, th, th.width() / 4);
    if (th.hi <= c0) {
        v.not_pisot_certified = true;
        v.detail = "norm test: |p(0)| >= designated root";
        return v;
    }
    v.detail = "conjugate modulus bound did not certify either direction";
    return v;
}

PisotVerdict is_pisot(const AlgebraicReal& theta) {
    if (theta.is_rational()) {
        const BigRational& t = theta.rational();
        if (t <= 1) fail(Errc::RootNotGreaterThanOne, "theta must exceed 1");
        PisotVerdict v;
        v.minimality = Minimality::Verified;
        v.conjugate_modulus_upper_bound = BigRational(0);
        if (den(t) == 1) {
            v.is_algebraic_integer = true;
            v.is_pisot = true;
        } else {
            v.not_pisot_certified = true;
            v.detail = "not an algebraic integer (non-integer rational)";
        }
        return v;
    }
    PisotVerdict v = is_pisot(theta.defining_polynomial(), theta.isolating_interval());
    // the element's own minimality flag is authoritative for generators
    if (theta.minimality() == Minimality::Verified) v.minimality = Minimality::Verified;
    return v;
}

GarsiaResult garsia_separation(const AlgebraicReal& theta,
                               const std::vector<IntPolynomial>& alphabet) {
    PisotVerdict v = is_pisot(theta);
    if (!v.is_pisot) fail(Errc::NotPisot, "Garsia separation requires a Pisot theta");

    bool all_zero = true;
    for (const IntPolynomial& t : alphabet)
        if (!t.is_zero()) all_zero = false;
    if (alphabet.empty() || all_zero) return {BigRational(1), v.minimality};

    if (theta.is_rational())  // integer theta: nonzero sums are nonzero integers
        return {BigRational(1), v.minimality};

    IntPolynomial P = theta.defining_polynomial();
    RatInterval sel = theta.isolating_interval();
    int k = P.degree() - 1;
    if (k == 0) return {BigRational(1), v.minimality};
    BigRational rho = v.conjugate_modulus_upper_bound;

    // per-digit conjugate magnitude bounds: tight interval evaluation at real
    // conjugates, coefficient-sum bound at complex ones (|z| < 1)
    IntPolynomial q = square_free_part(P);
    std::vector<IsolatedRoot> roots = isolate_real_roots(q);
    const BigRational tight(BigInt(1), BigInt(1) << 40);
    std::vector<RatInterval> real_conj;
    for (const IsolatedRoot& r : roots) {
        RatInterval iv = r.interval;
        while (!(sel.contains(iv) || !sel.intersects(iv)))
            iv = refine_isolating_interval(q, iv, iv.width() / 4);
        if (sel.contains(iv)) continue;  // designated root, not a conjugate
        real_conj.push_back(refine_isolating_interval(q, iv, tight));
    }
    bool has_complex = static_cast<size_t>(q.degree()) != roots.size();

    BigRational M(0);
    for (const IntPolynomial& t : alphabet) {
        BigRational m(0);
        for (const RatInterval& c : real_conj) {
            BigRational b = abs_upper(t.eval_interval(c));
            if (b > m) m = b;
        }
        if (has_complex) {
            BigRational s(0);
            for (const BigInt& ci : t.coeffs()) s += BigRational(boost::multiprecision::abs(ci));
            if (s > m) m = s;
        }
        if (t.degree() <= 0 && !t.is_zero()) m = rat_abs(BigRational(t.coeff(0)));
        if (m > M) M = m;
    }
    if (M == 0) return {BigRational(1), v.minimality};

    BigRational C = rat_pow(1 - rho, k) / rat_pow(M, k);
    return {C, v.minimality};
}

}  // namespace cantorlab
