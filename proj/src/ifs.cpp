#include "cantorlab/ifs.hpp"

#include <algorithm>

namespace cantorlab {

HomogeneousIFS HomogeneousIFS::make(AlgebraicReal ratio, std::vector<AlgebraicReal> digits) {
    if (ratio.sign() <= 0 || (ratio - AlgebraicReal(1)).sign() >= 0)
        fail(Errc::InvalidArgument, "contraction ratio must lie in (0,1)");
    if (digits.size() < 2) fail(Errc::InvalidArgument, "an IFS needs at least two digits");
    for (size_t i = 1; i < digits.size(); ++i)
        if (digits[i - 1].compare(digits[i]) >= 0)
            fail(Errc::InvalidArgument, "digits must be strictly increasing");
    AlgebraicReal one_minus = AlgebraicReal(1) - ratio;
    HomogeneousIFS out;
    out.hull_lo = digits.front() / one_minus;
    out.hull_hi = digits.back() / one_minus;
    out.ratio = std::move(ratio);
    out.digits = std::move(digits);
    return out;
}

HomogeneousIFS HomogeneousIFS::central_cantor(const AlgebraicReal& rho) {
    if (rho.sign() <= 0 || (AlgebraicReal(BigRational(1, 2)) - rho).sign() <= 0)
        fail(Errc::InvalidArgument, "central Cantor ratio must lie in (0, 1/2)");
    return make(rho, {AlgebraicReal(0), AlgebraicReal(1) - rho});
}

HomogeneousIFS HomogeneousIFS::cantor_p_set(long p, const std::vector<long>& digit_values) {
    if (p < 2) fail(Errc::InvalidArgument, "Cantor p-set requires p >= 2");
    if (digit_values.size() < 2 || digit_values.size() >= static_cast<size_t>(p))
        fail(Errc::InvalidArgument, "digit set must be a proper subset with at least two digits");
    std::vector<AlgebraicReal> ds;
    for (long d : digit_values) {
        if (d < 0 || d >= p) fail(Errc::InvalidArgument, "digit out of range");
        ds.push_back(AlgebraicReal(BigRational(d, p)));
    }
    return make(AlgebraicReal(BigRational(1, p)), std::move(ds));
}

bool HomogeneousIFS::all_rational() const {
    if (!ratio.is_rational()) return false;
    for (const AlgebraicReal& d : digits)
        if (!d.is_rational()) return false;
    return true;
}

bool HomogeneousIFS::is_central_cantor() const {
    if (digits.size() != 2) return false;
    if (digits[0].sign() != 0) return false;
    return (digits[1] - (AlgebraicReal(1) - ratio)).sign() == 0 &&
           (AlgebraicReal(BigRational(1, 2)) - ratio).sign() > 0;
}

HomogeneousIFS HomogeneousIFS::reflected() const {
    // 2M - F where M is the hull midpoint: digits d -> 2M(1-ratio) - d, re-sorted
    AlgebraicReal two_m = hull_lo + hull_hi;
    AlgebraicReal scale = two_m * (AlgebraicReal(1) - ratio);
    std::vector<AlgebraicReal> ds;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) ds.push_back(scale - *it);
    HomogeneousIFS out;
    out.ratio = ratio;
    out.digits = std::move(ds);
    out.hull_lo = hull_lo;
    out.hull_hi = hull_hi;
    return out;
}

long IntervalCover::find(const BigRational& x) const {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                               [](const BigRational& v, const RatInterval& iv) { return v < iv.lo; });
    if (it == intervals.begin()) return -1;
    --it;
    return it->contains(x) ? it - intervals.begin() : -1;
}

bool IntervalCover::covers(const RatInterval& iv) const {
    long i = find(iv.lo);
    return i >= 0 && intervals[static_cast<size_t>(i)].contains(iv);
}

bool IntervalCover::disjoint_from(const RatInterval& iv) const {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), iv.lo,
                               [](const BigRational& v, const RatInterval& k) { return v < k.lo; });
    if (it != intervals.begin()) {
        auto prev = it - 1;
        if (prev->hi >= iv.lo) return false;
    }
    if (it != intervals.end() && it->lo <= iv.hi) return false;
    return true;
}

std::pair<AlgebraicReal, AlgebraicReal> cylinder_interval(const HomogeneousIFS& ifs,
                                                          const Coding& word) {
    AlgebraicReal scale(1), shift(0);
    for (int letter : word) {
        if (letter < 0 || static_cast<size_t>(letter) >= ifs.digits.size())
            fail(Errc::InvalidLetter, "cylinder word letter out of range");
        shift = shift + scale * ifs.digits[static_cast<size_t>(letter)];
        scale = scale * ifs.ratio;
    }
    return {shift + scale * ifs.hull_lo, shift + scale * ifs.hull_hi};
}

namespace {

std::vector<RatInterval> merge_sorted(std::vector<RatInterval> v) {
    std::sort(v.begin(), v.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    std::vector<RatInterval> out;
    for (RatInterval& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            if (iv.hi > out.back().hi) out.back().hi = std::move(iv.hi);
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

struct EnclosedIFS {
    RatInterval ratio;
    std::vector<RatInterval> digits;
    RatInterval hull;
    bool exact = false;
    unsigned bits = 0;
};

EnclosedIFS enclose_ifs(const HomogeneousIFS& ifs, int depth, unsigned bits) {
    EnclosedIFS e;
    e.exact = ifs.all_rational();
    if (e.exact) {
        e.ratio = RatInterval::point(ifs.ratio.rational());
        for (const AlgebraicReal& d : ifs.digits) e.digits.push_back(RatInterval::point(d.rational()));
        e.hull = RatInterval(ifs.hull_lo.rational(), ifs.hull_hi.rational());
        return e;
    }
    if (bits == 0) bits = std::max(128u, 64u + 8u * static_cast<unsigned>(std::max(depth, 0)));
    e.bits = bits;
    e.ratio = ifs.ratio.enclosure_bits(bits + 16);
    for (const AlgebraicReal& d : ifs.digits) e.digits.push_back(d.enclosure_bits(bits + 16));
    e.hull = RatInterval(ifs.hull_lo.enclosure_bits(bits + 16).lo,
                         ifs.hull_hi.enclosure_bits(bits + 16).hi);
    return e;
}

}  // namespace

IntervalCover level_cover(const HomogeneousIFS& ifs, int depth, const CoverOptions& opt) {
    if (depth < 0) fail(Errc::InvalidArgument, "cover depth must be >= 0");
    EnclosedIFS e = enclose_ifs(ifs, depth, opt.bits);
    std::vector<RatInterval> cur{e.hull};
    for (int k = 0; k < depth; ++k) {
        long pre = static_cast<long>(cur.size()) * static_cast<long>(e.digits.size());
        if (pre > opt.budget)
            fail(Errc::DepthBudgetExceeded,
                 "level cover would exceed the cylinder budget at depth " + std::to_string(k + 1));
        std::vector<RatInterval> next;
        next.reserve(static_cast<size_t>(pre));
        for (const RatInterval& iv : cur)
            for (const RatInterval& d : e.digits) {
                RatInterval img = e.ratio * iv + d;
                if (!e.exact) img = dyadic_round_out(img, e.bits);
                next.push_back(std::move(img));
            }
        cur = merge_sorted(std::move(next));
    }
    IntervalCover out;
    out.intervals = std::move(cur);
    out.level = depth;
    out.source = "level_cover";
    return out;
}

std::vector<RatInterval> gaps(const IntervalCover& cover) {
    if (cover.empty()) fail(Errc::InvalidArgument, "gaps of an empty cover");
    std::vector<RatInterval> out;
    for (size_t i = 1; i < cover.intervals.size(); ++i)
        out.emplace_back(cover.intervals[i - 1].hi, cover.intervals[i].lo);
    return out;
}

std::optional<BigRational> min_gap(const IntervalCover& cover) {
    if (cover.size() <= 1) return std::nullopt;
    std::optional<BigRational> best;
    for (size_t i = 1; i < cover.intervals.size(); ++i) {
        BigRational g = cover.intervals[i].lo - cover.intervals[i - 1].hi;
        if (!best || g < *best) best = g;
    }
    return best;
}

MembershipResult contains_point(const HomogeneousIFS& ifs, const AlgebraicReal& x, int depth,
                                const CoverOptions& opt) {
    if (depth < 1) fail(Errc::InvalidArgument, "membership scan needs depth >= 1");
    EnclosedIFS e = enclose_ifs(ifs, depth, opt.bits);
    std::vector<RatInterval> cur{e.hull};
    for (int k = 1; k <= depth; ++k) {
        std::vector<RatInterval> next;
        for (const RatInterval& iv : cur)
            for (const RatInterval& d : e.digits) {
                RatInterval img = e.ratio * iv + d;
                if (!e.exact) img = dyadic_round_out(img, e.bits);
                next.push_back(std::move(img));
            }
        cur = merge_sorted(std::move(next));
        IntervalCover cov;
        cov.intervals = cur;
        cov.level = k;
        bool certified_out = false;
        if (x.is_rational()) {
            certified_out = cov.find(x.rational()) < 0;
        } else {
            // refine x until its enclosure sits inside one interval or in a gap;
            // exclusion must be certified, so an undecided scan counts as "in"
            BigRational w(1, 16);
            for (int it = 0; it < 300; ++it) {
                RatInterval xe = x.enclosure(w);
                long i = cov.find(xe.lo);
                if (i >= 0 && cov.intervals[static_cast<size_t>(i)].contains(xe)) break;
                if (cov.disjoint_from(xe)) {
                    certified_out = true;
                    break;
                }
                w /= 256;
            }
        }
        if (certified_out) {
            MembershipResult r;
            r.excluded = true;
            r.depth = k;
            // witnessing gap around x
            RatInterval xe = x.is_rational() ? RatInterval::point(x.rational())
                                             : x.enclosure(BigRational(1, BigInt(1) << 80));
            BigRational glo = cov.intervals.empty() ? xe.lo - 1 : xe.lo - 1;
            BigRational ghi = xe.hi + 1;
            for (const RatInterval& iv : cov.intervals) {
                if (iv.hi < xe.lo && iv.hi > glo) glo = iv.hi;
                if (iv.lo > xe.hi && iv.lo < ghi) ghi = iv.lo;
            }
            r.gap = RatInterval(glo, ghi);
            return r;
        }
    }
    MembershipResult r;
    r.excluded = false;
    r.depth = depth;
    return r;
}

namespace {

// Rounded binary exponentiation of positive bounds.
BigRational pow_bound(const BigRational& x, const BigInt& e, unsigned bits, bool up) {
    BigRational acc(1), base = x;
    BigInt k = e;
    while (k > 0) {
        if ((k & 1) != 0) acc = up ? round_up_sig(acc * base, bits) : round_down_sig(acc * base, bits);
        base = up ? round_up_sig(base * base, bits) : round_down_sig(base * base, bits);
        k >>= 1;
    }
    return acc;
}

// Enclosure of base^(p/q) for an enclosed positive base. Roots are taken
// before the power so intermediate magnitudes stay near 1 even for dyadic
// exponents with large denominators; exact point interval when the rational
// power is itself rational.
RatInterval pow_enclosure(const RatInterval& base, const BigRational& s, unsigned bits) {
    if (s == 0) return RatInterval::point(BigRational(1));
    BigInt p = num(s), q = den(s);
    if (p < 0) fail(Errc::InvalidArgument, "pow_enclosure: negative exponent");
    if (base.lo <= 0) fail(Errc::InvalidArgument, "pow_enclosure: base must be positive");
    if (q == 1 && p <= 4096) {
        unsigned pe = static_cast<unsigned>(p);
        return {rat_pow(base.lo, pe), rat_pow(base.hi, pe)};
    }
    // exact q-th root of an exact power?
    if (base.is_point() && p <= 4096 && q <= 64) {
        unsigned pe = static_cast<unsigned>(p), qe = static_cast<unsigned>(q);
        BigRational xp = rat_pow(base.lo, pe);
        BigInt rn = iroot_floor(num(xp), qe), rd = iroot_floor(den(xp), qe);
        if (boost::multiprecision::pow(rn, qe) == num(xp) &&
            boost::multiprecision::pow(rd, qe) == den(xp))
            return RatInterval::point(BigRational(rn, rd));
    }
    unsigned rb = bits + (p > 1 ? static_cast<unsigned>(boost::multiprecision::msb(p)) : 0u) + 16;
    // q = 2^k * q_odd; take the odd root once, then k square roots
    BigInt qn = q;
    unsigned twos = 0;
    while ((qn & 1) == 0) {
        qn >>= 1;
        ++twos;
    }
    if (qn > 1024) fail(Errc::InvalidArgument, "pow_enclosure: unsupported odd root order");
    BigRational lo = base.lo, hi = base.hi;
    if (qn > 1) {
        lo = nth_root_lower(lo, static_cast<unsigned>(qn), rb);
        hi = nth_root_upper(hi, static_cast<unsigned>(qn), rb);
    }
    for (unsigned k = 0; k < twos; ++k) {
        lo = nth_root_lower(lo, 2, rb);
        hi = nth_root_upper(hi, 2, rb);
    }
    return {pow_bound(lo, p, rb, false), pow_bound(hi, p, rb, true)};
}

struct MonotoneEval {
    // g must be strictly decreasing in s; returns interval enclosure of g(s).
    virtual RatInterval eval(const BigRational& s, unsigned bits) const = 0;
    // Exact sign when an algebraic route applies (e.g. all ratios are powers
    // of one rational base, so g(p/q) lives in Q(base^(1/q))).
    virtual std::optional<int> exact_sign(const BigRational& s) const = 0;
    virtual ~MonotoneEval() = default;
};

// Bisection on a strictly decreasing g with g(0) >= 0.
RatInterval decreasing_root(const MonotoneEval& g, const BigRational& tol) {
    auto sign_at = [&](const BigRational& s) -> int {
        for (unsigned bits = 48;; bits *= 4) {
            RatInterval v = g.eval(s, bits);
            if (v.lo > 0) return 1;
            if (v.hi < 0) return -1;
            if (v.is_point()) return 0;
            if (bits >= 192) {
                std::optional<int> es = g.exact_sign(s);
                if (es) return *es;
            }
            if (bits > 1u << 14)
                fail(Errc::InvalidArgument, "root sign undecided at extreme precision");
        }
    };
    int s0 = sign_at(BigRational(0));
    if (s0 == 0) return RatInterval::point(BigRational(0));
    if (s0 < 0) fail(Errc::InvalidArgument, "no nonnegative root: g(0) < 0");
    BigRational hi(1);
    while (sign_at(hi) > 0) hi *= 2;
    if (sign_at(hi) == 0) return RatInterval::point(hi);
    BigRational lo(0);
    while (hi - lo > tol) {
        BigRational mid = (lo + hi) / 2;
        int sm = sign_at(mid);
        if (sm == 0) return RatInterval::point(mid);
        if (sm > 0)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

std::vector<RatInterval> enclose_ratios(const std::vector<AlgebraicReal>& ratios, unsigned bits) {
    std::vector<RatInterval> out;
    for (const AlgebraicReal& r : ratios) {
        if (r.sign() <= 0 || (r - AlgebraicReal(1)).sign() >= 0)
            fail(Errc::InvalidArgument, "ratios must lie in (0,1)");
        out.push_back(r.is_rational() ? RatInterval::point(r.rational()) : r.enclosure_bits(bits));
    }
    return out;
}

// All-rational ratio lists expressible as b^e_i for one rational base b allow
// exact sign evaluation at rational s via a single radical b^(1/q).
struct CommonBase {
    BigRational base;
    std::vector<long> exponents;
};

std::optional<CommonBase> common_base(const std::vector<AlgebraicReal>& ratios) {
    CommonBase cb;
    cb.base = BigRational(1);
    for (const AlgebraicReal& r : ratios) {
        if (!r.is_rational()) return std::nullopt;
        if (cb.base == 1 || r.rational() < cb.base) cb.base = r.rational();
    }
    for (const AlgebraicReal& r : ratios) {
        BigRational acc = cb.base;
        long e = 1;
        // base is the minimum, so each ratio = base^e needs e decreasing powers
        bool found = false;
        for (; e <= 64; ++e) {
            if (acc == r.rational()) {
                found = true;
                break;
            }
            acc *= cb.base;
        }
        if (!found) {
            // retry with ratio as power series of base is hopeless; check the
            // other direction: every ratio must be a positive power of base
            return std::nullopt;
        }
        cb.exponents.push_back(e);
    }
    return cb;
}

std::optional<AlgebraicReal> radical_of(const BigRational& base, const BigRational& s,
                                        long extra_power) {
    // base^(s * extra) as an AlgebraicReal, for s = p/q with modest q
    BigInt p = num(s) * extra_power, q = den(s);
    if (q > 64 || p > 4096 || p < 0) return std::nullopt;
    long pl = static_cast<long>(p), ql = static_cast<long>(q);
    BigRational bp = rat_pow(base, pl);
    if (ql == 1) return AlgebraicReal(bp);
    // positive real root of x^q - base^p in (0, 1]
    std::vector<BigInt> c(static_cast<size_t>(ql) + 1, BigInt(0));
    c[0] = -num(bp);
    c[static_cast<size_t>(ql)] = den(bp);
    return AlgebraicReal::algebraic(IntPolynomial(std::move(c)),
                                    RatInterval(BigRational(0), BigRational(2)));
}

}  // namespace

RatInterval similarity_dimension(const std::vector<AlgebraicReal>& ratios, const BigRational& tol) {
    if (ratios.empty()) fail(Errc::InvalidArgument, "similarity dimension of an empty system");
    struct Eval : MonotoneEval {
        const std::vector<AlgebraicReal>* ratios;
        RatInterval eval(const BigRational& s, unsigned bits) const override {
            std::vector<RatInterval> rs = enclose_ratios(*ratios, bits + 16);
            RatInterval sum(BigRational(0), BigRational(0));
            for (const RatInterval& r : rs) sum = sum + pow_enclosure(r, s, bits);
            sum.lo -= 1;
            sum.hi -= 1;
            return sum;
        }
        std::optional<int> exact_sign(const BigRational& s) const override {
            std::optional<CommonBase> cb = common_base(*ratios);
            if (!cb) return std::nullopt;
            // u = base^(1/q); ratio_i^s = u^(e_i * p)
            std::optional<AlgebraicReal> u = radical_of(cb->base, BigRational(1, den(s)), 1);
            if (!u) return std::nullopt;
            BigInt p = num(s);
            if (p < 0 || p > 4096) return std::nullopt;
            AlgebraicReal g(0);
            for (long e : cb->exponents) g = g + u->pow(e * static_cast<long>(p));
            return (g - AlgebraicReal(1)).sign();
        }
    } g;
    g.ratios = &ratios;
    return decreasing_root(g, tol);
}

RatInterval solve_s_n(const std::vector<AlgebraicReal>& ratios, int n, const BigRational& tol) {
    if (ratios.empty() || n < 1) fail(Errc::InvalidArgument, "solve_s_n: need ratios and n >= 1");
    struct Eval : MonotoneEval {
        const std::vector<AlgebraicReal>* ratios;
        int n;
        RatInterval eval(const BigRational& s, unsigned bits) const override {
            std::vector<RatInterval> rs = enclose_ratios(*ratios, bits + 16);
            RatInterval bmin = rs[0];
            for (const RatInterval& r : rs)
                if (r.lo < bmin.lo) bmin = r;
            RatInterval sum(BigRational(0), BigRational(0));
            for (const RatInterval& r : rs) sum = sum + pow_enclosure(r, s, bits);
            // (sum_i b_i^s)^n - b_min^(n s) - 1
            RatInterval powed(BigRational(1), BigRational(1));
            for (int k = 0; k < n; ++k) powed = powed * sum;
            RatInterval bm = pow_enclosure(bmin, s * n, bits);
            RatInterval out = powed - bm;
            out.lo -= 1;
            out.hi -= 1;
            return out;
        }
        std::optional<int> exact_sign(const BigRational& s) const override {
            std::optional<CommonBase> cb = common_base(*ratios);
            if (!cb) return std::nullopt;
            std::optional<AlgebraicReal> u = radical_of(cb->base, BigRational(1, den(s)), 1);
            if (!u) return std::nullopt;
            BigInt p = num(s);
            if (p < 0 || p > 4096) return std::nullopt;
            long emin = *std::min_element(cb->exponents.begin(), cb->exponents.end());
            AlgebraicReal sum(0);
            for (long e : cb->exponents) sum = sum + u->pow(e * static_cast<long>(p));
            AlgebraicReal gval =
                sum.pow(n) - u->pow(emin * static_cast<long>(p) * n) - AlgebraicReal(1);
            return gval.sign();
        }
    } g;
    g.ratios = &ratios;
    g.n = n;
    return decreasing_root(g, tol);
}

AlgebraicReal coding_to_point(const HomogeneousIFS& cantor, const Coding& prefix,
                              const CodingTail& tail) {
    if (!cantor.is_central_cantor())
        fail(Errc::InvalidArgument, "coding map is defined for central Cantor sets");
    const AlgebraicReal& a = cantor.ratio;
    AlgebraicReal one_minus = AlgebraicReal(1) - a;
    AlgebraicReal acc(0), apow(1);
    for (int z : prefix) {
        if (z != 0 && z != 1) fail(Errc::InvalidLetter, "coding letters must be 0 or 1");
        if (z == 1) acc = acc + apow;
        apow = apow * a;
    }
    AlgebraicReal tail_value(0);
    switch (tail.kind) {
        case TailKind::Zeros:
            break;
        case TailKind::Ones:
            tail_value = AlgebraicReal(1) / one_minus;
            break;
        case TailKind::Periodic: {
            if (tail.pattern.empty()) fail(Errc::InvalidArgument, "periodic tail needs a pattern");
            AlgebraicReal pat(0), p(1);
            for (int z : tail.pattern) {
                if (z != 0 && z != 1) fail(Errc::InvalidLetter, "coding letters must be 0 or 1");
                if (z == 1) pat = pat + p;
                p = p * a;
            }
            tail_value = pat / (AlgebraicReal(1) - a.pow(static_cast<long>(tail.pattern.size())));
            break;
        }
    }
    return one_minus * (acc + apow * tail_value);
}

Coding extract_coding(const HomogeneousIFS& cantor, const AlgebraicReal& x, int n) {
    if (!cantor.is_central_cantor())
        fail(Errc::InvalidArgument, "coding extraction is defined for central Cantor sets");
    const AlgebraicReal& a = cantor.ratio;
    AlgebraicReal one_minus = AlgebraicReal(1) - a;
    AlgebraicReal cur = x;
    Coding out;
    for (int k = 0; k < n; ++k) {
        // left cylinder [0, alpha], right cylinder [1-alpha, 1]
        bool in_left = cur.sign() >= 0 && (cur - a).sign() <= 0;
        bool in_right = (cur - one_minus).sign() >= 0 && (cur - AlgebraicReal(1)).sign() <= 0;
        if (in_left && in_right) fail(Errc::CodingAmbiguous, "point admits two codings");
        if (!in_left && !in_right)
            fail(Errc::InvalidArgument, "point leaves the attractor during coding extraction");
        if (in_left) {
            out.push_back(0);
            cur = cur / a;
        } else {
            out.push_back(1);
            cur = (cur - one_minus) / a;
        }
    }
    return out;
}

UniquenessResult is_set_of_uniqueness(const HomogeneousIFS& ifs) {
    UniquenessResult out;
    // Salem-Zygmund frame requires branch count below 1/ratio
    AlgebraicReal l_alpha = AlgebraicReal(static_cast<long>(ifs.branch_count())) * ifs.ratio;
    if ((l_alpha - AlgebraicReal(1)).sign() >= 0)
        fail(Errc::InvalidArgument, "uniqueness frame requires branch_count < 1/ratio");
    AlgebraicReal theta = AlgebraicReal(1) / ifs.ratio;

    if (theta.is_rational() && den(theta.rational()) != 1) {
        out.verdict = UniquenessClass::Multiplicity;
        out.pisot.not_pisot_certified = true;
        out.pisot.minimality = Minimality::Verified;
        out.reason = "1/ratio is a non-integer rational, hence not an algebraic integer";
        return out;
    }
    out.pisot = is_pisot(theta);

    // digits rescaled to the [0, 1-alpha] frame must lie in Q(theta); rational
    // digits always do, same-field algebraic digits do by construction
    bool digits_in_field = true;
    FieldPtr tf = theta.field();
    for (const AlgebraicReal& d : ifs.digits) {
        if (d.is_rational()) continue;
        if (tf && d.field() == tf) continue;
        digits_in_field = false;
    }

    if (out.pisot.is_pisot && out.pisot.minimality == Minimality::Verified && digits_in_field) {
        out.verdict = UniquenessClass::Uniqueness;
        out.reason = "1/ratio is Pisot (verified minimality) and digits lie in Q(theta)";
    } else if (out.pisot.not_pisot_certified) {
        out.verdict = UniquenessClass::Multiplicity;
        out.reason = "1/ratio is certifiably not Pisot: " + out.pisot.detail;
    } else {
        out.verdict = UniquenessClass::Unknown;
        if (!digits_in_field)
            out.reason = "digit field membership undecidable with implemented machinery";
        else if (out.pisot.minimality != Minimality::Verified)
            out.reason = "minimality of the defining polynomial is unverified";
        else
            out.reason = "Pisot verdict inconclusive: " + out.pisot.detail;
    }
    return out;
}

}  // namespace cantorlab
