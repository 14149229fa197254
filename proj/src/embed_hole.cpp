#include "cantorlab/embed.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cantorlab {

namespace {

bool is_exact_power(const AlgebraicReal& gamma, const AlgebraicReal& alpha, int budget) {
    AlgebraicReal p = alpha;
    for (int j = 1; j <= budget; ++j) {
        int cmp = gamma.compare(p);
        if (cmp == 0) return true;
        if (cmp > 0) return false;  // alpha^j decreases below gamma: no match beyond
        p = p * alpha;
    }
    return false;
}

// sqrt(alpha) < (1-2 alpha)/(1-2 gamma), all quantities in (0, 1/2): square to
// alpha (1-2 gamma)^2 < (1-2 alpha)^2
bool ell_admissible(const AlgebraicReal& alpha, const AlgebraicReal& gamma) {
    AlgebraicReal lhs = alpha * (AlgebraicReal(1) - AlgebraicReal(2) * gamma).pow(2);
    AlgebraicReal rhs = (AlgebraicReal(1) - AlgebraicReal(2) * alpha).pow(2);
    return (rhs - lhs).sign() > 0;
}

}  // namespace

HoleCertificate refute_all_offsets_hole(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                                        const AlgebraicReal& lambda,
                                        const HoleSearchOptions& opt) {
    if (alpha.sign() <= 0 || beta.sign() <= 0 || (alpha - beta).sign() <= 0)
        fail(Errc::InvalidArgument, "need 0 < beta < alpha");
    if ((AlgebraicReal(BigRational(1, 4)) - alpha).sign() <= 0)
        fail(Errc::NotApplicable, "hole argument requires alpha < 1/4");
    if (lambda.sign() <= 0) fail(Errc::InvalidArgument, "lambda must be positive");
    if (is_exact_power(beta, alpha, 64))
        fail(Errc::NotApplicable, "log beta / log alpha is a positive integer");

    AlgebraicReal one(1), two(2);
    AlgebraicReal one_m2a = one - two * alpha;
    for (int ell : opt.primes) {
        AlgebraicReal gamma = beta.pow(ell);
        if (is_exact_power(gamma, alpha, opt.power_check_budget)) continue;
        if (!ell_admissible(alpha, gamma)) continue;
        AlgebraicReal one_m2g = one - two * gamma;
        // alpha^(n+1) < lambda gamma^m  and  lambda gamma^m (1-2g) < alpha^n (1-2a)
        std::vector<AlgebraicReal> apow{one};
        for (long n = 1; n <= opt.max_exponent + 1; ++n) apow.push_back(apow.back() * alpha);
        AlgebraicReal gpow = gamma;
        for (long m = 1; m <= opt.max_exponent; ++m) {
            AlgebraicReal lg = lambda * gpow;
            for (long n = 1; n <= opt.max_exponent; ++n) {
                if ((lg - apow[static_cast<size_t>(n + 1)]).sign() <= 0) continue;
                if ((apow[static_cast<size_t>(n)] * one_m2a - lg * one_m2g).sign() <= 0) continue;
                HoleCertificate hc;
                hc.alpha = alpha;
                hc.beta = beta;
                hc.lambda = lambda;
                hc.ell = ell;
                hc.m = m;
                hc.n = n;
                return hc;
            }
            gpow = gpow * gamma;
        }
    }
    fail(Errc::NotApplicable, "hole search budget exhausted without a certificate");
}

bool verify_hole_certificate(const HoleCertificate& hc) {
    const AlgebraicReal &a = hc.alpha, &b = hc.beta, &l = hc.lambda;
    if (a.sign() <= 0 || b.sign() <= 0 || l.sign() <= 0) return false;
    if ((a - b).sign() <= 0) return false;
    if ((AlgebraicReal(BigRational(1, 2)) - a).sign() <= 0) return false;
    bool prime = hc.ell >= 2;
    for (int d = 2; d * d <= hc.ell; ++d)
        if (hc.ell % d == 0) prime = false;
    if (!prime || hc.m < 1 || hc.n < 1) return false;
    AlgebraicReal one(1), two(2);
    AlgebraicReal gamma = b.pow(hc.ell);
    if ((AlgebraicReal(BigRational(1, 2)) - gamma).sign() <= 0) return false;
    AlgebraicReal lg = l * gamma.pow(hc.m);
    AlgebraicReal an = a.pow(hc.n);
    // eee-1 lower: alpha < lambda gamma^m / alpha^n
    if ((lg - an * a).sign() <= 0) return false;
    // eee-1 upper, equivalently the hole-length comparison
    // lambda gamma^m (1-2 gamma) < alpha^n (1-2 alpha)
    AlgebraicReal one_m2a = one - two * a, one_m2g = one - two * gamma;
    AlgebraicReal hole_in_piece = lg * one_m2g;
    AlgebraicReal hole_in_cover = an * one_m2a;
    return (hole_in_cover - hole_in_piece).sign() > 0;
}

std::pair<AlgebraicReal, AlgebraicReal> rescale_witness(const HomogeneousIFS& E,
                                                        const HomogeneousIFS& F,
                                                        const AlgebraicReal& a,
                                                        const AlgebraicReal& lambda, int n, int k) {
    if (!E.is_central_cantor() || !F.is_central_cantor())
        fail(Errc::InvalidArgument, "witness rescaling is defined for central Cantor pairs");
    if (n < 0 || k < 0) fail(Errc::InvalidArgument, "shift counts must be nonnegative");
    const AlgebraicReal& alpha = E.ratio;
    const AlgebraicReal& beta = F.ratio;
    AlgebraicReal lam_k = lambda * beta.pow(k);

    Coding word = extract_coding(E, a, n);
    auto [cyl_lo, cyl_hi] = cylinder_interval(E, word);
    // the zoomed piece a + lambda beta^k [0,1] must fit inside a's depth-n
    // cylinder; endpoints of the piece are genuine points of it
    if ((a - cyl_lo).sign() < 0 || (cyl_hi - (a + lam_k)).sign() < 0)
        fail(Errc::ScaleConditionViolated,
             "lambda beta^k piece does not fit inside the depth-n cylinder of a");

    AlgebraicReal shifted = a;
    AlgebraicReal one_minus = AlgebraicReal(1) - alpha;
    for (int z : word) {
        if (z == 1) shifted = shifted - one_minus;
        shifted = shifted / alpha;
    }
    AlgebraicReal lam_new = lam_k / alpha.pow(n);
    return {shifted, lam_new};
}

EmbeddingFamilyMember lemma_ex1_family(int k) {
    if (k < 2) fail(Errc::InvalidArgument, "family index must be >= 2");
    // alpha_k: positive root of x (1 + x + ... + x^(k-1))^2 = 1
    std::vector<BigInt> geom(static_cast<size_t>(k), BigInt(1));
    IntPolynomial g{std::move(geom)};
    std::vector<BigInt> xc{BigInt(0), BigInt(1)};
    IntPolynomial x{std::move(xc)};
    IntPolynomial pk = x * g * g - IntPolynomial::from_ints({1});

    AlgebraicReal alpha = AlgebraicReal::algebraic(pk, RatInterval(BigRational(0), BigRational(1)));
    // sqrt(alpha) = alpha + ... + alpha^k inside Q(alpha_k)
    AlgebraicReal root(0), ap = alpha;
    for (int i = 1; i <= k; ++i) {
        root = root + ap;
        ap = ap * alpha;
    }
    AlgebraicReal beta = alpha.pow(k) * root;  // alpha^(k + 1/2) = alpha^((2k+1)/2)
    AlgebraicReal lambda = (AlgebraicReal(1) - alpha) / (AlgebraicReal(1) - beta);

    // construction sanity: (sqrt alpha)^2 == alpha and beta in (0, alpha)
    if (((root * root) - alpha).sign() != 0)
        fail(Errc::InvalidArgument, "family construction: defining radical identity failed");
    if (beta.sign() <= 0 || (alpha - beta).sign() <= 0)
        fail(Errc::InvalidArgument, "family construction: beta out of range");

    EmbeddingFamilyMember out;
    out.alpha = std::move(alpha);
    out.beta = std::move(beta);
    out.lambda = std::move(lambda);
    out.alpha_poly = std::move(pk);
    return out;
}

SignedExpansion unique_signed_expansion(const AlgebraicReal& alpha, const AlgebraicReal& u,
                                        int depth) {
    if (alpha.sign() <= 0 || (AlgebraicReal(BigRational(1, 2)) - alpha).sign() <= 0)
        fail(Errc::InvalidArgument, "alpha must lie in (0, 1/2)");
    if (depth < 1) fail(Errc::InvalidArgument, "depth must be >= 1");
    AlgebraicReal one_minus = AlgebraicReal(1) - alpha;
    // (1-alpha) sum z_i alpha^i with |z_i| <= 1 ranges over [-1, 1]
    if ((u - AlgebraicReal(1)).sign() > 0 || (u + AlgebraicReal(1)).sign() < 0)
        fail(Errc::NoExpansionExists, "target outside the signed-expansion hull [-1, 1]");

    SignedExpansion out;
    AlgebraicReal residual = u;
    for (int i = 0; i < depth; ++i) {
        std::vector<int> viable;
        for (int w : {-1, 0, 1}) {
            // residual - (1-alpha) w must be expressible as alpha * (next
            // residual) with |next| <= 1
            AlgebraicReal rem = residual - AlgebraicReal(w) * one_minus;
            if ((rem - alpha).sign() <= 0 && (rem + alpha).sign() >= 0) viable.push_back(w);
        }
        if (viable.empty()) fail(Errc::NoExpansionExists, "all branches pruned by the tail bound");
        if (viable.size() > 1) {
            out.forced = false;
            out.branch_depth = i;
            out.branch_digits = viable;
            return out;
        }
        out.digits.push_back(viable[0]);
        residual = (residual - AlgebraicReal(viable[0]) * one_minus) / alpha;
    }
    out.forced = true;
    return out;
}

TranslateSetResult translate_set(const AlgebraicReal& theta, const std::vector<IntPolynomial>& digits,
                                 long budget) {
    PisotVerdict pv = is_pisot(theta);
    if (!pv.is_pisot) fail(Errc::NotPisot, "translate set enumeration requires a Pisot theta");

    TranslateSetResult out;
    out.theta_above_two = (theta - AlgebraicReal(2)).sign() > 0;

    // digit differences D - D as exact field values
    std::vector<AlgebraicReal> dvals;
    for (const IntPolynomial& p : digits) {
        std::vector<BigRational> coeffs;
        for (const BigInt& c : p.coeffs()) coeffs.emplace_back(c);
        dvals.push_back(reduce_in_field(coeffs, theta));
    }
    std::vector<AlgebraicReal> deltas;
    std::map<std::string, bool> seen_delta;
    for (const AlgebraicReal& a : dvals)
        for (const AlgebraicReal& b : dvals) {
            AlgebraicReal d = a - b;
            if (seen_delta.emplace(d.canonical_key(), true).second) deltas.push_back(d);
        }

    // escape radius: beyond theta*T/(theta-1) the recursion v -> theta (t + v)
    // grows strictly and never returns to [0, 1]
    RatInterval th = theta.enclosure(BigRational(1, 1024));
    while (th.lo <= 1) th = theta.enclosure(th.width() / 256);
    BigRational t_ub(0);
    for (const AlgebraicReal& d : deltas) {
        BigRational m = abs_upper(d.enclosure(BigRational(1, 1024)));
        if (m > t_ub) t_ub = m;
    }
    BigRational radius = th.hi * t_ub / (th.lo - 1) + 1;
    if (radius < 2) radius = BigRational(2);
    AlgebraicReal r_bound{radius};

    std::map<std::string, AlgebraicReal> visited;
    std::deque<AlgebraicReal> queue;
    AlgebraicReal zero(0);
    visited.emplace(zero.canonical_key(), zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        AlgebraicReal v = queue.front();
        queue.pop_front();
        ++out.explored;
        for (const AlgebraicReal& t : deltas) {
            AlgebraicReal nv = theta * (t + v);
            if ((nv - r_bound).sign() > 0 || (nv + r_bound).sign() < 0) continue;
            std::string key = nv.canonical_key();
            if (visited.count(key)) continue;
            if (static_cast<long>(visited.size()) >= budget)
                fail(Errc::BudgetExceeded, "translate-set enumeration exceeded its budget");
            visited.emplace(key, nv);
            queue.push_back(nv);
        }
    }
    for (auto& [key, v] : visited) {
        if (v.sign() >= 0 && (v - AlgebraicReal(1)).sign() <= 0) out.points.push_back(v);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const AlgebraicReal& a, const AlgebraicReal& b) { return a.compare(b) < 0; });
    return out;
}

}  // namespace cantorlab
