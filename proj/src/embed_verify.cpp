#include "cantorlab/embed.hpp"

#include <algorithm>

namespace cantorlab {

EmbeddingProblem EmbeddingProblem::make(HomogeneousIFS E, HomogeneousIFS F, AlgebraicReal lambda,
                                        AlgebraicReal c) {
    if (lambda.sign() == 0) fail(Errc::InvalidArgument, "affine scale lambda must be nonzero");
    EmbeddingProblem p;
    p.E = std::move(E);
    p.F = std::move(F);
    p.lambda = std::move(lambda);
    p.c = std::move(c);
    return p;
}

namespace {

// lambda < 0 reduces to the reflected F with positive scale:
// lambda F + c == |lambda| refl(F) + (c + lambda (hull_lo + hull_hi)).
struct NormalizedProblem {
    HomogeneousIFS F;
    AlgebraicReal lambda, c;
};

NormalizedProblem normalize_scale(const HomogeneousIFS& F, const AlgebraicReal& lambda,
                                  const AlgebraicReal& c) {
    NormalizedProblem out;
    if (lambda.sign() > 0) {
        out.F = F;
        out.lambda = lambda;
        out.c = c;
        return out;
    }
    out.F = F.reflected();
    out.lambda = -lambda;
    out.c = c + lambda * (F.hull_lo + F.hull_hi);
    return out;
}

struct FrameEnclosure {
    RatInterval ratio, hull_lo, hull_hi, lambda, c;
    std::vector<RatInterval> digits;
    bool exact = false;
    unsigned bits = 0;
};

FrameEnclosure enclose_frame(const HomogeneousIFS& F, const AlgebraicReal& lambda,
                             const AlgebraicReal& c, int depth, unsigned bits) {
    FrameEnclosure e;
    bool exact = F.all_rational() && lambda.is_rational() && c.is_rational();
    e.exact = exact;
    if (exact) {
        e.ratio = RatInterval::point(F.ratio.rational());
        for (const AlgebraicReal& d : F.digits) e.digits.push_back(RatInterval::point(d.rational()));
        e.hull_lo = RatInterval::point(F.hull_lo.rational());
        e.hull_hi = RatInterval::point(F.hull_hi.rational());
        e.lambda = RatInterval::point(lambda.rational());
        e.c = RatInterval::point(c.rational());
        return e;
    }
    if (bits == 0) bits = std::max(128u, 64u + 8u * static_cast<unsigned>(std::max(depth, 0)));
    e.bits = bits;
    e.ratio = F.ratio.enclosure_bits(bits + 16);
    for (const AlgebraicReal& d : F.digits) e.digits.push_back(d.enclosure_bits(bits + 16));
    e.hull_lo = F.hull_lo.enclosure_bits(bits + 16);
    e.hull_hi = F.hull_hi.enclosure_bits(bits + 16);
    e.lambda = lambda.enclosure_bits(bits + 16);
    e.c = c.enclosure_bits(bits + 16);
    return e;
}

RatInterval witness_gap(const IntervalCover& cover, const RatInterval& image,
                        const RatInterval& hull) {
    BigRational glo = hull.lo - 1, ghi = hull.hi + 1;
    for (const RatInterval& iv : cover.intervals) {
        if (iv.hi <= image.lo && iv.hi > glo) glo = iv.hi;
        if (iv.lo >= image.hi && iv.lo < ghi) ghi = iv.lo;
    }
    return {glo, ghi};
}

}  // namespace

EmbeddingCertificate verify_embedding(const EmbeddingProblem& prob, int depth_E, int depth_F,
                                      const CoverOptions& opt) {
    if (depth_E < 0 || depth_F < 0) fail(Errc::InvalidArgument, "depths must be nonnegative");
    NormalizedProblem np = normalize_scale(prob.F, prob.lambda, prob.c);

    CoverOptions copt = opt;
    IntervalCover cover = level_cover(prob.E, depth_E, copt);
    FrameEnclosure fe = enclose_frame(np.F, np.lambda, np.c, depth_E + depth_F, opt.bits);
    RatInterval hull_e(cover.intervals.front().lo, cover.intervals.back().hi);

    long words = 1;
    for (int i = 0; i < depth_F; ++i) {
        words *= static_cast<long>(np.F.branch_count());
        if (words > copt.budget) fail(Errc::DepthBudgetExceeded, "F-cylinder budget exceeded");
    }

    EmbeddingCertificate cert;
    cert.problem = prob;
    cert.depth_E = depth_E;
    cert.depth_F = depth_F;
    cert.cover_bits = fe.bits;

    const size_t nb = np.F.branch_count();
    // DFS over the F-word tree with incremental (scale, shift) accumulators
    struct Node {
        RatInterval scale, shift;
        int depth;
        Coding word;
    };
    std::vector<Node> stack;
    stack.push_back({RatInterval::point(BigRational(1)), RatInterval::point(BigRational(0)), 0, {}});
    const int extend_cap = 8 * (depth_E + depth_F) + 64;
    while (!stack.empty()) {
        Node nd = std::move(stack.back());
        stack.pop_back();
        if (nd.depth < depth_F) {
            for (size_t j = nb; j-- > 0;) {
                Node child;
                child.scale = nd.scale * fe.ratio;
                child.shift = nd.shift + nd.scale * fe.digits[j];
                child.depth = nd.depth + 1;
                child.word = nd.word;
                child.word.push_back(static_cast<int>(j));
                stack.push_back(std::move(child));
            }
            continue;
        }
        // image of this cylinder under x -> lambda x + c
        RatInterval cyl_lo = nd.shift + nd.scale * fe.hull_lo;
        RatInterval cyl_hi = nd.shift + nd.scale * fe.hull_hi;
        RatInterval image = fe.lambda * RatInterval(cyl_lo.lo, cyl_hi.hi) + fe.c;
        if (cover.disjoint_from(image)) {
            cert.kind = VerdictKind::RefutedAtDepth;
            cert.witness = RefutationWitness{nd.word, image, witness_gap(cover, image, hull_e)};
            return cert;
        }
        // endpoints are genuine points of lambda F + c; an endpoint certified
        // inside a gap refutes, with the witness cylinder narrowed onto it
        for (int side = 0; side < 2; ++side) {
            const RatInterval& cyl_end = side == 0 ? cyl_lo : cyl_hi;
            RatInterval pt = fe.lambda * cyl_end + fe.c;
            if (!cover.disjoint_from(pt)) continue;
            Node w = nd;
            int extreme = side == 0 ? 0 : static_cast<int>(nb) - 1;
            for (int step = 0; step < extend_cap; ++step) {
                RatInterval wlo = w.shift + w.scale * fe.hull_lo;
                RatInterval whi = w.shift + w.scale * fe.hull_hi;
                RatInterval wimg = fe.lambda * RatInterval(wlo.lo, whi.hi) + fe.c;
                if (cover.disjoint_from(wimg)) {
                    cert.kind = VerdictKind::RefutedAtDepth;
                    cert.witness = RefutationWitness{w.word, wimg, witness_gap(cover, wimg, hull_e)};
                    return cert;
                }
                Node next;
                next.scale = w.scale * fe.ratio;
                next.shift = w.shift + w.scale * fe.digits[static_cast<size_t>(extreme)];
                next.depth = w.depth + 1;
                next.word = w.word;
                next.word.push_back(extreme);
                w = std::move(next);
            }
            fail(Errc::DepthBudgetExceeded,
                 "endpoint escaped the cover but the witness narrowing budget ran out");
        }
    }
    cert.kind = VerdictKind::ConsistentToDepth;
    return cert;
}

bool replay_verify_certificate(const EmbeddingCertificate& cert) {
    if (cert.kind == VerdictKind::ConsistentToDepth) {
        CoverOptions opt;
        opt.bits = cert.cover_bits;
        EmbeddingCertificate re = verify_embedding(cert.problem, cert.depth_E, cert.depth_F, opt);
        return re.kind == VerdictKind::ConsistentToDepth;
    }
    if (cert.kind != VerdictKind::RefutedAtDepth || !cert.witness) return false;
    // recompute the witness cylinder image exactly and re-check disjointness
    NormalizedProblem np = normalize_scale(cert.problem.F, cert.problem.lambda, cert.problem.c);
    for (int letter : cert.witness->word)
        if (letter < 0 || static_cast<size_t>(letter) >= np.F.branch_count()) return false;
    CoverOptions opt;
    opt.bits = cert.cover_bits;
    IntervalCover cover = level_cover(cert.problem.E, cert.depth_E, opt);
    FrameEnclosure fe = enclose_frame(np.F, np.lambda, np.c,
                                      cert.depth_E + static_cast<int>(cert.witness->word.size()),
                                      cert.cover_bits);
    RatInterval scale = RatInterval::point(BigRational(1));
    RatInterval shift = RatInterval::point(BigRational(0));
    for (int letter : cert.witness->word) {
        shift = shift + scale * fe.digits[static_cast<size_t>(letter)];
        scale = scale * fe.ratio;
    }
    RatInterval cyl_lo = shift + scale * fe.hull_lo;
    RatInterval cyl_hi = shift + scale * fe.hull_hi;
    RatInterval image = fe.lambda * RatInterval(cyl_lo.lo, cyl_hi.hi) + fe.c;
    return cover.disjoint_from(image);
}

namespace {

std::vector<RatInterval> erode(const IntervalCover& cover, const RatInterval& piece) {
    std::vector<RatInterval> out;
    BigRational w = piece.width();
    for (const RatInterval& k : cover.intervals) {
        if (k.width() < w) continue;
        out.emplace_back(k.lo - piece.lo, k.hi - piece.hi);
    }
    return out;
}

std::vector<RatInterval> intersect_lists(const std::vector<RatInterval>& a,
                                         const std::vector<RatInterval>& b) {
    std::vector<RatInterval> out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        BigRational lo = std::max(a[i].lo, b[j].lo);
        BigRational hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.emplace_back(lo, hi);
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

// raw depth-m F-cylinder intervals, sorted, deduplicated (no merging: the
// feasible intersection quantifies over cylinders, not their union)
std::vector<RatInterval> raw_cylinders(const HomogeneousIFS& F, int depth, long budget) {
    if (!F.all_rational())
        fail(Errc::InvalidArgument, "feasible offsets require exact rational data");
    BigRational ratio = F.ratio.rational();
    std::vector<BigRational> digits;
    for (const AlgebraicReal& d : F.digits) digits.push_back(d.rational());
    BigRational h_lo = F.hull_lo.rational(), h_hi = F.hull_hi.rational();
    std::vector<std::pair<BigRational, BigRational>> acc{{BigRational(0), BigRational(1)}};
    for (int k = 0; k < depth; ++k) {
        if (static_cast<long>(acc.size()) * static_cast<long>(digits.size()) > budget)
            fail(Errc::DepthBudgetExceeded, "F-cylinder budget exceeded");
        std::vector<std::pair<BigRational, BigRational>> next;
        next.reserve(acc.size() * digits.size());
        for (const auto& [shift, scale] : acc)
            for (const BigRational& d : digits) next.emplace_back(shift + scale * d, scale * ratio);
        acc = std::move(next);
    }
    std::vector<RatInterval> out;
    out.reserve(acc.size());
    for (const auto& [shift, scale] : acc)
        out.emplace_back(shift + scale * h_lo, shift + scale * h_hi);
    std::sort(out.begin(), out.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const RatInterval& x, const RatInterval& y) {
                              return x.lo == y.lo && x.hi == y.hi;
                          }),
              out.end());
    return out;
}

}  // namespace

IntervalCover feasible_offsets(const HomogeneousIFS& E, const HomogeneousIFS& F,
                               const AlgebraicReal& lambda, int depth_E, int depth_F,
                               const CoverOptions& opt) {
    if (!E.all_rational() || !lambda.is_rational())
        fail(Errc::InvalidArgument, "feasible offsets require exact rational data");
    if (lambda.sign() == 0) fail(Errc::InvalidArgument, "lambda must be nonzero");
    if (lambda.sign() < 0) {
        // feasible set of the reflected problem, shifted back
        HomogeneousIFS Fr = F.reflected();
        AlgebraicReal shift = lambda * (F.hull_lo + F.hull_hi);
        IntervalCover base = feasible_offsets(E, Fr, -lambda, depth_E, depth_F, opt);
        BigRational s = shift.rational();
        for (RatInterval& iv : base.intervals) {
            iv.lo -= s;
            iv.hi -= s;
        }
        return base;
    }
    IntervalCover ecover = level_cover(E, depth_E, opt);
    std::vector<RatInterval> cylinders = raw_cylinders(F, depth_F, opt.budget);
    BigRational lam = lambda.rational();

    std::vector<RatInterval> feas;
    bool first = true;
    for (const RatInterval& J : cylinders) {
        RatInterval image = lam * J;
        std::vector<RatInterval> allowed = erode(ecover, image);
        feas = first ? std::move(allowed) : intersect_lists(feas, allowed);
        first = false;
        if (feas.empty()) break;
    }
    IntervalCover out;
    out.intervals = std::move(feas);
    out.level = depth_E;
    out.source = "feasible_offsets";
    return out;
}

FeasibleRefinement feasible_refinement(const HomogeneousIFS& E, const HomogeneousIFS& F,
                                       const AlgebraicReal& lambda, int max_depth,
                                       const CoverOptions& opt) {
    if (!E.all_rational() || !F.all_rational() || !lambda.is_rational())
        fail(Errc::InvalidArgument, "feasible refinement requires exact rational data");
    FeasibleRefinement out;
    BigRational lam = rat_abs(lambda.rational());
    BigRational beta = F.ratio.rational();
    BigRational wf = F.hull_width().rational();
    for (int n = 0; n <= max_depth; ++n) {
        IntervalCover ecover = level_cover(E, n, opt);
        std::optional<BigRational> gap = min_gap(ecover);
        int m = 0;
        if (gap) {
            BigRational piece = lam * wf;
            while (piece >= *gap) {
                piece *= beta;
                ++m;
            }
        }
        IntervalCover cn = feasible_offsets(E, F, lambda, n, m, opt);
        if (!out.per_depth.empty()) {
            // antitone check: every interval of C_n must sit inside C_{n-1}
            const IntervalCover& prev = out.per_depth.back();
            for (const RatInterval& iv : cn.intervals)
                if (!prev.covers(iv)) out.antitone = false;
        }
        out.f_depths.push_back(m);
        out.per_depth.push_back(cn);
        if (out.per_depth.back().empty()) {
            out.emptied_at = n;
            break;
        }
    }
    return out;
}

}  // namespace cantorlab
