#include "cantorlab/embed.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cantorlab {

namespace {

// A state asserts: lambda * alpha^e * F + d is contained in E. Zooming into a
// uniquely-intersected E-cylinder lowers e by one; subdividing F raises it by
// the scale exponent r. Offsets d live in Q(theta) exactly.
struct StateKey {
    int e;
    std::string d;
    bool operator<(const StateKey& o) const { return e != o.e ? e < o.e : d < o.d; }
};

struct Transition {
    ExactTraceStep step;
    StateKey parent;
};

struct DecideContext {
    const HomogeneousIFS* E;
    HomogeneousIFS F;
    AlgebraicReal lambda, c, alpha, theta;
    int r = 1;
    std::map<int, AlgebraicReal> scale_pow;  // e -> lambda * alpha^e

    const AlgebraicReal& scaled_lambda(int e) {
        auto it = scale_pow.find(e);
        if (it != scale_pow.end()) return it->second;
        AlgebraicReal v = lambda * alpha.pow(e);
        return scale_pow.emplace(e, std::move(v)).first->second;
    }
};

struct StepResult {
    bool refuted = false;
    std::vector<std::pair<ExactTraceStep, std::pair<int, AlgebraicReal>>> children;
};

StepResult transition(DecideContext& ctx, int e, const AlgebraicReal& d) {
    StepResult out;
    const AlgebraicReal& s = ctx.scaled_lambda(e);
    AlgebraicReal j_lo = d + s * ctx.F.hull_lo;
    AlgebraicReal j_hi = d + s * ctx.F.hull_hi;

    // the piece's endpoints are genuine points of it; outside the hull of E
    // they cannot belong to E
    if ((j_lo - ctx.E->hull_lo).sign() < 0 || (ctx.E->hull_hi - j_hi).sign() < 0) {
        out.refuted = true;
        return out;
    }
    // candidate level-1 E-cylinders whose hulls meet the piece hull
    std::vector<int> hits;
    for (size_t i = 0; i < ctx.E->digits.size(); ++i) {
        AlgebraicReal cyl_lo = ctx.E->digits[i] + ctx.alpha * ctx.E->hull_lo;
        AlgebraicReal cyl_hi = ctx.E->digits[i] + ctx.alpha * ctx.E->hull_hi;
        if ((j_hi - cyl_lo).sign() >= 0 && (cyl_hi - j_lo).sign() >= 0)
            hits.push_back(static_cast<int>(i));
    }
    if (hits.empty()) {
        out.refuted = true;
        return out;
    }
    if (hits.size() == 1) {
        int i = hits[0];
        AlgebraicReal nd = ctx.theta * (d - ctx.E->digits[static_cast<size_t>(i)]);
        out.children.push_back({{false, i}, {e - 1, std::move(nd)}});
        return out;
    }
    for (size_t j = 0; j < ctx.F.digits.size(); ++j) {
        AlgebraicReal nd = d + s * ctx.F.digits[j];
        out.children.push_back({{true, static_cast<int>(j)}, {e + ctx.r, std::move(nd)}});
    }
    return out;
}

DecideContext make_context(const EmbeddingProblem& prob, const DecideOptions& opt) {
    DecideContext ctx;
    ctx.E = &prob.E;
    ctx.alpha = prob.E.ratio;
    ctx.theta = AlgebraicReal(1) / ctx.alpha;

    PisotVerdict pv = is_pisot(ctx.theta);
    if (!pv.is_pisot || pv.minimality != Minimality::Verified)
        fail(Errc::NotPisot, "exact decision requires 1/ratio(E) Pisot with verified minimality");

    // ratio(F) must be an integer power of ratio(E)
    AlgebraicReal apow = ctx.alpha;
    int r = 0;
    for (int k = 1; k <= opt.max_scale_exponent; ++k) {
        if (prob.F.ratio.compare(apow) == 0) {
            r = k;
            break;
        }
        apow = apow * ctx.alpha;
    }
    if (r == 0)
        fail(Errc::IncommensurableRatios,
             "ratio(F) is not an integer power of ratio(E) within the exponent budget");
    ctx.r = r;

    // all data must lie in Q(theta)
    FieldPtr field = ctx.alpha.field();
    auto check = [&](const AlgebraicReal& x) {
        if (x.is_rational()) return;
        if (field && x.field() == field) return;
        fail(Errc::DataOutsideField, "exact decision requires all data in Q(theta)");
    };
    check(prob.lambda);
    check(prob.c);
    for (const AlgebraicReal& dgt : prob.E.digits) check(dgt);
    for (const AlgebraicReal& dgt : prob.F.digits) check(dgt);

    // reduce negative scales by reflecting F
    if (prob.lambda.sign() > 0) {
        ctx.F = prob.F;
        ctx.lambda = prob.lambda;
        ctx.c = prob.c;
    } else {
        ctx.F = prob.F.reflected();
        ctx.lambda = -prob.lambda;
        ctx.c = prob.c + prob.lambda * (prob.F.hull_lo + prob.F.hull_hi);
    }
    return ctx;
}

}  // namespace

EmbeddingCertificate decide_embedding_exact(const EmbeddingProblem& prob,
                                            const DecideOptions& opt) {
    DecideContext ctx = make_context(prob, opt);

    EmbeddingCertificate cert;
    cert.problem = prob;
    cert.scale_exponent = ctx.r;

    std::map<StateKey, std::pair<AlgebraicReal, std::optional<Transition>>> seen;
    std::deque<StateKey> queue;
    StateKey root{0, ctx.c.canonical_key()};
    seen.emplace(root, std::make_pair(ctx.c, std::nullopt));
    queue.push_back(root);

    while (!queue.empty()) {
        StateKey key = queue.front();
        queue.pop_front();
        const AlgebraicReal d = seen.at(key).first;
        StepResult res = transition(ctx, key.e, d);
        if (res.refuted) {
            // reconstruct the transition path root -> refuted state
            std::vector<ExactTraceStep> path;
            StateKey cur = key;
            while (true) {
                const auto& entry = seen.at(cur);
                if (!entry.second) break;
                path.push_back(entry.second->step);
                cur = entry.second->parent;
            }
            std::reverse(path.begin(), path.end());
            cert.kind = VerdictKind::ExactRefuted;
            cert.trace = std::move(path);
            cert.state_closure_size = static_cast<long>(seen.size());
            return cert;
        }
        for (auto& [step, child] : res.children) {
            StateKey ck{child.first, child.second.canonical_key()};
            if (seen.count(ck)) continue;
            if (static_cast<long>(seen.size()) >= opt.state_budget)
                fail(Errc::StateBudgetExceeded,
                     "state closure exceeded " + std::to_string(opt.state_budget) + " states");
            seen.emplace(ck, std::make_pair(child.second, Transition{step, key}));
            queue.push_back(ck);
        }
    }
    cert.kind = VerdictKind::ExactEmbeds;
    cert.state_closure_size = static_cast<long>(seen.size());
    return cert;
}

bool replay_exact_certificate(const EmbeddingCertificate& cert) {
    DecideOptions opt;
    if (cert.kind == VerdictKind::ExactEmbeds) {
        EmbeddingCertificate re = decide_embedding_exact(cert.problem, opt);
        return re.kind == VerdictKind::ExactEmbeds &&
               re.state_closure_size == cert.state_closure_size;
    }
    if (cert.kind != VerdictKind::ExactRefuted) return false;
    DecideContext ctx = make_context(cert.problem, opt);
    int e = 0;
    AlgebraicReal d = ctx.c;
    for (const ExactTraceStep& step : cert.trace) {
        StepResult res = transition(ctx, e, d);
        if (res.refuted) return false;  // refuted too early: trace invalid
        bool matched = false;
        for (auto& [s, child] : res.children) {
            if (s.subdivide == step.subdivide && s.index == step.index) {
                // a zoom step must be the unique candidate; subdivision steps
                // must be among the enumerated branches
                e = child.first;
                d = child.second;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
        if (!step.subdivide && res.children.size() != 1) return false;
    }
    StepResult fin = transition(ctx, e, d);
    return fin.refuted;
}

}  // namespace cantorlab
