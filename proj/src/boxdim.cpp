#include "cantorlab/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

namespace cantorlab {

namespace {

void fit_slope(DimEstimate& est, double log_inv_ratio) {
    // least squares of log(count) against depth * log(1/ratio), deepest half
    size_t n = est.depths.size();
    for (long c : est.counts)
        if (c <= 0) {
            est.slope = 0;
            est.empty_intersection = true;
            return;
        }
    size_t start = n / 2;
    if (n - start < 2) start = n >= 2 ? n - 2 : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t m = n - start;
    for (size_t i = start; i < n; ++i) {
        double x = est.depths[i] * log_inv_ratio;
        double y = std::log(static_cast<double>(est.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    est.slope = denom == 0 ? 0 : (m * sxy - sx * sy) / denom;
    double icept = (sy - est.slope * sx) / m;
    double rss = 0;
    for (size_t i = start; i < n; ++i) {
        double x = est.depths[i] * log_inv_ratio;
        double y = std::log(static_cast<double>(est.counts[i]));
        double e = y - (est.slope * x + icept);
        rss += e * e;
    }
    est.residual = std::sqrt(rss / m);
    est.slope = std::clamp(est.slope, 0.0, 1.0);
}

// matched resolution: smallest m with |lambda| beta^m width(F) <= alpha^n width(E)
int matched_f_depth(const HomogeneousIFS& E, const HomogeneousIFS& F, const BigRational& lam_abs,
                    int n) {
    BigRational alpha = E.ratio.rational(), beta = F.ratio.rational();
    BigRational lhs = lam_abs * F.hull_width().rational();
    BigRational rhs = rat_pow(alpha, n) * E.hull_width().rational();
    int m = 0;
    while (lhs > rhs && m < 4096) {
        lhs *= beta;
        ++m;
    }
    return m;
}

long count_intersecting(const IntervalCover& e_cover, const std::vector<RatInterval>& images) {
    // both lists sorted; linear sweep
    long count = 0;
    size_t j = 0;
    for (const RatInterval& box : e_cover.intervals) {
        while (j < images.size() && images[j].hi < box.lo) ++j;
        if (j < images.size() && images[j].lo <= box.hi) ++count;
    }
    return count;
}

}  // namespace

DimEstimate attractor_dim_estimate(const HomogeneousIFS& ifs, const std::vector<int>& depths,
                                   const CoverOptions& opt) {
    if (depths.size() < 3) fail(Errc::InvalidArgument, "need at least three depths");
    DimEstimate est;
    for (int n : depths) {
        IntervalCover cov = level_cover(ifs, n, opt);
        est.depths.push_back(n);
        est.counts.push_back(static_cast<long>(cov.size()));
    }
    fit_slope(est, std::log(1.0 / ifs.ratio.to_double()));
    return est;
}

DimEstimate intersection_dim_estimate(const HomogeneousIFS& E, const HomogeneousIFS& F,
                                      const AlgebraicReal& lambda, const AlgebraicReal& c,
                                      const std::vector<int>& depths, const CoverOptions& opt) {
    if (depths.size() < 3) fail(Errc::InvalidArgument, "need at least three depths");
    if (!E.all_rational() || !F.all_rational() || !lambda.is_rational() || !c.is_rational())
        fail(Errc::InvalidArgument, "intersection estimates require rational data");
    if (lambda.sign() == 0) fail(Errc::InvalidArgument, "lambda must be nonzero");
    BigRational lam = lambda.rational(), cc = c.rational();
    BigRational lam_abs = rat_abs(lam);
    DimEstimate est;
    for (int n : depths) {
        IntervalCover e_cover = level_cover(E, n, opt);
        int m = matched_f_depth(E, F, lam_abs, n);
        IntervalCover f_cover = level_cover(F, m, opt);
        std::vector<RatInterval> images;
        images.reserve(f_cover.size());
        for (const RatInterval& iv : f_cover.intervals) {
            RatInterval img = lam >= 0 ? RatInterval(lam * iv.lo + cc, lam * iv.hi + cc)
                                       : RatInterval(lam * iv.hi + cc, lam * iv.lo + cc);
            images.push_back(std::move(img));
        }
        if (lam < 0) std::reverse(images.begin(), images.end());
        est.depths.push_back(n);
        est.counts.push_back(count_intersecting(e_cover, images));
    }
    fit_slope(est, std::log(1.0 / E.ratio.to_double()));
    return est;
}

SweepResult furstenberg_sweep(const HomogeneousIFS& A, const HomogeneousIFS& B, long p, long q,
                              const std::vector<BigRational>& lambda_grid,
                              const std::vector<BigRational>& c_grid, int depth, int jobs) {
    // powers of a common integer make the theorem hypothesis fail
    for (long b = 2; b <= std::min(p, q); ++b) {
        long pp = b;
        while (pp < p) pp *= b;
        long qq = b;
        while (qq < q) qq *= b;
        if (pp == p && qq == q)
            fail(Errc::CommensurableBases, "p and q are powers of the same integer " +
                                               std::to_string(b));
    }
    std::vector<int> depths;
    for (int d = std::max(3, depth - 5); d <= depth; ++d) depths.push_back(d);

    SweepResult out;
    out.dim_a = attractor_dim_estimate(A, depths);
    out.dim_b = attractor_dim_estimate(B, depths);
    for (const BigRational& l : lambda_grid)
        for (const BigRational& c : c_grid) {
            SweepCell cell;
            cell.lambda = l;
            cell.c = c;
            cell.rejected = (l == 0);
            out.cells.push_back(std::move(cell));
        }
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            SweepCell& cell = out.cells[i];
            if (cell.rejected) continue;
            cell.est = intersection_dim_estimate(A, B, AlgebraicReal(cell.lambda),
                                                 AlgebraicReal(cell.c), depths);
        }
    };
    if (jobs <= 1) {
        work(0, out.cells.size());
    } else {
        std::vector<std::thread> threads;
        size_t chunk = (out.cells.size() + static_cast<size_t>(jobs) - 1) / static_cast<size_t>(jobs);
        for (int t = 0; t < jobs; ++t) {
            size_t lo = static_cast<size_t>(t) * chunk;
            size_t hi = std::min(out.cells.size(), lo + chunk);
            if (lo < hi) threads.emplace_back(work, lo, hi);
        }
        for (std::thread& th : threads) th.join();
    }
    out.max_slope = 0;
    out.max_index = -1;
    for (size_t i = 0; i < out.cells.size(); ++i) {
        const SweepCell& cell = out.cells[i];
        if (cell.rejected) continue;
        if (out.max_index < 0 || cell.est.slope > out.max_slope) {
            out.max_slope = cell.est.slope;
            out.max_index = static_cast<long>(i);
        }
    }
    return out;
}

DimEstimate orbit_closure_dim_estimate(const AlgebraicReal& alpha, const OrbitSpec& z,
                                       const std::vector<int>& depths) {
    if (depths.size() < 3) fail(Errc::InvalidArgument, "need at least three depths");
    if (alpha.sign() <= 0 || (AlgebraicReal(BigRational(1, 2)) - alpha).sign() <= 0)
        fail(Errc::InvalidArgument, "alpha must lie in (0, 1/2)");
    int max_depth = *std::max_element(depths.begin(), depths.end());
    std::string word;
    if (z.periodic) {
        if (z.pattern.empty()) fail(Errc::InvalidArgument, "periodic orbit needs a pattern");
        while (static_cast<int>(word.size()) < 4 * max_depth + static_cast<int>(z.pattern.size()))
            for (int b : z.pattern) word.push_back(static_cast<char>('0' + b));
    } else {
        if (static_cast<int>(z.pattern.size()) < 4 * max_depth)
            fail(Errc::PrefixTooShort, "explicit prefix must be at least 4x the deepest level");
        for (int b : z.pattern) word.push_back(static_cast<char>('0' + b));
    }
    DimEstimate est;
    for (int n : depths) {
        std::set<std::string_view> factors;
        std::string_view sv(word);
        for (size_t i = 0; i + static_cast<size_t>(n) <= sv.size(); ++i)
            factors.insert(sv.substr(i, static_cast<size_t>(n)));
        est.depths.push_back(n);
        est.counts.push_back(static_cast<long>(factors.size()));
    }
    fit_slope(est, std::log(1.0 / alpha.to_double()));
    return est;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = "lambda,c,slope,residual,boxes_deepest\n";
    char buf[64];
    for (const SweepCell& cell : sweep.cells) {
        out += format_rational(cell.lambda);
        out += ',';
        out += format_rational(cell.c);
        out += ',';
        if (cell.rejected) {
            out += "rejected,,\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.6f", cell.est.slope);
        out += buf;
        out += ',';
        std::snprintf(buf, sizeof buf, "%.6f", cell.est.residual);
        out += buf;
        out += ',';
        out += std::to_string(cell.est.counts.empty() ? 0 : cell.est.counts.back());
        out += '\n';
    }
    return out;
}

}  // namespace cantorlab
