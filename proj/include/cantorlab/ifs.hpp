#pragma once

#include "cantorlab/pisot.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cantorlab {

using Coding = std::vector<int>;  // letters index the digit list, 0-based

/// Homogeneous IFS on the line: x -> ratio * x + digit_i with one common
/// contraction ratio and strictly increasing digits. The attractor's convex
/// hull is [d_first, d_last] / (1 - ratio).
struct HomogeneousIFS {
    AlgebraicReal ratio;
    std::vector<AlgebraicReal> digits;
    AlgebraicReal hull_lo, hull_hi;

    static HomogeneousIFS make(AlgebraicReal ratio, std::vector<AlgebraicReal> digits);
    /// Attractor of {rho x, rho x + 1 - rho}; requires 0 < rho < 1/2.
    static HomogeneousIFS central_cantor(const AlgebraicReal& rho);
    /// Cantor p-set: ratio 1/p, digits a proper subset of {0..p-1}, |digits| >= 2.
    static HomogeneousIFS cantor_p_set(long p, const std::vector<long>& digit_values);

    size_t branch_count() const { return digits.size(); }
    bool all_rational() const;
    AlgebraicReal hull_width() const { return hull_hi - hull_lo; }
    bool is_central_cantor() const;
    /// Mirror image about the hull midpoint (same attractor geometry, digits
    /// reflected); used to reduce negative affine scales.
    HomogeneousIFS reflected() const;
};

/// Sorted, pairwise-disjoint closed intervals (touching intervals merged).
struct IntervalCover {
    std::vector<RatInterval> intervals;
    int level = 0;
    std::string source;

    bool empty() const { return intervals.empty(); }
    size_t size() const { return intervals.size(); }
    /// Index of an interval containing x, or -1.
    long find(const BigRational& x) const;
    bool covers(const RatInterval& iv) const;  // iv inside a single interval
    bool disjoint_from(const RatInterval& iv) const;
};

struct CoverOptions {
    long budget = 1L << 20;  // pre-merge cylinder cap per refinement step
    unsigned bits = 0;       // dyadic outward rounding; 0 = auto (exact for rational data)
};

/// Exact interval of the cylinder phi_w(hull).
std::pair<AlgebraicReal, AlgebraicReal> cylinder_interval(const HomogeneousIFS& ifs,
                                                          const Coding& word);

/// Union of all depth-n cylinder intervals, merged and sorted. Exact endpoints
/// for rational data; outward-rounded enclosures (cover only ever widens)
/// otherwise.
IntervalCover level_cover(const HomogeneousIFS& ifs, int depth, const CoverOptions& opt = {});

/// Open complementary intervals between consecutive cover intervals.
std::vector<RatInterval> gaps(const IntervalCover& cover);

/// Shortest gap length, or nullopt for a single-interval cover.
std::optional<BigRational> min_gap(const IntervalCover& cover);

struct MembershipResult {
    bool excluded = false;  // certified: x is not in the attractor
    int depth = 0;          // exclusion depth, or the depth the scan reached
    RatInterval gap;        // witnessing gap when excluded
};

/// Scan level covers to `depth`; exclusion is certified, inclusion is
/// inconclusive but bounds the distance to the attractor by ratio^depth * width.
MembershipResult contains_point(const HomogeneousIFS& ifs, const AlgebraicReal& x, int depth,
                                const CoverOptions& opt = {});

/// Enclosure of the unique s >= 0 with sum ratio_i^s = 1.
RatInterval similarity_dimension(const std::vector<AlgebraicReal>& ratios, const BigRational& tol);

/// Enclosure of the unique s_n >= 0 with sum over nonempty-deviation words
/// (sum_i b_i^s)^n - b_min^(n s) = 1; ratios' minimum plays b_1.
RatInterval solve_s_n(const std::vector<AlgebraicReal>& ratios, int n, const BigRational& tol);

enum class TailKind { Zeros, Ones, Periodic };

struct CodingTail {
    TailKind kind = TailKind::Zeros;
    Coding pattern;  // for Periodic, nonempty
};

/// Exact value of the coding map (1-alpha) * sum z_i alpha^i at the sequence
/// `prefix` followed by the symbolic tail (geometric series closed form).
AlgebraicReal coding_to_point(const HomogeneousIFS& cantor, const Coding& prefix,
                              const CodingTail& tail);

/// Extract the first n coding digits of a point of a central Cantor set.
Coding extract_coding(const HomogeneousIFS& cantor, const AlgebraicReal& x, int n);

enum class UniquenessClass { Uniqueness, Multiplicity, Unknown };

struct UniquenessResult {
    UniquenessClass verdict = UniquenessClass::Unknown;
    PisotVerdict pisot;
    std::string reason;
};

/// Salem-Zygmund classification: uniqueness iff 1/ratio is Pisot (verified
/// minimal polynomial) and the digits, rescaled to the [0, 1-ratio] frame,
/// lie in Q(1/ratio).
UniquenessResult is_set_of_uniqueness(const HomogeneousIFS& ifs);

}  // namespace cantorlab
