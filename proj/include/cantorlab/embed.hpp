#pragma once

#include "cantorlab/ifs.hpp"

#include <optional>

namespace cantorlab {

/// Does lambda * F + c embed into E?
struct EmbeddingProblem {
    HomogeneousIFS E;
    HomogeneousIFS F;
    AlgebraicReal lambda;
    AlgebraicReal c;

    static EmbeddingProblem make(HomogeneousIFS E, HomogeneousIFS F, AlgebraicReal lambda,
                                 AlgebraicReal c);
};

enum class VerdictKind {
    ConsistentToDepth,
    RefutedAtDepth,
    ExactEmbeds,
    ExactRefuted,
    HoleCertificate,
};

struct RefutationWitness {
    Coding word;       // F-cylinder whose affine image misses the level cover
    RatInterval image;  // enclosure of that image interval
    RatInterval gap;    // cover-free region containing it
};

struct ExactTraceStep {
    bool subdivide = false;  // true: descend into F-branch `index`; false: zoom into E-cylinder
    int index = 0;
};

struct EmbeddingCertificate {
    VerdictKind kind = VerdictKind::ConsistentToDepth;
    EmbeddingProblem problem;
    int depth_E = 0;
    int depth_F = 0;
    unsigned cover_bits = 0;  // dyadic enclosure precision used (0: exact covers)
    std::optional<RefutationWitness> witness;  // RefutedAtDepth
    long state_closure_size = 0;               // ExactEmbeds
    int scale_exponent = 0;                    // r with ratio_F = ratio_E^r
    std::vector<ExactTraceStep> trace;         // ExactRefuted: path from the root claim
};

/// Finite-depth semi-decision. Refutation (some F-cylinder image interval
/// certified disjoint from level_cover(E, depth_E)) is a sound proof of
/// non-embedding; consistency is inconclusive positively.
EmbeddingCertificate verify_embedding(const EmbeddingProblem& prob, int depth_E, int depth_F,
                                      const CoverOptions& opt = {});

/// Exactly re-checks a finite-depth certificate from its own data.
bool replay_verify_certificate(const EmbeddingCertificate& cert);

/// The depth-(n, m) feasible offset set: all c with c + lambda J inside
/// level_cover(E, n) for every depth-m F-cylinder J. Exact (rational data
/// required). Emptiness refutes every offset for this lambda provided
/// lambda * beta^m * width(F) stays below the cover's least gap.
IntervalCover feasible_offsets(const HomogeneousIFS& E, const HomogeneousIFS& F,
                               const AlgebraicReal& lambda, int depth_E, int depth_F,
                               const CoverOptions& opt = {});

struct FeasibleRefinement {
    std::vector<IntervalCover> per_depth;  // C_0, C_1, ...
    std::vector<int> f_depths;             // matched F-depth per level
    std::optional<int> emptied_at;
    bool antitone = true;  // checked along the way
};

/// Drive feasible_offsets with the matched F-resolution rule
/// (lambda beta^m width(F) < min gap of the level-n cover) until the set
/// empties or max_depth is reached.
FeasibleRefinement feasible_refinement(const HomogeneousIFS& E, const HomogeneousIFS& F,
                                       const AlgebraicReal& lambda, int max_depth,
                                       const CoverOptions& opt = {});

struct DecideOptions {
    long state_budget = 200000;
    int max_scale_exponent = 64;
};

/// Exact decision of lambda F + c inside E for theta = 1/ratio(E) Pisot with
/// verified minimality, ratio(F) = ratio(E)^r, and all data in Q(theta).
/// The subdivision recursion runs over exact field elements; Garsia
/// separation confines the reachable states to a finite set, so the worklist
/// either closes (ExactEmbeds) or reaches a piece certified outside the cover
/// structure (ExactRefuted, with a replayable transition trace).
EmbeddingCertificate decide_embedding_exact(const EmbeddingProblem& prob,
                                            const DecideOptions& opt = {});

/// Exactly re-checks an ExactRefuted trace / ExactEmbeds closure.
bool replay_exact_certificate(const EmbeddingCertificate& cert);

/// Refutation of a + lambda C_beta inside C_alpha for EVERY offset a at once:
/// a prime power gamma = beta^ell and exponents (m, n) with
/// alpha < lambda gamma^m / alpha^n < (1-2 alpha)/(1-2 gamma), so the piece
/// must contain a structural hole longer than its own longest hole.
struct HoleCertificate {
    AlgebraicReal alpha, beta, lambda;
    int ell = 0;
    long m = 0, n = 0;
};

struct HoleSearchOptions {
    long max_exponent = 200;
    std::vector<int> primes{2, 3, 5, 7, 11, 13};
    int power_check_budget = 256;  // for detecting log gamma / log alpha in N
};

HoleCertificate refute_all_offsets_hole(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                                        const AlgebraicReal& lambda,
                                        const HoleSearchOptions& opt = {});

/// Exact replay of both strict inequalities and the final hole-length
/// comparison.
bool verify_hole_certificate(const HoleCertificate& hc);

/// Zoom a witness (a + lambda C_beta inside C_alpha) by n coding digits of a
/// and k extra F-levels: a' = pi(sigma^n z), lambda' = lambda beta^k / alpha^n.
/// The shifted piece must fit inside the depth-n cylinder of a (checked
/// exactly; ScaleConditionViolated otherwise).
std::pair<AlgebraicReal, AlgebraicReal> rescale_witness(const HomogeneousIFS& E,
                                                        const HomogeneousIFS& F,
                                                        const AlgebraicReal& a,
                                                        const AlgebraicReal& lambda, int n, int k);

/// The explicit embedding family: alpha_k the positive root of
/// x (1 + x + ... + x^(k-1))^2 = 1, beta_k = alpha_k^((2k+1)/2) expressed
/// inside Q(alpha_k), lambda_k = (1 - alpha_k)/(1 - beta_k).
struct EmbeddingFamilyMember {
    AlgebraicReal alpha, beta, lambda;
    IntPolynomial alpha_poly;
};

EmbeddingFamilyMember lemma_ex1_family(int k);

/// Branch-and-bound over signed digits {-1, 0, 1} representing
/// u = (1 - alpha) sum z_i alpha^i; a digit survives at a level iff the
/// residual stays within the exact tail bound.
struct SignedExpansion {
    bool forced = false;  // a unique digit survived at every level < depth
    std::vector<int> digits;
    int branch_depth = -1;       // first level with two viable digits
    std::vector<int> branch_digits;
};

SignedExpansion unique_signed_expansion(const AlgebraicReal& alpha, const AlgebraicReal& u,
                                        int depth);

/// The finite set Lambda intersect [0,1] for Lambda = { sum t_i theta^i }
/// with digits from D - D, enumerated breadth-first with the escape-radius
/// prune and exact deduplication.
struct TranslateSetResult {
    std::vector<AlgebraicReal> points;  // sorted
    bool theta_above_two = true;        // hypothesis check (warning only)
    long explored = 0;
};

TranslateSetResult translate_set(const AlgebraicReal& theta, const std::vector<IntPolynomial>& digits,
                                 long budget = 100000);

}  // namespace cantorlab
