#pragma once

#include "cantorlab/ifs.hpp"

namespace cantorlab {

struct DimEstimate {
    std::vector<int> depths;
    std::vector<long> counts;
    double slope = 0;
    double residual = 0;  // rms deviation of the fitted tail points
    bool empty_intersection = false;
};

/// Box counts from level covers; the slope is fit over the deepest half of
/// the scales to suppress shallow-depth transients, clamped to [0, 1].
DimEstimate attractor_dim_estimate(const HomogeneousIFS& ifs, const std::vector<int>& depths,
                                   const CoverOptions& opt = {});

/// Counts level-n E-boxes meeting the matched-resolution image cover of
/// lambda F + c; estimates an upper bound for the intersection's box dimension.
DimEstimate intersection_dim_estimate(const HomogeneousIFS& E, const HomogeneousIFS& F,
                                      const AlgebraicReal& lambda, const AlgebraicReal& c,
                                      const std::vector<int>& depths,
                                      const CoverOptions& opt = {});

struct SweepCell {
    BigRational lambda, c;
    bool rejected = false;  // lambda == 0 cells
    DimEstimate est;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    double max_slope = 0;
    long max_index = -1;
    DimEstimate dim_a, dim_b;
};

/// Grid sweep of intersection estimates for a Cantor p-set against a Cantor
/// q-set. CommensurableBases when p and q are powers of one integer.
SweepResult furstenberg_sweep(const HomogeneousIFS& A, const HomogeneousIFS& B, long p, long q,
                              const std::vector<BigRational>& lambda_grid,
                              const std::vector<BigRational>& c_grid, int depth, int jobs = 1);

struct OrbitSpec {
    bool periodic = false;
    Coding pattern;  // period for periodic, else an explicit prefix
};

/// Box-dimension estimate of the coding-map image of the shift-orbit closure
/// of z, truncated at the working depth: level-n box counts equal the number
/// of distinct length-n factors of z.
DimEstimate orbit_closure_dim_estimate(const AlgebraicReal& alpha, const OrbitSpec& z,
                                       const std::vector<int>& depths);

std::string sweep_csv(const SweepResult& sweep);

}  // namespace cantorlab
