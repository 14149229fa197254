#pragma once

#include "cantorlab/ifs.hpp"

#include <complex>

namespace cantorlab {

/// Uniform (coin-toss) self-similar measure on the attractor. This module is
/// the project's only floating-point surface; every reported value carries a
/// truncation or quadrature error field.
struct CantorMeasure {
    HomogeneousIFS ifs;
    static CantorMeasure uniform(HomogeneousIFS ifs) { return {std::move(ifs)}; }
};

struct MuHatValue {
    double value = 0;        // |mu_hat(xi)|
    double error_bound = 0;  // truncation bound on the discarded tail factors
};

/// Modulus of the Fourier transform via the convergent product of branch
/// averages; factors are dropped once they are within tail_tol of 1.
MuHatValue mu_hat_modulus(const CantorMeasure& mu, double xi, double tail_tol = 1e-9);

/// Complex transform value (same truncation policy).
std::complex<double> mu_hat(const CantorMeasure& mu, double xi, double tail_tol = 1e-9,
                            double* error_bound = nullptr);

struct ProbeRow {
    double xi = 0;
    double modulus = 0;
    double error_bound = 0;
};
using ProbeSeries = std::vector<ProbeRow>;

/// Moduli along the geometric frequency ladder xi0 * base^k, k < count.
ProbeSeries probe_sequence(const CantorMeasure& mu, double xi0, double base, int count,
                           double tail_tol = 1e-9);

/// Midpoint-rule approximation of (1/T) integral_{-T}^{T} |mu_hat|^2.
double wiener_average(const CantorMeasure& mu, double T, long samples, double tail_tol = 1e-8);

struct OffsetValue {
    bool empty = false;   // feasible set vanished at this depth
    double value = 0;     // f_n(u): max feasible offset
    BigRational exact;    // exact right endpoint when nonempty
};

/// f_n(u) = max of the depth-n feasible offset set for u C_beta + d inside
/// C_alpha. Antitone in n and an upper approximation of the true sup.
OffsetValue offset_function(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                            const BigRational& u, int depth);

struct EtaHatValue {
    bool constructible = false;
    std::complex<double> value{0, 0};
    double modulus = 0;
    double bound = 0;             // (1/b) integral |mu_hat(u n)| over the same cells
    double defined_fraction = 0;  // share of grid cells with a nonempty feasible set
};

/// Quadrature realization of eta_hat(n) = (1/b) int_0^b mu_hat(u n)
/// e^{-i f(u) n} du over the cells where the depth-limited f is defined;
/// NotConstructible (flag) when no cell is feasible.
EtaHatValue eta_hat(const AlgebraicReal& alpha, const AlgebraicReal& beta, double n_freq,
                    int grid_points, int depth, double tail_tol = 1e-9);

/// Batch variant sharing one offset-function sweep across frequencies.
std::vector<EtaHatValue> eta_profile(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                                     const std::vector<double>& freqs, int grid_points, int depth,
                                     double tail_tol = 1e-9);

/// CSV rows "xi,modulus,error_bound".
std::string probe_series_csv(const ProbeSeries& series);

/// Minimal SVG polyline plot of modulus against log10 frequency.
std::string probe_series_svg(const ProbeSeries& series, int width = 640, int height = 400);

}  // namespace cantorlab
