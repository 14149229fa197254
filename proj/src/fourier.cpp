#include "cantorlab/fourier.hpp"

#include "cantorlab/embed.hpp"

#include <cmath>
#include <sstream>

namespace cantorlab {

namespace {

struct MeasureFrame {
    double ratio;
    std::vector<double> digits;
    double max_abs_digit;
    size_t branches;
};

MeasureFrame frame_of(const CantorMeasure& mu) {
    MeasureFrame f;
    f.ratio = mu.ifs.ratio.to_double();
    f.max_abs_digit = 0;
    for (const AlgebraicReal& d : mu.ifs.digits) {
        double v = d.to_double();
        f.digits.push_back(v);
        f.max_abs_digit = std::max(f.max_abs_digit, std::fabs(v));
    }
    f.branches = f.digits.size();
    return f;
}

// branch average B(eta) = (1/l) sum_j exp(-i eta d_j)
std::complex<double> branch_average(const MeasureFrame& f, double eta) {
    std::complex<double> acc{0, 0};
    for (double d : f.digits) acc += std::polar(1.0, -eta * d);
    return acc / static_cast<double>(f.branches);
}

// number of product terms so the dropped tail deviates from 1 by < tol:
// |B(eta) - 1| <= |eta| max|d|, summed over the geometric tail
int term_count(const MeasureFrame& f, double xi, double tol, double* tail_bound) {
    double axi = std::fabs(xi);
    int n = 0;
    double tail = axi * f.max_abs_digit / (1.0 - f.ratio);
    while (tail >= tol && n < 4000) {
        tail *= f.ratio;
        ++n;
    }
    if (tail_bound) *tail_bound = tail;
    return n;
}

}  // namespace

std::complex<double> mu_hat(const CantorMeasure& mu, double xi, double tail_tol,
                            double* error_bound) {
    MeasureFrame f = frame_of(mu);
    double tail = 0;
    int n = term_count(f, xi, tail_tol, &tail);
    if (error_bound) *error_bound = tail;
    std::complex<double> acc{1, 0};
    double eta = xi;
    for (int i = 0; i < n; ++i) {
        acc *= branch_average(f, eta);
        eta *= f.ratio;
    }
    return acc;
}

MuHatValue mu_hat_modulus(const CantorMeasure& mu, double xi, double tail_tol) {
    MuHatValue out;
    std::complex<double> v = mu_hat(mu, xi, tail_tol, &out.error_bound);
    out.value = std::abs(v);
    return out;
}

ProbeSeries probe_sequence(const CantorMeasure& mu, double xi0, double base, int count,
                           double tail_tol) {
    if (base <= 1.0) fail(Errc::InvalidArgument, "probe base must exceed 1");
    if (count < 1) fail(Errc::InvalidArgument, "probe count must be positive");
    ProbeSeries out;
    double xi = xi0;
    for (int k = 0; k < count; ++k) {
        MuHatValue v = mu_hat_modulus(mu, xi, tail_tol);
        out.push_back({xi, v.value, v.error_bound});
        xi *= base;
    }
    return out;
}

double wiener_average(const CantorMeasure& mu, double T, long samples, double tail_tol) {
    if (T <= 0 || samples < 100) fail(Errc::InvalidArgument, "need T > 0 and samples >= 100");
    // (1/T) int_{-T}^{T} |mu_hat|^2 = (2/T) int_0^T by evenness of the modulus
    double acc = 0;
    for (long k = 0; k < samples; ++k) {
        double x = (static_cast<double>(k) + 0.5) * T / static_cast<double>(samples);
        MuHatValue v = mu_hat_modulus(mu, x, tail_tol);
        acc += v.value * v.value;
    }
    return 2.0 * acc / static_cast<double>(samples);
}

OffsetValue offset_function(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                            const BigRational& u, int depth) {
    if (!alpha.is_rational() || !beta.is_rational())
        fail(Errc::InvalidArgument, "offset function requires rational alpha, beta");
    BigRational a = alpha.rational();
    BigRational b_range = (1 - 2 * a) / a;
    if (u <= 0 || u > b_range) fail(Errc::ScaleOutOfRange, "u must lie in (0, (1-2 alpha)/alpha]");

    HomogeneousIFS E = HomogeneousIFS::central_cantor(alpha);
    HomogeneousIFS F = HomogeneousIFS::central_cantor(beta);
    IntervalCover cover = level_cover(E, depth);
    std::optional<BigRational> g = min_gap(cover);
    int m = 0;
    if (g) {
        BigRational piece = u;  // u * width(hull F) with unit hull
        while (piece >= *g) {
            piece *= beta.rational();
            ++m;
        }
    }
    IntervalCover feas = feasible_offsets(E, F, AlgebraicReal(u), depth, m);
    OffsetValue out;
    if (feas.empty()) {
        out.empty = true;
        return out;
    }
    out.exact = feas.intervals.back().hi;
    out.value = static_cast<double>(out.exact);
    return out;
}

std::vector<EtaHatValue> eta_profile(const AlgebraicReal& alpha, const AlgebraicReal& beta,
                                     const std::vector<double>& freqs, int grid_points, int depth,
                                     double tail_tol) {
    if (grid_points < 8) fail(Errc::InvalidArgument, "eta quadrature needs at least 8 cells");
    BigRational a = alpha.rational();
    BigRational b_range = (1 - 2 * a) / a;

    CantorMeasure mu = CantorMeasure::uniform(HomogeneousIFS::central_cantor(beta));

    // one offset sweep shared across all requested frequencies
    std::vector<double> f_of_u(static_cast<size_t>(grid_points));
    std::vector<double> u_of(static_cast<size_t>(grid_points));
    std::vector<bool> defined(static_cast<size_t>(grid_points), false);
    long live = 0;
    for (int k = 0; k < grid_points; ++k) {
        BigRational u = b_range * BigRational(2 * k + 1, 2L * grid_points);
        u_of[static_cast<size_t>(k)] = static_cast<double>(u);
        OffsetValue ov = offset_function(alpha, beta, u, depth);
        if (!ov.empty) {
            defined[static_cast<size_t>(k)] = true;
            f_of_u[static_cast<size_t>(k)] = ov.value;
            ++live;
        }
    }

    std::vector<EtaHatValue> out;
    for (double n_freq : freqs) {
        EtaHatValue ev;
        ev.defined_fraction = static_cast<double>(live) / static_cast<double>(grid_points);
        if (live == 0) {
            out.push_back(ev);
            continue;
        }
        ev.constructible = true;
        std::complex<double> acc{0, 0};
        double babs = 0;
        for (int k = 0; k < grid_points; ++k) {
            if (!defined[static_cast<size_t>(k)]) continue;
            double u = u_of[static_cast<size_t>(k)];
            std::complex<double> m = mu_hat(mu, u * n_freq, tail_tol, nullptr);
            acc += m * std::polar(1.0, -f_of_u[static_cast<size_t>(k)] * n_freq);
            babs += std::abs(m);
        }
        ev.value = acc / static_cast<double>(live);
        ev.modulus = std::abs(ev.value);
        ev.bound = babs / static_cast<double>(live);
        out.push_back(ev);
    }
    return out;
}

EtaHatValue eta_hat(const AlgebraicReal& alpha, const AlgebraicReal& beta, double n_freq,
                    int grid_points, int depth, double tail_tol) {
    EtaHatValue v = eta_profile(alpha, beta, {n_freq}, grid_points, depth, tail_tol)[0];
    if (!v.constructible)
        fail(Errc::NotConstructible, "feasible offset sets are empty on every grid cell");
    return v;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string probe_series_csv(const ProbeSeries& series) {
    std::string out = "xi,modulus,error_bound\n";
    for (const ProbeRow& r : series) {
        out += fmt_double(r.xi);
        out += ',';
        out += fmt_double(r.modulus);
        out += ',';
        out += fmt_double(r.error_bound);
        out += '\n';
    }
    return out;
}

std::string probe_series_svg(const ProbeSeries& series, int width, int height) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!series.empty()) {
        double xmin = std::log10(std::max(series.front().xi, 1e-12));
        double xmax = std::log10(std::max(series.back().xi, xmin + 1e-9));
        if (xmax <= xmin) xmax = xmin + 1;
        const int pad = 40;
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (const ProbeRow& r : series) {
            double fx = (std::log10(std::max(r.xi, 1e-12)) - xmin) / (xmax - xmin);
            double fy = std::min(std::max(r.modulus, 0.0), 1.0);
            double px = pad + fx * (width - 2 * pad);
            double py = height - pad - fy * (height - 2 * pad);
            os << px << ',' << py << ' ';
        }
        os << "\"/>\n";
        os << "<line x1=\"" << pad << "\" y1=\"" << height - pad << "\" x2=\"" << width - pad
           << "\" y2=\"" << height - pad << "\" stroke=\"gray\"/>\n";
        os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\""
           << height - pad << "\" stroke=\"gray\"/>\n";
        os << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
           << "\" font-size=\"12\">log10(xi)</text>\n";
        os << "<text x=\"8\" y=\"" << pad - 8 << "\" font-size=\"12\">|mu_hat|</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cantorlab
