#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pairwave/dispersion.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/tpsa.hpp"

// Brute-force counterparts of the closed forms. Nothing here calls the spectral,
// temporal or entanglement code paths; the amplitude itself is sampled through evaluate().
namespace pairwave::oracle {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int regions = 0;
};

struct QuadOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-11;
    int max_regions = 40000;
};

// adaptive Gauss-Kronrod 7/15, global subdivision; throws QuadratureNotConverged
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt = {});
// tensor-product Gauss-Kronrod 7/15 on rectangles, worst region split into four
QuadResult integrate_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                        const QuadOptions& opt = {});

// erf from its defining integral
double erf_quad(double x);

// Gaussian frame of a log-density that is quadratic in (x, y), from finite differences
struct Frame {
    double cx = 0.0, cy = 0.0;     // peak
    double cov[2][2] = {{0, 0}, {0, 0}};  // covariance of exp(log_density)
    double axis[2][2] = {{1, 0}, {0, 1}}; // columns: principal directions
    double sd[2] = {0, 0};                // standard deviations along the axes
    double log_peak = 0.0;
};

Frame gaussian_frame(const std::function<double(double, double)>& log_density, double x0, double y0, double hx,
                     double hy);

// integral of |Phi|^2 over both frequencies
double quad_norm(const GaussianTPSA& t, const QuadOptions& opt = {});

struct Marginal {
    Field field = Field::signal;
    std::vector<double> omega;     // rad/s
    std::vector<double> spectrum;  // hbar omega int |Phi|^2, W per rad/s
    double mass = 0.0;             // int int |Phi|^2
    double mean = 0.0;             // offset of the photon-number marginal from the central frequency
    double variance = 0.0;
    double sigma = 0.0;  // sqrt(2 variance): e^-1 half width of an equivalent Gaussian
};

Marginal numeric_marginal(const GaussianTPSA& t, Field field, int samples = 65);

// moments of the time-domain marginal, from frequency derivatives of Phi via Parseval
struct TemporalMoments {
    double mean = 0.0;
    double variance = 0.0;
    double sigma = 0.0;
};

TemporalMoments numeric_temporal_marginal(const GaussianTPSA& t, Field field);

// singular values of the sampled, normalized amplitude; squares sum to one
std::vector<double> numeric_schmidt(const GaussianTPSA& t, int n_points = 512, double span_widths = 5.0);

struct TimeProbe {
    double tau_s = 0.0, tau_i = 0.0;  // s
    std::complex<double> value;
};

// 2-D FFT of evaluate() on an n x n grid; values at the temporal peak and 8 nodes on its one-sigma ellipse
std::vector<TimeProbe> fft_time_domain(const GaussianTPSA& t, int n = 1024);

// rho(tau_l) from the time-domain amplitude, Phi_t(a, b) Phi_t*(b + tau, a - tau) integrated over a, b
double hom_overlap(const std::function<std::complex<double>(double, double)>& phi_t, double beat, double tau_l,
                   double center_s, double center_i, double half_width);

// single-pulse amplitude before any Taylor expansion
std::complex<double> exact_phi1p(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c, double omega_s,
                                 double omega_i);

struct AuditPoint {
    double d_omega_s = 0.0, d_omega_i = 0.0;  // rad/s offsets
    double gaussian = 0.0;                    // |Phi| / |Phi(centrals)|
    double exact = 0.0;                       // |Phi1p| / |Phi1p(centrals)|
    double deviation = 0.0;                   // |gaussian - exact| / exact
    bool inside = false;                      // |Phi|^2 >= e^-4 of its peak
};

struct Audit {
    std::vector<AuditPoint> points;
    double max_deviation_inside = 0.0;
    double max_deviation_box = 0.0;
    double calibration_ratio = 0.0;  // |Phi| / (sqrt(f) |Phi1p|) at the centrals
};

// grid over +-span spectral widths (e^-1 widths of the marginals)
Audit gaussian_audit(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c, const GaussianTPSA& t,
                     int n = 41, double span = 2.0);

}  // namespace pairwave::oracle
