#pragma once

#include <vector>

#include "pairwave/tpsa.hpp"

namespace pairwave {

// Psi_s(x', x) = C^2 exp(-e2 x'^2 - e2* x^2 + 2 e2c x x' - e1 x' - e1* x), offsets from omega_s0
struct ReducedKernel {
    cplx e2;            // s^2
    double e2c = 0.0;   // s^2
    cplx e1;            // s
    double c_sq = 0.0;  // trace normalization, s^-1
};

ReducedKernel reduced_kernel(const GaussianTPSA& t);
cplx kernel_value(const ReducedKernel& k, double x_prime, double x);

struct SchmidtSpectrum {
    double p = 0.0;
    double vartheta = 0.0;
    double entropy = 0.0;  // bits
    int n_min = 1;         // number of modes needed to reach p_min
    double p_min = 0.95;
    std::vector<double> lambda_sq;  // leading eigenvalues (1 - vartheta) vartheta^n

    double eigenvalue_sq(int n) const;
};

// P = Re(e2)/e2c - 1; the chirp phase of e2 is a unitary factor and drops out of the spectrum
double schmidt_p(const ReducedKernel& k);
// |e2|/e2c - 1 and its expansion in f coefficients; equal to schmidt_p only for real e2
double schmidt_p_modulus(const ReducedKernel& k);
double schmidt_p_from_f(const GaussianTPSA& t);

double vartheta_from_p(double p);
double entropy(double vartheta);
double entropy_series(double vartheta, int terms);
int n_min(double vartheta, double p_min);

SchmidtSpectrum schmidt(const GaussianTPSA& t, double p_min = 0.95, int keep = 16);
SchmidtSpectrum schmidt_from_p(double p, double p_min = 0.95, int keep = 16);

// phi_n(x) = sqrt(k) psi_n(k x), k = sqrt((1 - vartheta^2)/vartheta), x in kernel-scaled units
double schmidt_mode(double vartheta, int n, double x);

struct PrincipalAxes {
    double mu1 = 0.0, mu2 = 0.0;  // mu1 >= mu2
    double psi_si = 0.0;          // rad, in [-pi/4, pi/4]
};

// real parts of f2 only
PrincipalAxes principal_axes(const GaussianTPSA& t);

struct SeparabilityResult {
    std::vector<double> dtilde_roots;  // rad s, ascending
    double discriminant = 0.0;
    double z_min = 0.0;  // smallest Z_p with real roots at this tau_p
};

// roots in Dtilde_theta of Re f2si = 0, G_si's own Dtilde dependence included when G is on
SeparabilityResult separability_roots(const WaveguideSpec& wg, const PumpSpec& pump_base, const Centrals& c,
                                      GTerms g = GTerms::include);

// derivatives of D_f = 4 f2s f2i - f2si^2 (default filter reading)
struct DfDerivatives {
    cplx d_tau_sq;      // d D_f / d(tau_p^2)
    cplx d_z_sq;        // d D_f / d(Z_p^2)
    cplx d_sigma_s_sq;  // d D_f / d(sigma_s^2), zero when unfiltered
    cplx d_sigma_i_sq;
};

DfDerivatives entanglement_derivatives(const GaussianTPSA& t);

}  // namespace pairwave
