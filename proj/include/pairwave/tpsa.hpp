#pragma once

#include <complex>
#include <optional>

#include "pairwave/dispersion.hpp"

namespace pairwave {

using cplx = std::complex<double>;

struct PumpSpec {
    double lambda_p0 = 0.0;     // m
    double tau_p = 0.0;         // s
    double chirp = 0.0;         // a_p
    double z_p = 0.0;           // m
    double y_p = 0.0;           // m
    double theta_p0 = 0.0;      // rad
    double dtilde_theta = 0.0;  // rad s, d theta_p / d omega_p at omega_p0
    double power = 0.0;         // W
    double f_rep = 0.0;         // 1/s
};

void validate(const PumpSpec& p);

// nullopt = no filter; 1/sigma^2 contributes exactly zero
struct FilterSpec {
    std::optional<double> sigma_s;  // rad/s
    std::optional<double> sigma_i;
};

struct Centrals {
    double omega_s0 = 0.0;
    double omega_i0 = 0.0;
    double omega_p0() const { return omega_s0 + omega_i0; }
};

// pump wavelength plus signal wavelength; idler follows from energy conservation
Centrals centrals_from_wavelengths(double lambda_p0, double lambda_s0);

enum class GTerms { include, neglect };
// reading of the filter contribution to f2si: none, or 2/(sigma_s sigma_i)
enum class FilterCross { none, product };

struct BuildOptions {
    GTerms g = GTerms::include;
    FilterCross cross = FilterCross::none;
};

struct VCoefficients {
    double v_ps = 0.0, v_pi = 0.0, v_si = 0.0;  // s/m
};

struct GaussianTPSA {
    double omega_s0 = 0.0, omega_i0 = 0.0, omega_p0 = 0.0;
    cplx f2s, f2i, f2si;  // s^2
    cplx f1s, f1i;        // s
    double f0 = 0.0;
    double c_phi_sq = 0.0;   // |C_phi|^2, 1/m
    double prefactor = 0.0;  // sqrt(Zp tau_p / (1 + a_p^2))
    double v_ps = 0.0, v_pi = 0.0, v_si = 0.0;
    cplx g_s, g_i, g_si;  // corrections from the transverse overlap, s^2
    bool g_included = true;

    // pump / filter values retained for the closed-form shortcuts
    double tau_p = 0.0, chirp = 0.0, z_p = 0.0;
    double inv_sigma_s_sq = 0.0, inv_sigma_i_sq = 0.0;  // s^2
    double f_rep = 0.0;

    bool chirp_free() const { return chirp == 0.0; }
    bool symmetric() const;
    double dfr() const { return 4.0 * f2s.real() * f2i.real() - f2si.real() * f2si.real(); }
    // exp(2 (f2i f1s^2 + f2s f1i^2 - f2si f1s f1i) / Dfr), real parts throughout
    double efr() const;
};

VCoefficients v_coefficients(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c);
double pair_norm_constant(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c);

GaussianTPSA build_tpsa(const WaveguideSpec& wg, const PumpSpec& pump, const FilterSpec& filt, const Centrals& c,
                        const BuildOptions& opts = {});

// same amplitude with the G corrections switched on or off
GaussianTPSA with_g_terms(const GaussianTPSA& t, GTerms g);

cplx exponent(const GaussianTPSA& t, double omega_s, double omega_i);  // phi
cplx evaluate(const GaussianTPSA& t, double omega_s, double omega_i);

// integral of |Phi|^2 over both frequencies
double norm_sq(const GaussianTPSA& t);
GaussianTPSA normalize(const GaussianTPSA& t);

// coefficients in Omega = (ws+wi)/2, w = (ws-wi)/2 offsets, G terms removed
struct RotatedTPSA {
    cplx sum_sq;    // dOmega^2
    cplx cross;     // dOmega dw
    cplx diff_sq;   // dw^2
    cplx sum_lin;   // dOmega
    cplx diff_lin;  // dw
    double f0 = 0.0;
    double c_phi_sq = 0.0;
    double prefactor = 0.0;
};

struct QuadraticForm {
    cplx f2s, f2i, f2si;
};

RotatedTPSA rotate(const GaussianTPSA& t);
QuadraticForm unrotate(const RotatedTPSA& r);

struct ExternalDispersion {
    double dtilde_out = 0.0;  // rad s
    double d_out = 0.0;       // rad/m
    double theta_out = 0.0;   // rad
};

ExternalDispersion external_angular_dispersion(const DispersionModel& model, double omega_p0, double theta_p0,
                                               double dtilde_internal);
double internal_from_external(const DispersionModel& model, double omega_p0, double theta_p0, double dtilde_out);

// D = Dtilde omega_p0^2 / (2 pi c), angle per unit wavelength
double dtilde_to_d(double dtilde, double omega_p0);
double d_to_dtilde(double d, double omega_p0);

}  // namespace pairwave
