#pragma once

#include "pairwave/tpsa.hpp"

namespace pairwave {

// general: full quadratic form incl. f1 and whatever G terms the amplitude carries.
// simplified: pump/filter/V closed forms only (G and f1 ignored).
enum class Formula { general, simplified };
enum class Field { signal, idler };

struct RateResult {
    double n = 0.0;          // pairs/s
    double per_pulse = 0.0;  // n / f_rep
    double dfr = 0.0;        // s^4
    double efr = 1.0;
};

// S(w) = amplitude exp(-(w - w0 - shift)^2 / sigma^2); amplitude in W per rad/s
struct SpectrumParams {
    Field field = Field::signal;
    double amplitude = 0.0;
    double sigma_omega = 0.0;   // rad/s
    double delta_omega0 = 0.0;  // rad/s
};

struct WidthRatio {
    double f = 1.0;              // f2s^r / f2i^r
    double ratio = 1.0;          // sigma_omega_s / sigma_omega_i
    double f_from_widths = 1.0;  // (sigma_omega_i / sigma_omega_s)^2
};

struct AsymptoticWidths {
    double sigma_cw = 0.0;     // tau_p -> infinity
    double sigma_s_inf = 0.0;  // Z_p -> infinity
    double sigma_i_inf = 0.0;
};

RateResult pair_rate(const GaussianTPSA& t, Formula mode = Formula::general);
SpectrumParams spectrum(const GaussianTPSA& t, Field field, Formula mode = Formula::general);
WidthRatio width_ratio(const GaussianTPSA& t);
AsymptoticWidths asymptotic_widths(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c);

// unfiltered width from the V coefficients alone
double unfiltered_width(const VCoefficients& v, double tau_p, double chirp, double z_p, Field field);

// 4 f2s f2i - f2si^2 from pump, filter and V values with G neglected
double simplified_dfr(const GaussianTPSA& t);

double wavelength_width(double sigma_omega, double omega0);  // 2 pi c sigma / omega0^2
double omega_width_from_wavelength(double sigma_lambda, double omega0);
double fwhm_from_width(double sigma);                        // e^-1 half width -> FWHM

}  // namespace pairwave
