#include "pairwave/spectral.hpp"

#include <cmath>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"

namespace pairwave {

namespace {

void require_normalizable(const GaussianTPSA& t) {
    if (!(t.f2s.real() > 0.0) || !(t.f2i.real() > 0.0) || !(t.dfr() > 0.0))
        throw Error(Errc::NonNormalizable, "quadratic form is not positive definite");
}

// tau_p^2 / (1 + a^2), the real part of the pulse term times 4
double pulse_sq(const GaussianTPSA& t) { return t.tau_p * t.tau_p / (1.0 + t.chirp * t.chirp); }

}  // namespace

double simplified_dfr(const GaussianTPSA& t) {
    const double u = pulse_sq(t);
    const double z2 = t.z_p * t.z_p;
    const double is = t.inv_sigma_s_sq, ii = t.inv_sigma_i_sq;
    return 4.0 * is * ii + u * (is + ii) + u * z2 * t.v_si * t.v_si / 4.0 + z2 * t.v_pi * t.v_pi * is +
           z2 * t.v_ps * t.v_ps * ii;
}

RateResult pair_rate(const GaussianTPSA& t, Formula mode) {
    require_normalizable(t);
    RateResult r;
    if (mode == Formula::general) {
        r.dfr = t.dfr();
        r.efr = t.efr();
        r.n = norm_sq(t);
    } else {
        const double scale = t.c_phi_sq * std::exp(-2.0 * t.f0);
        const double a2 = 1.0 + t.chirp * t.chirp;
        if (t.inv_sigma_s_sq == 0.0 && t.inv_sigma_i_sq == 0.0) {
            r.dfr = simplified_dfr(t);
            r.n = scale * 2.0 * consts::pi / (std::sqrt(a2) * t.v_si);
        } else {
            r.dfr = simplified_dfr(t);
            if (!(r.dfr > 0.0)) throw Error(Errc::NonNormalizable, "simplified Dfr not positive");
            r.n = scale * consts::pi * t.z_p * t.tau_p / (a2 * std::sqrt(r.dfr));
        }
    }
    r.per_pulse = r.n / t.f_rep;
    return r;
}

SpectrumParams spectrum(const GaussianTPSA& t, Field field, Formula mode) {
    require_normalizable(t);
    const bool sig = field == Field::signal;
    const double w0 = sig ? t.omega_s0 : t.omega_i0;
    const double a2 = 1.0 + t.chirp * t.chirp;
    SpectrumParams sp;
    sp.field = field;
    if (mode == Formula::general) {
        const double d = t.dfr();
        const double other = sig ? t.f2i.real() : t.f2s.real();
        const double l_own = sig ? t.f1s.real() : t.f1i.real();
        const double l_other = sig ? t.f1i.real() : t.f1s.real();
        sp.sigma_omega = std::sqrt(2.0 * other / d);
        sp.delta_omega0 = -(2.0 * other * l_own - t.f2si.real() * l_other) / d;
        sp.amplitude = t.c_phi_sq * std::exp(-2.0 * t.f0) * std::sqrt(consts::pi) * consts::hbar * w0 * t.tau_p *
                       t.z_p / (std::sqrt(2.0) * a2) / std::sqrt(other) * t.efr();
    } else {
        const double d = simplified_dfr(t);
        if (!(d > 0.0)) throw Error(Errc::NonNormalizable, "simplified Dfr not positive");
        const double v_other = sig ? t.v_pi : t.v_ps;
        const double inv_other = sig ? t.inv_sigma_i_sq : t.inv_sigma_s_sq;
        const double bracket = pulse_sq(t) / 2.0 + 2.0 * inv_other + t.z_p * t.z_p * v_other * v_other / 2.0;
        sp.sigma_omega = std::sqrt(bracket / d);
        sp.delta_omega0 = 0.0;
        sp.amplitude = t.c_phi_sq * std::exp(-2.0 * t.f0) * std::sqrt(consts::pi) * consts::hbar * w0 * t.tau_p *
                       t.z_p / a2 / std::sqrt(bracket);
    }
    return sp;
}

WidthRatio width_ratio(const GaussianTPSA& t) {
    require_normalizable(t);
    WidthRatio w;
    w.f = t.f2s.real() / t.f2i.real();
    const double ss = spectrum(t, Field::signal).sigma_omega;
    const double si = spectrum(t, Field::idler).sigma_omega;
    w.ratio = ss / si;
    w.f_from_widths = (si / ss) * (si / ss);
    return w;
}

double unfiltered_width(const VCoefficients& v, double tau_p, double chirp, double z_p, Field field) {
    const double vo = field == Field::signal ? v.v_pi : v.v_ps;
    return std::sqrt(2.0) / v.v_si * std::sqrt(1.0 / (z_p * z_p) + (1.0 + chirp * chirp) * vo * vo / (tau_p * tau_p));
}

AsymptoticWidths asymptotic_widths(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c) {
    const VCoefficients v = v_coefficients(wg, pump, c);
    const double a = std::sqrt(1.0 + pump.chirp * pump.chirp);
    AsymptoticWidths w;
    w.sigma_cw = std::sqrt(2.0) / (v.v_si * pump.z_p);
    w.sigma_s_inf = std::sqrt(2.0) * std::abs(v.v_pi) / v.v_si * a / pump.tau_p;
    w.sigma_i_inf = std::sqrt(2.0) * std::abs(v.v_ps) / v.v_si * a / pump.tau_p;
    return w;
}

double wavelength_width(double sigma_omega, double omega0) {
    return 2.0 * consts::pi * consts::c * sigma_omega / (omega0 * omega0);
}

double omega_width_from_wavelength(double sigma_lambda, double omega0) {
    return sigma_lambda * omega0 * omega0 / (2.0 * consts::pi * consts::c);
}

double fwhm_from_width(double sigma) { return 2.0 * std::sqrt(std::log(2.0)) * sigma; }

}  // namespace pairwave
