#include "pairwave/temporal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/numerics.hpp"

namespace pairwave {

namespace {

const cplx I(0.0, 1.0);

void require_normalizable(const GaussianTPSA& t) {
    if (!(t.f2s.real() > 0.0) || !(t.f2i.real() > 0.0) || !(t.dfr() > 0.0))
        throw Error(Errc::NonNormalizable, "quadratic form is not positive definite");
}

}  // namespace

double TimeDomainTPSA::et() const {
    return std::exp(2.0 * (t2s * t1i * t1i + t2i * t1s * t1s - t2si * t1s * t1i) / dt());
}

TimeDomainTPSA time_domain(const GaussianTPSA& t) {
    require_normalizable(t);
    TimeDomainTPSA td;
    td.df = 4.0 * t.f2s * t.f2i - t.f2si * t.f2si;
    if (std::abs(td.df) < 1e-14 * std::abs(4.0 * t.f2s * t.f2i)) {
        std::ostringstream os;
        os << "|D_f| = " << std::abs(td.df) << " below floor";
        throw Error(Errc::SingularTransform, os.str());
    }
    td.f2s = t.f2s;
    td.f2i = t.f2i;
    td.f2si = t.f2si;
    td.f1s = t.f1s;
    td.f1i = t.f1i;
    td.f0 = t.f0;
    td.amplitude = std::sqrt(t.c_phi_sq) * t.prefactor;

    const cplx d = td.df;
    td.t2s = (t.f2i / d).real();
    td.t2i = (t.f2s / d).real();
    td.t2si = -(t.f2si / d).real();
    td.t1s = ((2.0 * t.f2i * t.f1s - t.f2si * t.f1i) / d).imag();
    td.t1i = ((2.0 * t.f2s * t.f1i - t.f2si * t.f1s) / d).imag();
    td.t0 = t.f0 - ((t.f2i * t.f1s * t.f1s + t.f2s * t.f1i * t.f1i - t.f2si * t.f1s * t.f1i) / d).real();
    if (!(td.t2s > 0.0) || !(td.t2i > 0.0) || !(td.dt() > 0.0))
        throw Error(Errc::SingularTransform, "time-domain quadratic form not positive definite");
    return td;
}

cplx evaluate_time(const TimeDomainTPSA& td, double tau_s, double tau_i) {
    const cplx us = tau_s - I * td.f1s;
    const cplx ui = tau_i - I * td.f1i;
    const cplx arg = -(td.f2i * us * us + td.f2s * ui * ui - td.f2si * us * ui) / td.df;
    if (arg.real() - td.f0 > 700.0) throw Error(Errc::ExponentOverflow, "time-domain exponent too large");
    return td.amplitude * std::exp(-td.f0) / std::sqrt(td.df) * std::exp(arg);
}

FluxParams flux(const GaussianTPSA& t, Field field, Formula mode) {
    const bool sig = field == Field::signal;
    const double w0 = sig ? t.omega_s0 : t.omega_i0;
    FluxParams fp;
    fp.field = field;
    if (mode == Formula::general) {
        const TimeDomainTPSA td = time_domain(t);
        const double other = sig ? td.t2i : td.t2s;
        const double l_own = sig ? td.t1s : td.t1i;
        const double l_other = sig ? td.t1i : td.t1s;
        const double d = td.dt();
        fp.sigma_tau = std::sqrt(2.0 * other / d);
        fp.delta_tau0 = -(2.0 * other * l_own - td.t2si * l_other) / d;
        fp.amplitude = t.c_phi_sq * std::exp(-2.0 * td.t0) * std::sqrt(consts::pi) * consts::hbar * w0 * t.tau_p *
                       t.z_p / (std::sqrt(2.0) * (1.0 + t.chirp * t.chirp)) / std::abs(td.df) / std::sqrt(other) *
                       td.et();
    } else {
        require_normalizable(t);
        if (t.chirp != 0.0) throw Error(Errc::InvalidArgument, "simplified flux formulas assume a_p = 0");
        const double v_own = sig ? t.v_ps : t.v_pi;
        const double inv_own = sig ? t.inv_sigma_s_sq : t.inv_sigma_i_sq;
        const double bracket = t.tau_p * t.tau_p / 2.0 + 2.0 * inv_own + t.z_p * t.z_p * v_own * v_own / 2.0;
        const double d = simplified_dfr(t);
        fp.sigma_tau = std::sqrt(bracket);
        fp.delta_tau0 = 0.0;
        fp.amplitude = t.c_phi_sq * std::exp(-2.0 * t.f0) * std::sqrt(consts::pi) * consts::hbar * w0 * t.tau_p *
                       t.z_p / std::sqrt(d) / std::sqrt(bracket);
    }
    return fp;
}

TimeBandwidth time_bandwidth(const GaussianTPSA& t) {
    TimeBandwidth tb;
    tb.product_s = spectrum(t, Field::signal).sigma_omega * flux(t, Field::signal).sigma_tau;
    tb.product_i = spectrum(t, Field::idler).sigma_omega * flux(t, Field::idler).sigma_tau;
    tb.ratio = tb.product_s / tb.product_i;
    return tb;
}

double symmetric_time_bandwidth(double v, double tau_p, double z_p) {
    const double x = v * tau_p / z_p;
    return 0.5 * (x + 1.0 / x);
}

HomDip hom_params(const GaussianTPSA& t, Formula mode) {
    require_normalizable(t);
    HomDip h;
    h.beat = t.omega_s0 - t.omega_i0;
    if (mode == Formula::general) {
        // overlap of Phi(x, y) with Phi*(y, x): f2s + f2i* is real, only Re f2si survives
        const double p = t.f2s.real() + t.f2i.real();
        const double q = t.f2si.real();
        const double l = t.f1s.real() + t.f1i.real();
        h.a = std::sqrt(t.dfr() / (p * p - q * q)) * std::exp(l * l / (2.0 * (p + q))) / t.efr();
        h.b = 1.0 / (2.0 * (p - q));
    } else {
        const double a2 = 1.0 + t.chirp * t.chirp;
        const double z2 = t.z_p * t.z_p;
        h.b = 1.0 / (2.0 * t.inv_sigma_s_sq + 2.0 * t.inv_sigma_i_sq + z2 * t.v_si * t.v_si / 2.0);
        if (t.inv_sigma_s_sq == 0.0 && t.inv_sigma_i_sq == 0.0) {
            const double dv = t.v_ps * t.v_ps - t.v_pi * t.v_pi;
            h.a = 1.0 / std::sqrt(1.0 + z2 * a2 / (4.0 * t.tau_p * t.tau_p) * dv * dv / (t.v_si * t.v_si));
        } else {
            const double u = t.tau_p * t.tau_p / a2;
            const double p = u / 2.0 + z2 * (t.v_ps * t.v_ps + t.v_pi * t.v_pi) / 4.0 + t.inv_sigma_s_sq +
                             t.inv_sigma_i_sq;
            const double q = u / 2.0 + z2 * t.v_ps * t.v_pi / 2.0;
            h.a = std::sqrt(simplified_dfr(t) / (p * p - q * q));
        }
    }
    h.visibility = h.a / (2.0 - h.a);
    h.delta_tau_l = dip_width(h);
    return h;
}

double hom_curve(const HomDip& h, double tau_l) {
    return 1.0 - h.a * std::exp(-h.b * tau_l * tau_l) * std::cos(h.beat * tau_l);
}

double hom_curve(const GaussianTPSA& t, double tau_l) { return hom_curve(hom_params(t), tau_l); }

double dip_width(const HomDip& h) {
    if (!(h.b > 0.0)) throw Error(Errc::InvalidArgument, "HOM curvature B must be positive");
    const double closed = 2.0 * std::sqrt(std::log(2.0) / h.b);
    if (std::abs(h.beat) / std::sqrt(h.b) < 1e-6) return closed;
    // R_n(dt/2) = 1 - A/2  <=>  exp(-B dt^2/4) cos(beat dt/2) = 1/2
    auto g = [&](double dt) { return std::exp(-h.b * dt * dt / 4.0) * std::cos(h.beat * dt / 2.0) - 0.5; };
    const double hi = 2.0 * std::numbers::pi / std::abs(h.beat);
    const auto root = num::bisect(g, 0.0, hi, 1e-13);
    if (!root) throw Error(Errc::NoRootInInterval, "no half-depth crossing inside one beat period");
    return *root;
}

}  // namespace pairwave
