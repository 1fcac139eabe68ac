#include "pairwave/tpsa.hpp"

#include <cmath>
#include <sstream>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"

namespace pairwave {

namespace {

double inv_sq(const std::optional<double>& sigma) { return sigma ? 1.0 / (*sigma * *sigma) : 0.0; }

void check_normalizable(const GaussianTPSA& t) {
    if (!(t.f2s.real() > 0.0) || !(t.f2i.real() > 0.0) || !(t.dfr() > 0.0)) {
        std::ostringstream os;
        os << "Re f2s = " << t.f2s.real() << ", Re f2i = " << t.f2i.real() << ", Dfr = " << t.dfr();
        throw Error(Errc::NonNormalizable, os.str());
    }
}

}  // namespace

void validate(const PumpSpec& p) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw Error(Errc::InvalidArgument, what);
    };
    need(p.lambda_p0 > 0.0, "pump lambda_p0 must be positive");
    need(p.tau_p > 0.0, "pump tau_p must be positive");
    need(p.z_p > 0.0, "pump Z_p must be positive");
    need(p.y_p > 0.0, "pump Y_p must be positive");
    need(p.power >= 0.0, "pump power must be non-negative");
    need(p.f_rep > 0.0, "pump f_rep must be positive");
    need(std::abs(p.theta_p0) < consts::pi / 2.0, "pump theta_p0 must lie inside (-pi/2, pi/2)");
    need(std::isfinite(p.chirp) && std::isfinite(p.dtilde_theta), "pump chirp and Dtilde_theta must be finite");
}

Centrals centrals_from_wavelengths(double lambda_p0, double lambda_s0) {
    Centrals c;
    c.omega_s0 = omega_from_wavelength(lambda_s0);
    c.omega_i0 = omega_from_wavelength(lambda_p0) - c.omega_s0;
    if (!(c.omega_i0 > 0.0)) throw Error(Errc::InvalidArgument, "signal wavelength leaves no energy for the idler");
    return c;
}

bool GaussianTPSA::symmetric() const {
    const bool degenerate = std::abs(omega_s0 - omega_i0) <= 1e-12 * omega_s0;
    const bool mirrored = std::abs(v_ps + v_pi) <= 1e-12 * std::abs(v_si);
    return degenerate && mirrored && inv_sigma_s_sq == inv_sigma_i_sq;
}

double GaussianTPSA::efr() const {
    const double d = dfr();
    const double a = f1s.real(), b = f1i.real();
    return std::exp(2.0 * (f2i.real() * a * a + f2s.real() * b * b - f2si.real() * a * b) / d);
}

VCoefficients v_coefficients(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c) {
    const double wp = c.omega_p0();
    const double kp = bulk_wavenumber(wg.model, wp);
    const double vp = group_velocity(wg, wp, Velocity::pump_bulk);
    const double vs = group_velocity(wg, c.omega_s0, Velocity::guided);
    const double vi = group_velocity(wg, c.omega_i0, Velocity::guided);
    const double s = std::sin(pump.theta_p0) / vp + kp * std::cos(pump.theta_p0) * pump.dtilde_theta;
    return {s - 1.0 / vs, s + 1.0 / vi, 1.0 / vs + 1.0 / vi};
}

double pair_norm_constant(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c) {
    const double ws = c.omega_s0, wi = c.omega_i0, wp = c.omega_p0();
    const double np = refractive_index(wg.model, wp);
    const double ns = refractive_index(wg.model, ws);
    const double ni = refractive_index(wg.model, wi);
    const double vp = group_velocity(wg, wp, Velocity::pump_bulk);
    const double aperture = std::erf(wg.ly / (2.0 * pump.y_p));
    const double lead = std::sqrt(2.0 * consts::pi) * consts::pi * consts::pi * wg.d * wg.d * ws * wi /
                        (consts::eps0 * consts::c * consts::c * np * np * std::pow(ns, 3) * std::pow(ni, 3));
    const double overlap = std::sqrt(ns * ni * ws * wi) / (ns * ws + ni * wi);
    return lead * overlap * pump.y_p / (wg.ly * wg.ly) * aperture * aperture * pump.power /
           (vp * std::cos(pump.theta_p0));
}

GaussianTPSA build_tpsa(const WaveguideSpec& wg, const PumpSpec& pump, const FilterSpec& filt, const Centrals& c,
                        const BuildOptions& opts) {
    validate(wg);
    validate(pump);
    if (filt.sigma_s && !(*filt.sigma_s > 0.0)) throw Error(Errc::InvalidArgument, "filter sigma_s must be positive");
    if (filt.sigma_i && !(*filt.sigma_i > 0.0)) throw Error(Errc::InvalidArgument, "filter sigma_i must be positive");

    const double wp = c.omega_p0();
    if (std::abs(omega_from_wavelength(pump.lambda_p0) - wp) > 1e-9 * wp)
        throw Error(Errc::InvalidArgument, "pump wavelength does not match omega_s0 + omega_i0");

    const double kp = bulk_wavenumber(wg.model, wp);
    const double resid = phase_matching_residual(wg, c.omega_s0, c.omega_i0, pump.theta_p0);
    if (std::abs(resid) > 1e-9 * kp) {
        std::ostringstream os;
        os << "k_p sin(theta) - beta_s + beta_i = " << resid << " 1/m at theta_p0 = " << pump.theta_p0;
        throw Error(Errc::PhaseMatchViolated, os.str());
    }

    const double vp = group_velocity(wg, wp, Velocity::pump_bulk);
    const double th = pump.theta_p0, dt = pump.dtilde_theta;
    const VCoefficients v = v_coefficients(wg, pump, c);
    const GTaylor gt = g_taylor(wg, c.omega_s0, c.omega_i0);

    // K(wp) = kp cos(theta_p); expand K^2/2 to second order (pump GVD and theta'' neglected)
    const double kc = kp * std::cos(th);
    const double q1 = std::cos(th) / vp - kp * std::sin(th) * dt;
    const double q2 = std::cos(th) / (kp * vp * vp) - 4.0 * std::sin(th) * dt / vp -
                      kp * std::cos(2.0 * th) * dt * dt / std::cos(th);

    GaussianTPSA t;
    t.omega_s0 = c.omega_s0;
    t.omega_i0 = c.omega_i0;
    t.omega_p0 = wp;
    t.v_ps = v.v_ps;
    t.v_pi = v.v_pi;
    t.v_si = v.v_si;
    t.tau_p = pump.tau_p;
    t.chirp = pump.chirp;
    t.z_p = pump.z_p;
    t.f_rep = pump.f_rep;
    t.inv_sigma_s_sq = inv_sq(filt.sigma_s);
    t.inv_sigma_i_sq = inv_sq(filt.sigma_i);

    t.g_s = 0.5 * kc * (kc * gt.g2s + 2.0 * q1 * gt.g1s + q2 * gt.g0);
    t.g_i = 0.5 * kc * (kc * gt.g2i + 2.0 * q1 * gt.g1i + q2 * gt.g0);
    t.g_si = 0.5 * kc * (kc * gt.g2si + 2.0 * q1 * (gt.g1s + gt.g1i) + 2.0 * q2 * gt.g0);
    t.g_included = opts.g == GTerms::include;
    const double on = t.g_included ? 1.0 : 0.0;

    const cplx pulse = pump.tau_p * pump.tau_p / (4.0 * cplx(1.0, pump.chirp));
    const double z2 = pump.z_p * pump.z_p;
    t.f2s = pulse + v.v_ps * v.v_ps * z2 / 4.0 + t.inv_sigma_s_sq + on * t.g_s;
    t.f2i = pulse + v.v_pi * v.v_pi * z2 / 4.0 + t.inv_sigma_i_sq + on * t.g_i;
    t.f2si = 2.0 * pulse + v.v_ps * v.v_pi * z2 / 2.0 + on * t.g_si;
    if (opts.cross == FilterCross::product && filt.sigma_s && filt.sigma_i)
        t.f2si += 2.0 / (*filt.sigma_s * *filt.sigma_i);

    t.f1s = kc * (0.5 * kc * gt.g1s + q1 * gt.g0);
    t.f1i = kc * (0.5 * kc * gt.g1i + q1 * gt.g0);
    t.f0 = 0.5 * kc * kc * gt.g0;

    t.c_phi_sq = pair_norm_constant(wg, pump, c);
    t.prefactor = std::sqrt(pump.z_p * pump.tau_p / (1.0 + pump.chirp * pump.chirp));

    check_normalizable(t);
    return t;
}

GaussianTPSA with_g_terms(const GaussianTPSA& t, GTerms g) {
    const bool want = g == GTerms::include;
    if (want == t.g_included) return t;
    GaussianTPSA out = t;
    const double sign = want ? 1.0 : -1.0;
    out.f2s += sign * t.g_s;
    out.f2i += sign * t.g_i;
    out.f2si += sign * t.g_si;
    out.g_included = want;
    check_normalizable(out);
    return out;
}

cplx exponent(const GaussianTPSA& t, double omega_s, double omega_i) {
    const double x = omega_s - t.omega_s0;
    const double y = omega_i - t.omega_i0;
    return t.f2s * x * x + t.f2i * y * y + t.f2si * x * y + t.f1s * x + t.f1i * y + t.f0;
}

cplx evaluate(const GaussianTPSA& t, double omega_s, double omega_i) {
    const cplx phi = exponent(t, omega_s, omega_i);
    if (-phi.real() > 700.0) {
        std::ostringstream os;
        os << "-Re(phi) = " << -phi.real() << " at (" << omega_s << ", " << omega_i << ")";
        throw Error(Errc::ExponentOverflow, os.str());
    }
    return std::sqrt(t.c_phi_sq) * t.prefactor * std::exp(-phi);
}

double norm_sq(const GaussianTPSA& t) {
    check_normalizable(t);
    return t.c_phi_sq * t.prefactor * t.prefactor * std::exp(-2.0 * t.f0) * consts::pi / std::sqrt(t.dfr()) *
           t.efr();
}

GaussianTPSA normalize(const GaussianTPSA& t) {
    GaussianTPSA out = t;
    out.c_phi_sq = t.c_phi_sq / norm_sq(t);
    return out;
}

RotatedTPSA rotate(const GaussianTPSA& t) {
    const double on = t.g_included ? 1.0 : 0.0;
    const cplx a = t.f2s - on * t.g_s;
    const cplx b = t.f2i - on * t.g_i;
    const cplx ab = t.f2si - on * t.g_si;
    RotatedTPSA r;
    r.sum_sq = a + b + ab;
    r.cross = 2.0 * (a - b);
    r.diff_sq = a + b - ab;
    r.sum_lin = t.f1s + t.f1i;
    r.diff_lin = t.f1s - t.f1i;
    r.f0 = t.f0;
    r.c_phi_sq = t.c_phi_sq;
    r.prefactor = t.prefactor;
    return r;
}

QuadraticForm unrotate(const RotatedTPSA& r) {
    const cplx mean = 0.25 * (r.sum_sq + r.diff_sq);
    return {mean + 0.25 * r.cross, mean - 0.25 * r.cross, 0.5 * (r.sum_sq - r.diff_sq)};
}

ExternalDispersion external_angular_dispersion(const DispersionModel& model, double omega_p0, double theta_p0,
                                               double dtilde_internal) {
    const double n = refractive_index(model, omega_p0);
    const double s = n * std::sin(theta_p0);
    if (std::abs(s) > 1.0) throw Error(Errc::TotalInternalReflection, "|n sin(theta_p0)| > 1");
    ExternalDispersion out;
    out.theta_out = std::asin(s);
    const double co = std::cos(out.theta_out);
    double dn = 0.0;
    if (theta_p0 != 0.0) dn = index_derivative(model, omega_p0);
    out.dtilde_out = n * std::cos(theta_p0) / co * dtilde_internal + std::sin(theta_p0) / co * dn;
    out.d_out = dtilde_to_d(out.dtilde_out, omega_p0);
    return out;
}

double internal_from_external(const DispersionModel& model, double omega_p0, double theta_p0, double dtilde_out) {
    const double n = refractive_index(model, omega_p0);
    const double s = n * std::sin(theta_p0);
    if (std::abs(s) > 1.0) throw Error(Errc::TotalInternalReflection, "|n sin(theta_p0)| > 1");
    const double co = std::cos(std::asin(s));
    double dn = 0.0;
    if (theta_p0 != 0.0) dn = index_derivative(model, omega_p0);
    return (dtilde_out * co - std::sin(theta_p0) * dn) / (n * std::cos(theta_p0));
}

double dtilde_to_d(double dtilde, double omega_p0) { return dtilde * omega_p0 * omega_p0 / (2.0 * consts::pi * consts::c); }
double d_to_dtilde(double d, double omega_p0) { return d * 2.0 * consts::pi * consts::c / (omega_p0 * omega_p0); }

}  // namespace pairwave
