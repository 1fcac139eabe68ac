#include "pairwave/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/numerics.hpp"

namespace pairwave {

namespace {

// e2c below this fraction of |e2| counts as exactly separable
constexpr double separable_floor = 1e-14;

}  // namespace

ReducedKernel reduced_kernel(const GaussianTPSA& t) {
    const double f2ir = t.f2i.real();
    if (!(f2ir > 0.0)) throw Error(Errc::NonNormalizable, "Re f2i must be positive");
    ReducedKernel k;
    k.e2 = t.f2s - t.f2si * t.f2si / (8.0 * f2ir);
    k.e2c = std::norm(t.f2si) / (8.0 * f2ir);
    k.e1 = t.f1s - t.f1i.real() * t.f2si / (2.0 * f2ir);
    const double width = k.e2.real() - k.e2c;
    if (!(width > 0.0)) throw Error(Errc::NonNormalizable, "Re e2 - e2c must be positive");
    k.c_sq = std::sqrt(2.0 * width / consts::pi) * std::exp(-k.e1.real() * k.e1.real() / (2.0 * width));
    return k;
}

cplx kernel_value(const ReducedKernel& k, double xp, double x) {
    return k.c_sq * std::exp(-k.e2 * xp * xp - std::conj(k.e2) * x * x + 2.0 * k.e2c * x * xp - k.e1 * xp -
                             std::conj(k.e1) * x);
}

double schmidt_p(const ReducedKernel& k) {
    if (k.e2c <= separable_floor * std::abs(k.e2)) return std::numeric_limits<double>::infinity();
    return k.e2.real() / k.e2c - 1.0;
}

double schmidt_p_modulus(const ReducedKernel& k) {
    if (k.e2c <= separable_floor * std::abs(k.e2)) return std::numeric_limits<double>::infinity();
    return std::abs(k.e2) / k.e2c - 1.0;
}

double schmidt_p_from_f(const GaussianTPSA& t) {
    const double f2ir = t.f2i.real();
    const double m4 = std::pow(std::norm(t.f2si), 2);
    if (m4 == 0.0) return std::numeric_limits<double>::infinity();
    const cplx cs = std::conj(t.f2si);
    const double inner = 4.0 * std::norm(t.f2s) * f2ir - (t.f2s * cs * cs).real();
    return std::sqrt(1.0 + 16.0 * f2ir / m4 * inner) - 1.0;
}

double vartheta_from_p(double p) {
    if (std::isinf(p)) return 0.0;
    if (!(p >= 0.0)) throw Error(Errc::OutOfRange, "P must be non-negative");
    // 1 + P - sqrt(P^2 + 2P), written without cancellation
    return 1.0 / (1.0 + p + std::sqrt(p * p + 2.0 * p));
}

double entropy(double vartheta) {
    if (!(vartheta >= 0.0 && vartheta < 1.0)) throw Error(Errc::OutOfRange, "vartheta must lie in [0, 1)");
    if (vartheta == 0.0) return 0.0;
    return -std::log2(1.0 - vartheta) - vartheta * std::log2(vartheta) / (1.0 - vartheta);
}

double entropy_series(double vartheta, int terms) {
    if (!(vartheta >= 0.0 && vartheta < 1.0)) throw Error(Errc::OutOfRange, "vartheta must lie in [0, 1)");
    double s = 0.0;
    double lam = 1.0 - vartheta;
    for (int n = 0; n < terms && lam > 0.0; ++n) {
        s -= lam * std::log2(lam);
        lam *= vartheta;
    }
    return s;
}

int n_min(double vartheta, double p_min) {
    if (!(p_min > 0.0 && p_min < 1.0)) throw Error(Errc::OutOfRange, "p_min must lie in (0, 1)");
    if (!(vartheta >= 0.0 && vartheta < 1.0)) throw Error(Errc::OutOfRange, "vartheta must lie in [0, 1)");
    if (vartheta == 0.0) return 1;
    // cumulative weight of the first m modes is 1 - vartheta^m
    int m = std::max(1, static_cast<int>(std::ceil(std::log1p(-p_min) / std::log(vartheta))));
    while (-std::expm1(m * std::log(vartheta)) < p_min) ++m;
    while (m > 1 && -std::expm1((m - 1) * std::log(vartheta)) >= p_min) --m;
    return m;
}

double SchmidtSpectrum::eigenvalue_sq(int n) const { return (1.0 - vartheta) * std::pow(vartheta, n); }

SchmidtSpectrum schmidt_from_p(double p, double p_min, int keep) {
    SchmidtSpectrum s;
    s.p = p;
    s.p_min = p_min;
    s.vartheta = vartheta_from_p(p);
    s.entropy = entropy(s.vartheta);
    s.n_min = n_min(s.vartheta, p_min);
    for (int n = 0; n < keep; ++n) s.lambda_sq.push_back(s.eigenvalue_sq(n));
    return s;
}

SchmidtSpectrum schmidt(const GaussianTPSA& t, double p_min, int keep) {
    return schmidt_from_p(schmidt_p(reduced_kernel(t)), p_min, keep);
}

double schmidt_mode(double vartheta, int n, double x) {
    if (!(vartheta > 0.0 && vartheta < 1.0)) throw Error(Errc::OutOfRange, "vartheta must lie in (0, 1)");
    if (n < 0) throw Error(Errc::OutOfRange, "mode index must be non-negative");
    const double k = std::sqrt((1.0 - vartheta * vartheta) / vartheta);
    return std::sqrt(k) * num::hermite_function(n, k * x);
}

PrincipalAxes principal_axes(const GaussianTPSA& t) {
    const double a = t.f2s.real(), b = t.f2i.real(), c = t.f2si.real();
    const double r = std::sqrt((a - b) * (a - b) + c * c);
    PrincipalAxes pa;
    pa.mu1 = 0.5 * (a + b + r);
    pa.mu2 = 0.5 * (a + b - r);
    if (c == 0.0)
        pa.psi_si = 0.0;
    else if (a == b)
        pa.psi_si = -std::copysign(std::numbers::pi / 4.0, c);
    else
        pa.psi_si = -0.5 * std::atan(c / (a - b));
    return pa;
}

SeparabilityResult separability_roots(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c, GTerms g) {
    if (pump.chirp != 0.0) throw Error(Errc::InvalidArgument, "separability roots assume a_p = 0");
    const double wp = c.omega_p0();
    const double kp = bulk_wavenumber(wg.model, wp);
    const double vp = group_velocity(wg, wp, Velocity::pump_bulk);
    const double vs = group_velocity(wg, c.omega_s0, Velocity::guided);
    const double vi = group_velocity(wg, c.omega_i0, Velocity::guided);
    const double th = pump.theta_p0;
    const double kc = kp * std::cos(th);
    const double s0 = std::sin(th) / vp;

    // G_si = (kc/2)(kc g2si + 2 Q1 (g1s + g1i) + 2 Q2 g0), with Q1, Q2 linear/quadratic in Dtilde
    double ga2 = 0.0, ga1 = 0.0, ga0 = 0.0;
    if (g == GTerms::include) {
        const GTaylor gt = g_taylor(wg, c.omega_s0, c.omega_i0);
        const double g1 = gt.g1s + gt.g1i;
        ga2 = -kc * gt.g0 * kp * std::cos(2.0 * th) / std::cos(th);
        ga1 = 0.5 * kc * (-2.0 * g1 * kp * std::sin(th) - 8.0 * gt.g0 * std::sin(th) / vp);
        ga0 = 0.5 * kc * (kc * gt.g2si + 2.0 * g1 * std::cos(th) / vp + 2.0 * gt.g0 * std::cos(th) / (kp * vp * vp));
    }

    auto coeffs = [&](double z) {
        const double z2 = z * z;
        const double a2 = z2 * kc * kc / 2.0 + ga2;
        const double a1 = z2 * kc * (2.0 * s0 - 1.0 / vs + 1.0 / vi) / 2.0 + ga1;
        const double a0 = pump.tau_p * pump.tau_p / 2.0 + z2 * (s0 - 1.0 / vs) * (s0 + 1.0 / vi) / 2.0 + ga0;
        return std::array<double, 3>{a2, a1, a0};
    };

    SeparabilityResult res;
    const auto k = coeffs(pump.z_p);
    const auto q = num::solve_quadratic(k[0], k[1], k[2]);
    res.discriminant = q.discriminant;
    // rounding-level discriminants are a double root
    const double a0_scale = pump.tau_p * pump.tau_p / 2.0 +
                            pump.z_p * pump.z_p * std::abs((s0 - 1.0 / vs) * (s0 + 1.0 / vi)) / 2.0 + std::abs(ga0);
    const double tol = 1e-12 * (k[1] * k[1] + 4.0 * std::abs(k[0]) * a0_scale);
    if (std::abs(q.discriminant) <= tol) {
        res.discriminant = 0.0;
        res.dtilde_roots = {-k[1] / (2.0 * k[0])};
    } else if (q.count == 2) {
        res.dtilde_roots = {q.r1, q.r2};
    }

    auto disc = [&](double z) {
        const auto kk = coeffs(z);
        return kk[1] * kk[1] - 4.0 * kk[0] * kk[2];
    };
    const double vsi = 1.0 / vs + 1.0 / vi;
    const double z_guess = 2.0 * pump.tau_p / vsi;
    if (g == GTerms::neglect) {
        res.z_min = z_guess;
    } else {
        double hi = z_guess;
        for (int it = 0; it < 200 && disc(hi) < 0.0; ++it) hi *= 1.5;
        double lo = z_guess;
        for (int it = 0; it < 200 && disc(lo) >= 0.0; ++it) lo /= 1.5;
        const auto root = num::bisect(disc, lo, hi, 1e-14);
        res.z_min = root ? *root : z_guess;
    }
    return res;
}

DfDerivatives entanglement_derivatives(const GaussianTPSA& t) {
    DfDerivatives d;
    const cplx chirp = cplx(1.0, t.chirp);
    d.d_tau_sq = (t.f2s + t.f2i - t.f2si) / chirp;
    const double vs2 = t.v_ps * t.v_ps, vi2 = t.v_pi * t.v_pi;
    d.d_z_sq = vs2 * t.f2i + vi2 * t.f2s - t.v_ps * t.v_pi * t.f2si;
    // df2s/d(sigma_s^2) = -1/sigma_s^4 = -(1/sigma_s^2)^2
    d.d_sigma_s_sq = -4.0 * t.inv_sigma_s_sq * t.inv_sigma_s_sq * t.f2i;
    d.d_sigma_i_sq = -4.0 * t.inv_sigma_i_sq * t.inv_sigma_i_sq * t.f2s;
    return d;
}

}  // namespace pairwave
