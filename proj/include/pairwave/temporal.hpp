#pragma once

#include "pairwave/spectral.hpp"
#include "pairwave/tpsa.hpp"

namespace pairwave {

// Phi(ts, ti) = (1/2pi) int int Phi(ws, wi) exp(-i dws ts - i dwi ti), carriers omitted.
// With this convention the time-domain L2 norm equals the frequency-domain one.
struct TimeDomainTPSA {
    cplx df;  // 4 f2s f2i - f2si^2
    cplx f2s, f2i, f2si, f1s, f1i;
    double f0 = 0.0;
    double amplitude = 0.0;  // |C_phi| sqrt(Zp tau_p / (1+a^2))
    // |Phi|^2 = |amplitude|^2/|df| exp(-2(t2s ts^2 + t2i ti^2 + t2si ts ti + t1s ts + t1i ti + t0))
    double t2s = 0.0, t2i = 0.0, t2si = 0.0;
    double t1s = 0.0, t1i = 0.0, t0 = 0.0;

    double dt() const { return 4.0 * t2s * t2i - t2si * t2si; }
    double et() const;
};

TimeDomainTPSA time_domain(const GaussianTPSA& t);
cplx evaluate_time(const TimeDomainTPSA& td, double tau_s, double tau_i);

struct FluxParams {
    Field field = Field::signal;
    double amplitude = 0.0;
    double sigma_tau = 0.0;   // s
    double delta_tau0 = 0.0;  // s
};

FluxParams flux(const GaussianTPSA& t, Field field, Formula mode = Formula::general);

struct TimeBandwidth {
    double product_s = 0.0;
    double product_i = 0.0;
    double ratio = 1.0;
};

TimeBandwidth time_bandwidth(const GaussianTPSA& t);
// symmetric, unfiltered, chirp-free, no angular dispersion: (v tau/Z + Z/(v tau))/2
double symmetric_time_bandwidth(double v, double tau_p, double z_p);

struct HomDip {
    double a = 0.0;
    double b = 0.0;  // 1/s^2
    double visibility = 0.0;
    double delta_tau_l = 0.0;  // s
    double beat = 0.0;         // omega_s0 - omega_i0, rad/s
};

HomDip hom_params(const GaussianTPSA& t, Formula mode = Formula::general);
double hom_curve(const HomDip& h, double tau_l);
double hom_curve(const GaussianTPSA& t, double tau_l);
double dip_width(const HomDip& h);

}  // namespace pairwave
