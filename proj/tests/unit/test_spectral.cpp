#include <doctest.h>

#include <cmath>

#include "pairwave/constants.hpp"
#include "pairwave/spectral.hpp"
#include "support.hpp"

using namespace pairwave;
using pwtest::close_rel;

TEST_SUITE("spectral") {

TEST_CASE("unfiltered rate does not depend on tau_p or Z_p") {
    const auto ref = pair_rate(pwtest::baseline().build(GTerms::neglect), Formula::simplified).n;
    for (double tp : {5e-14, 1e-12})
        for (double z : {3e-6, 5e-5}) {
            auto t = pwtest::baseline(tp, z).build(GTerms::neglect);
            CHECK(close_rel(pair_rate(t, Formula::simplified).n, ref, 1e-12));
            // the general form agrees once f1 vanishes
            t.f1s = t.f1i = 0.0;
            CHECK(close_rel(pair_rate(t).n, ref, 1e-9));
        }
}

TEST_CASE("unfiltered closed form") {
    auto s = pwtest::baseline();
    s.pump.chirp = 0.5;
    const auto t = s.build(GTerms::neglect);
    const double want = t.c_phi_sq * std::exp(-2 * t.f0) * 2 * consts::pi / (std::sqrt(1.25) * t.v_si);
    CHECK(close_rel(pair_rate(t, Formula::simplified).n, want, 1e-14));
}

TEST_CASE("baseline rate and per-pulse probability") {
    const auto r = pair_rate(pwtest::baseline().build());
    CHECK(r.n > 3e4 / 3.0);
    CHECK(r.n < 3e4 * 3.0);
    CHECK(r.per_pulse > 3.8e-4 / 3.0);
    CHECK(r.per_pulse < 3.8e-4 * 3.0);
    CHECK(close_rel(r.per_pulse, r.n / 8e7, 1e-15));
    CHECK(r.dfr > 0.0);
}

TEST_CASE("general and simplified forms agree without G and f1") {
    pwtest::ScenarioGen gen(21, {.chirp = true, .filters = true, .angular = true, .nondegenerate = false});
    for (int k = 0; k < 20; ++k) {
        auto t = gen.next().build(GTerms::neglect);
        t.f1s = t.f1i = 0.0;
        CHECK(close_rel(pair_rate(t).n, pair_rate(t, Formula::simplified).n, 1e-10));
        for (Field f : {Field::signal, Field::idler}) {
            CHECK(close_rel(spectrum(t, f).sigma_omega, spectrum(t, f, Formula::simplified).sigma_omega, 1e-10));
            CHECK(close_rel(spectrum(t, f).amplitude, spectrum(t, f, Formula::simplified).amplitude, 1e-10));
            CHECK(spectrum(t, f).delta_omega0 == 0.0);
        }
    }
}

TEST_CASE("unfiltered simplified width") {
    auto s = pwtest::nondegenerate();
    s.pump.chirp = -0.3;
    s.pump.dtilde_theta = 5e-17;
    const auto t = s.build(GTerms::neglect);
    const VCoefficients v = v_coefficients(s.wg, s.pump, s.centrals);
    for (Field f : {Field::signal, Field::idler}) {
        const double want = unfiltered_width(v, s.pump.tau_p, s.pump.chirp, s.pump.z_p, f);
        CHECK(close_rel(spectrum(t, f, Formula::simplified).sigma_omega, want, 1e-12));
    }
    const double vo = v.v_pi;
    const double direct = std::sqrt(2.0) / v.v_si *
                          std::sqrt(1 / (s.pump.z_p * s.pump.z_p) + 1.09 * vo * vo / (s.pump.tau_p * s.pump.tau_p));
    CHECK(close_rel(spectrum(t, Field::signal, Formula::simplified).sigma_omega, direct, 1e-12));
}

TEST_CASE("limits of the unfiltered width") {
    const auto s = pwtest::nondegenerate(1e-13, 1e-5);
    const VCoefficients v = v_coefficients(s.wg, s.pump, s.centrals);
    const double vs = group_velocity(s.wg, s.centrals.omega_s0, Velocity::guided);
    const auto w = asymptotic_widths(s.wg, s.pump, s.centrals);
    // Z_p -> infinity
    const double zbig = 1e3 * vs * s.pump.tau_p;
    CHECK(close_rel(unfiltered_width(v, s.pump.tau_p, 0, zbig, Field::signal), w.sigma_s_inf, 1e-3));
    CHECK(close_rel(unfiltered_width(v, s.pump.tau_p, 0, zbig, Field::idler), w.sigma_i_inf, 1e-3));
    // tau_p -> infinity
    const double tbig = 1e4 * s.pump.z_p / vs;
    CHECK(close_rel(unfiltered_width(v, tbig, 0, s.pump.z_p, Field::signal), w.sigma_cw, 1e-6));
    CHECK(close_rel(w.sigma_s_inf / w.sigma_i_inf, std::abs(v.v_pi) / std::abs(v.v_ps), 1e-14));
}

TEST_CASE("cw widths equal for both fields") {
    const auto s = pwtest::nondegenerate();
    const VCoefficients v = v_coefficients(s.wg, s.pump, s.centrals);
    const double ws = unfiltered_width(v, 1.0, 0, s.pump.z_p, Field::signal);
    const double wi = unfiltered_width(v, 1.0, 0, s.pump.z_p, Field::idler);
    CHECK(close_rel(ws, wi, 1e-12));
    CHECK(close_rel(ws, std::sqrt(2.0) / (v.v_si * s.pump.z_p), 1e-12));
}

TEST_CASE("width ratio") {
    const auto sym = pwtest::baseline().build(GTerms::neglect);
    CHECK(width_ratio(sym).ratio == doctest::Approx(1.0).epsilon(1e-12));
    pwtest::ScenarioGen gen(8);
    for (int k = 0; k < 10; ++k) {
        const auto w = width_ratio(gen.next().build());
        CHECK(close_rel(w.f, w.f_from_widths, 1e-12));
        CHECK(close_rel(w.ratio, 1.0 / std::sqrt(w.f_from_widths), 1e-12));
    }
}

TEST_CASE("angular dispersion moves the width ratio") {
    auto s = pwtest::baseline(1e-13, 1e-4);
    double best = 1.0;
    for (int k = -20; k <= 20; ++k) {
        s.pump.dtilde_theta = k * 2e-17;
        const auto w = width_ratio(s.build());
        best = std::max({best, w.ratio, 1.0 / w.ratio});
    }
    CHECK(best > 5.0);
}

TEST_CASE("widths shrink with longer pulses and wider beams") {
    for (double z : {2e-6, 2e-5}) {
        double prev = INFINITY;
        for (double tp = 2e-14; tp < 2e-12; tp *= 1.5) {
            const double w = spectrum(pwtest::baseline(tp, z).build(), Field::signal).sigma_omega;
            CHECK(w < prev);
            prev = w;
        }
    }
    for (double tp : {5e-14, 5e-13}) {
        double prev = INFINITY;
        for (double z = 1e-6; z < 1e-4; z *= 1.5) {
            const double w = spectrum(pwtest::baseline(tp, z).build(), Field::signal).sigma_omega;
            CHECK(w < prev);
            prev = w;
        }
    }
}

TEST_CASE("filters only narrow") {
    pwtest::ScenarioGen gen(9, {.filters = false});
    for (int k = 0; k < 10; ++k) {
        auto s = gen.next();
        const auto t0 = s.build();
        s.filter.sigma_s = gen.log_uniform(5e12, 5e14);
        s.filter.sigma_i = gen.log_uniform(5e12, 5e14);
        const auto t1 = s.build();
        for (Field f : {Field::signal, Field::idler})
            CHECK(spectrum(t1, f).sigma_omega <= spectrum(t0, f).sigma_omega);
    }
}

TEST_CASE("converters") {
    const double w0 = omega_from_wavelength(1064e-9);
    CHECK(close_rel(omega_width_from_wavelength(wavelength_width(1e13, w0), w0), 1e13, 1e-15));
    // 1 nm at 1064 nm
    CHECK(close_rel(omega_width_from_wavelength(1e-9, w0), 2 * consts::pi * consts::c * 1e-9 / (1064e-9 * 1064e-9),
                    1e-12));
    CHECK(close_rel(fwhm_from_width(1.0), 2 * std::sqrt(std::log(2.0)), 1e-15));
}

}  // TEST_SUITE
