#include <doctest.h>

#include <cmath>

#include "pairwave/constants.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/tpsa.hpp"
#include "support.hpp"

using namespace pairwave;
using pwtest::close_rel;

TEST_SUITE("tpsa") {

TEST_CASE("degenerate symmetric cross coefficient") {
    const auto s = pwtest::baseline();
    const auto t = s.build(GTerms::neglect);
    const double vs = group_velocity(s.wg, s.centrals.omega_s0, Velocity::guided);
    const double vi = group_velocity(s.wg, s.centrals.omega_i0, Velocity::guided);
    CHECK(close_rel(t.v_ps, -1.0 / vs, 1e-12));
    CHECK(close_rel(t.v_pi, 1.0 / vi, 1e-12));
    const double tp = s.pump.tau_p, z = s.pump.z_p;
    CHECK(close_rel(t.f2si.real(), tp * tp / 2.0 + t.v_ps * t.v_pi * z * z / 2.0, 1e-12));
    CHECK(close_rel(t.f2si.real(), tp * tp / 2.0 - z * z / (2.0 * vs * vi), 1e-12));
}

TEST_CASE("chirp-free amplitude has real quadratic coefficients") {
    pwtest::ScenarioGen gen(3, {.chirp = false});
    for (int k = 0; k < 10; ++k) {
        const auto t = gen.next().build();
        CHECK(t.chirp_free());
        CHECK(t.f2s.imag() == 0.0);
        CHECK(t.f2i.imag() == 0.0);
        CHECK(t.f2si.imag() == 0.0);
    }
}

TEST_CASE("V coefficients") {
    auto s = pwtest::baseline();
    const VCoefficients v0 = v_coefficients(s.wg, s.pump, s.centrals);
    s.pump.dtilde_theta = 2e-16;
    s.pump.tau_p = 1e-12;
    s.pump.z_p = 3e-6;
    const VCoefficients v1 = v_coefficients(s.wg, s.pump, s.centrals);
    CHECK(v1.v_si == v0.v_si);
    CHECK(v1.v_ps != v0.v_ps);
    CHECK(close_rel(v1.v_pi - v1.v_ps, v1.v_si, 1e-12));
}

TEST_CASE("separability root cancels the cross coefficient") {
    // symmetric case, Z_p = 2 v_s tau_p
    auto s = pwtest::baseline(1e-13);
    const double vs = group_velocity(s.wg, s.centrals.omega_s0, Velocity::guided);
    s.pump.z_p = 2.0 * vs * s.pump.tau_p;
    const auto roots = separability_roots(s.wg, s.pump, s.centrals, GTerms::neglect);
    REQUIRE(roots.dtilde_roots.size() == 2);
    for (double d : roots.dtilde_roots) {
        s.pump.dtilde_theta = d;
        const auto t = s.build(GTerms::neglect);
        const double scale = s.pump.tau_p * s.pump.tau_p;
        CHECK(std::abs(t.f2si.real()) < 1e-12 * scale);
        CHECK(close_rel(t.v_ps * t.v_pi, -scale / (s.pump.z_p * s.pump.z_p), 1e-9));
    }
}

TEST_CASE("normalization constant is linear in power") {
    auto s = pwtest::baseline();
    const double c1 = pair_norm_constant(s.wg, s.pump, s.centrals);
    s.pump.power = 3.5;
    CHECK(close_rel(pair_norm_constant(s.wg, s.pump, s.centrals), 3.5 * c1, 1e-14));
}

TEST_CASE("normalization constant falls as 1/Y_p for wide beams") {
    auto s = pwtest::baseline();
    s.pump.y_p = 1e-2;
    const double a = pair_norm_constant(s.wg, s.pump, s.centrals);
    s.pump.y_p = 2e-2;
    const double b = pair_norm_constant(s.wg, s.pump, s.centrals);
    CHECK(a / b == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("evaluate at the centrals and along one axis") {
    pwtest::ScenarioGen gen(5);
    for (int k = 0; k < 5; ++k) {
        const auto t = gen.next().build();
        const cplx c = evaluate(t, t.omega_s0, t.omega_i0);
        CHECK(close_rel(std::abs(c), std::sqrt(t.c_phi_sq) * t.prefactor * std::exp(-t.f0), 1e-13));
        const double d = 1e12;
        const cplx r = evaluate(t, t.omega_s0 + d, t.omega_i0) / c;
        const cplx want = std::exp(-t.f2s * d * d - t.f1s * d);
        CHECK(std::abs(r - want) < 1e-12 * std::abs(want));
    }
}

TEST_CASE("modulus peaks at the stationary point") {
    const auto t = pwtest::nondegenerate().build();
    // stationary point of Re(phi)
    const double a = t.f2s.real(), b = t.f2i.real(), c = t.f2si.real();
    const double d = 4 * a * b - c * c;
    const double xs = (-2 * b * t.f1s.real() + c * t.f1i.real()) / d;
    const double xi = (-2 * a * t.f1i.real() + c * t.f1s.real()) / d;
    const double peak = std::abs(evaluate(t, t.omega_s0 + xs, t.omega_i0 + xi));
    for (double u : {-1.0, 1.0})
        for (double v : {-1.0, 0.0, 1.0}) {
            CHECK(std::abs(evaluate(t, t.omega_s0 + xs + u * 1e11, t.omega_i0 + xi + v * 1e11)) < peak);
            CHECK(std::abs(evaluate(t, t.omega_s0 + xs + v * 1e11, t.omega_i0 + xi + u * 1e11)) < peak);
        }
}

TEST_CASE("exponent guard") {
    auto t = pwtest::baseline().build();
    // far tails just underflow
    CHECK(evaluate(t, t.omega_s0 + 1e15, t.omega_i0) == cplx(0.0, 0.0));
    t.f0 = -800.0;
    try {
        evaluate(t, t.omega_s0, t.omega_i0);
        FAIL("expected ExponentOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ExponentOverflow);
    }
}

TEST_CASE("phase matching is enforced") {
    auto s = pwtest::nondegenerate();
    s.pump.theta_p0 += 1e-3;
    try {
        s.build();
        FAIL("expected PhaseMatchViolated");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PhaseMatchViolated);
    }
}

TEST_CASE("swapping signal and idler") {
    // mirror image of the nondegenerate split: pump angle and angular dispersion change sign
    auto a = pwtest::nondegenerate();
    a.pump.dtilde_theta = 1e-16;
    a.filter.sigma_s = 2e13;
    a.filter.sigma_i = 5e13;
    auto b = a;
    b.centrals = {a.centrals.omega_i0, a.centrals.omega_s0};
    b.pump.theta_p0 = -a.pump.theta_p0;
    b.pump.dtilde_theta = -a.pump.dtilde_theta;
    b.filter = {a.filter.sigma_i, a.filter.sigma_s};
    const auto ta = a.build(GTerms::neglect), tb = b.build(GTerms::neglect);
    CHECK(close_rel(ta.f2s.real(), tb.f2i.real(), 1e-9));
    CHECK(close_rel(ta.f2i.real(), tb.f2s.real(), 1e-9));
    CHECK(close_rel(ta.f2si.real(), tb.f2si.real(), 1e-9));
    CHECK(close_rel(ta.v_ps, -tb.v_pi, 1e-9));
    CHECK(close_rel(ta.dfr(), tb.dfr(), 1e-9));
}

TEST_CASE("rotated form of the symmetric cross-pure amplitude") {
    auto s = pwtest::baseline(1e-13);
    s.pump.chirp = 0.4;
    const double vs = group_velocity(s.wg, s.centrals.omega_s0, Velocity::guided);
    s.pump.z_p = vs * s.pump.tau_p;
    const auto t = s.build(GTerms::neglect);
    const RotatedTPSA r = rotate(t);
    const double tp2 = s.pump.tau_p * s.pump.tau_p;
    CHECK(std::abs(r.cross) < 1e-12 * tp2);
    CHECK(std::abs(r.sum_sq - tp2 / cplx(1.0, 0.4)) < 1e-12 * tp2);
    CHECK(close_rel(r.diff_sq.real(), s.pump.z_p * s.pump.z_p * t.v_si * t.v_si / 4.0, 1e-9));
}

TEST_CASE("equal filters leave the rotated cross term unchanged") {
    auto s = pwtest::nondegenerate();
    const auto t0 = s.build(GTerms::neglect);
    s.filter.sigma_s = s.filter.sigma_i = 3e13;
    const auto t1 = s.build(GTerms::neglect);
    CHECK(std::abs(rotate(t1).cross - rotate(t0).cross) <= 1e-12 * std::abs(rotate(t0).cross));
}

TEST_CASE("rotate and unrotate round trip") {
    pwtest::ScenarioGen gen(7);
    for (int k = 0; k < 20; ++k) {
        const auto t = gen.next().build(GTerms::neglect);
        const QuadraticForm q = unrotate(rotate(t));
        CHECK(std::abs(q.f2s - t.f2s) <= 1e-12 * std::abs(t.f2s));
        CHECK(std::abs(q.f2i - t.f2i) <= 1e-12 * std::abs(t.f2i));
        CHECK(std::abs(q.f2si - t.f2si) <= 1e-12 * (std::abs(t.f2s) + std::abs(t.f2i)));
    }
}

TEST_CASE("normalize") {
    const auto t = pwtest::nondegenerate().build();
    const auto n1 = normalize(t);
    const auto n2 = normalize(n1);
    CHECK(norm_sq(n1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(close_rel(n2.c_phi_sq, n1.c_phi_sq, 1e-14));
    CHECK(n1.f2s == t.f2s);
    CHECK(n1.f2i == t.f2i);
    CHECK(n1.f2si == t.f2si);
    CHECK(n1.f1s == t.f1s);
    CHECK(n1.f1i == t.f1i);
}

TEST_CASE("G terms can be toggled after the build") {
    const auto s = pwtest::nondegenerate();
    const auto on = s.build(GTerms::include), off = s.build(GTerms::neglect);
    const auto off2 = with_g_terms(on, GTerms::neglect);
    CHECK(std::abs(off2.f2si - off.f2si) <= 1e-15 * std::abs(off.f2s));
    CHECK(std::abs(with_g_terms(off, GTerms::include).f2s - on.f2s) <= 1e-15 * std::abs(on.f2s));
}

TEST_CASE("external angular dispersion") {
    const auto m = congruent_linbo3();
    const double wp = omega_from_wavelength(532e-9);
    const double n = refractive_index(m, wp);
    const auto e = external_angular_dispersion(m, wp, 0.0, 1e-16);
    CHECK(e.theta_out == 0.0);
    CHECK(close_rel(e.dtilde_out, n * 1e-16, 1e-15));
    CHECK(external_angular_dispersion(m, wp, 0.0, 0.0).dtilde_out == 0.0);
    for (double th : {0.0, 0.05, -0.2})
        for (double d : {-3e-16, 1e-17, 2e-16}) {
            const auto x = external_angular_dispersion(m, wp, th, d);
            CHECK(std::abs(internal_from_external(m, wp, th, x.dtilde_out) - d) <= 1e-12 * std::abs(d) + 1e-30);
        }
    CHECK(close_rel(d_to_dtilde(dtilde_to_d(1e-16, wp), wp), 1e-16, 1e-15));
}

TEST_CASE("total internal reflection") {
    const auto m = congruent_linbo3();
    const double wp = omega_from_wavelength(532e-9);
    CHECK_THROWS_AS(external_angular_dispersion(m, wp, 0.6, 0.0), Error);
}

TEST_CASE("invalid pump") {
    auto s = pwtest::baseline();
    s.pump.tau_p = 0.0;
    CHECK_THROWS_AS(s.build(), Error);
    s = pwtest::baseline();
    s.filter.sigma_s = -1.0;
    CHECK_THROWS_AS(s.build(), Error);
}

}  // TEST_SUITE
