#include <doctest.h>

#include <cmath>

#include "pairwave/constants.hpp"
#include "pairwave/dispersion.hpp"
#include "pairwave/numerics.hpp"
#include "support.hpp"

using namespace pairwave;
using pwtest::close_rel;

namespace {

const double w1064 = omega_from_wavelength(1064e-9);
const double w532 = omega_from_wavelength(532e-9);

DispersionModel constant2() { return constant_index_model(2.0, omega_from_wavelength(5e-6), omega_from_wavelength(4e-7)); }

}  // namespace

TEST_SUITE("dispersion") {

TEST_CASE("builtin LiNbO3 index near 1064 nm") {
    const auto m = congruent_linbo3();
    const double n = refractive_index(m, w1064);
    CHECK(std::abs(n - 2.15) < 0.05);
    // frozen value of the shipped fit
    CHECK(close_rel(n, 2.1555364752263153, 1e-12));
}

TEST_CASE("data file and compiled-in model agree") {
    const auto file = load_dispersion_model(default_dispersion_path());
    const auto built = congruent_linbo3();
    for (double l : {0.45e-6, 0.532e-6, 1.064e-6, 3e-6}) {
        const double w = omega_from_wavelength(l);
        CHECK(refractive_index(file, w) == doctest::Approx(refractive_index(built, w)).epsilon(1e-15));
    }
}

TEST_CASE("constant model returns its index") {
    const auto m = constant2();
    for (double l : {0.5e-6, 1e-6, 4e-6}) CHECK(refractive_index(m, omega_from_wavelength(l)) == 2.0);
}

TEST_CASE("outside the validity window") {
    const auto m = congruent_linbo3();
    try {
        refractive_index(m, 0.5 * m.omega_lo);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OutOfValidityWindow);
    }
    CHECK_THROWS_AS(refractive_index(m, 2.0 * m.omega_hi), Error);
}

TEST_CASE("malformed dispersion files") {
    auto code = [](const std::string& text) {
        try {
            parse_dispersion_model(text);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::InvalidArgument;
    };
    CHECK(code("not json") == Errc::ConfigInvalid);
    CHECK(code(R"({"schema_version": 2})") == Errc::ConfigInvalid);
    // pole inside the window
    CHECK(code(R"({"schema_version":1,"material":"x","form":"sellmeier","wavelength_window_m":[4e-7,5e-6],
                  "terms":[{"B":1.0,"C_um2":1.0}]})") == Errc::ConfigInvalid);
    const auto ok = parse_dispersion_model(
        R"({"schema_version":1,"material":"flat","form":"constant","n":1.5,"wavelength_window_m":[4e-7,5e-6]})");
    CHECK(refractive_index(ok, w1064) == 1.5);
}

TEST_CASE("alpha = 0 gives the bulk wavenumber exactly") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    wg.alpha = 0.0;
    for (double w : {w532, w1064}) CHECK(beta(wg, w) == bulk_wavenumber(wg.model, w));
}

TEST_CASE("guided-mode square-root factor") {
    const auto wg = pwtest::linbo3_guide();
    const double f = beta_sqrt_factor(wg, w1064);
    const double n = refractive_index(wg.model, w1064);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
    CHECK(close_rel(f, std::sqrt(1.0 - wg.alpha * consts::c / (n * w1064)), 1e-15));
    CHECK(std::isfinite(beta(wg, w1064)));
}

TEST_CASE("mode cutoff") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    wg.alpha = 1e9;
    try {
        beta(wg, w1064);
        FAIL("expected ModeCutoff");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ModeCutoff);
    }
}

TEST_CASE("dispersionless group velocity") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    wg.model = constant2();
    wg.alpha = 0.0;
    CHECK(close_rel(group_velocity(wg, w1064, Velocity::guided), consts::c / 2.0, 1e-9));
    CHECK(close_rel(group_velocity(wg, w1064, Velocity::pump_bulk), consts::c / 2.0, 1e-9));
}

TEST_CASE("guided and bulk velocities merge as alpha -> 0") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    double prev = 1.0;
    for (double a : {4e6, 4e5, 4e4, 4e3}) {
        wg.alpha = a;
        const double vg = group_velocity(wg, w1064, Velocity::guided);
        const double vb = group_velocity(wg, w1064, Velocity::pump_bulk);
        const double gap = std::abs(vg - vb) / vb;
        CHECK(gap > 0.0);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("group velocity against a half-step five-point stencil") {
    const auto wg = pwtest::linbo3_guide();
    const double h = 0.5 * first_derivative_step * w1064;
    auto b = [&](double w) { return beta(wg, w); };
    const double d = (-b(w1064 + 2 * h) + 8 * b(w1064 + h) - 8 * b(w1064 - h) + b(w1064 - 2 * h)) / (12 * h);
    CHECK(close_rel(1.0 / group_velocity(wg, w1064, Velocity::guided), d, 1e-8));
}

TEST_CASE("plain central differences converge quadratically") {
    const auto wg = pwtest::linbo3_guide();
    const double ref = 1.0 / group_velocity(wg, w1064, Velocity::guided);
    auto cd = [&](double h) { return (beta(wg, w1064 + h) - beta(wg, w1064 - h)) / (2 * h); };
    const double e1 = std::abs(cd(4e-3 * w1064) - ref);
    const double e2 = std::abs(cd(2e-3 * w1064) - ref);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("beta increases with frequency") {
    const auto wg = pwtest::linbo3_guide();
    const double lo = omega_from_wavelength(3e-6), hi = wg.model.omega_hi;
    double prev = beta(wg, lo);
    for (int k = 1; k <= 200; ++k) {
        const double b = beta(wg, lo + (hi - lo) * k / 200.0);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("gamma scaling") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    const double g = gamma(wg, w1064);
    // frozen value for the baseline guide
    CHECK(close_rel(g, std::sqrt(refractive_index(wg.model, w1064) * w1064 * 4e6 / consts::c), 1e-15));
    CHECK(close_rel(g, 7.1355393255896438e+06, 1e-10));
    wg.alpha = 8e6;
    CHECK(close_rel(gamma(wg, w1064), std::sqrt(2.0) * g, 1e-15));
    wg.alpha = 0.0;
    CHECK(gamma(wg, w1064) == 0.0);
}

TEST_CASE("degenerate phase matching is normal incidence") {
    const auto wg = pwtest::linbo3_guide();
    CHECK(solve_phase_matching(wg, w1064, w1064) == 0.0);
}

TEST_CASE("nondegenerate angle: sign and bisection cross-check") {
    const auto wg = pwtest::linbo3_guide();
    const Centrals c = centrals_from_wavelengths(532e-9, 1040e-9);
    const double th = solve_phase_matching(wg, c.omega_s0, c.omega_i0);
    const double db = beta(wg, c.omega_s0) - beta(wg, c.omega_i0);
    CHECK(th != 0.0);
    CHECK(std::signbit(th) == std::signbit(db));
    auto r = [&](double x) { return phase_matching_residual(wg, c.omega_s0, c.omega_i0, x); };
    const auto root = num::bisect(r, -1.5, 1.5, 1e-15);
    REQUIRE(root);
    CHECK(std::abs(*root - th) < 1e-12);
}

TEST_CASE("no phase matching for a strongly anomalous model") {
    // index rises steeply towards long wavelengths and the idler sits just above cutoff
    WaveguideSpec wg = pwtest::linbo3_guide();
    wg.model = parse_dispersion_model(R"({"schema_version":1,"material":"anomalous","form":"sellmeier",
        "wavelength_window_m":[5.32e-7,5e-6],"A":100.0,"terms":[{"B":-15.0,"C_um2":0.24}]})");
    const Centrals c = centrals_from_wavelengths(532e-9, 1.0e-6);
    const double ni = refractive_index(wg.model, c.omega_i0);
    wg.alpha = 0.999 * ni * c.omega_i0 / consts::c;
    try {
        solve_phase_matching(wg, c.omega_s0, c.omega_i0);
        FAIL("expected NoPhaseMatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoPhaseMatch);
    }
}

TEST_CASE("phase-matching residual on random splittings") {
    const auto wg = pwtest::linbo3_guide();
    pwtest::ScenarioGen gen(11);
    for (int k = 0; k < 100; ++k) {
        const double ls = gen.uniform(0.9e-6, 1.3e-6);
        const Centrals c = centrals_from_wavelengths(532e-9, ls);
        const double th = solve_phase_matching(wg, c.omega_s0, c.omega_i0);
        const double kp = bulk_wavenumber(wg.model, c.omega_p0());
        CHECK(std::abs(phase_matching_residual(wg, c.omega_s0, c.omega_i0, th)) < 1e-12 * kp);
    }
}

TEST_CASE("g expansion for a constant index is exact") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    wg.model = constant2();
    const double ws = omega_from_wavelength(1.0e-6), wi = omega_from_wavelength(1.2e-6);
    const GTaylor g = g_taylor(wg, ws, wi);
    const double k = 2.0 * wg.alpha / consts::c, s = ws + wi;
    CHECK(close_rel(g.g0, 1.0 / (k * s), 1e-12));
    CHECK(close_rel(g.g1s, -1.0 / (k * s * s), 1e-8));
    CHECK(close_rel(g.g1i, -1.0 / (k * s * s), 1e-8));
    CHECK(close_rel(g.g2s, 1.0 / (k * s * s * s), 1e-8));
    CHECK(close_rel(g.g2i, 1.0 / (k * s * s * s), 1e-8));
    CHECK(close_rel(g.g2si, 2.0 / (k * s * s * s), 1e-8));
}

TEST_CASE("g expansion symmetry at degeneracy") {
    const auto wg = pwtest::linbo3_guide();
    const GTaylor g = g_taylor(wg, w1064, w1064);
    CHECK(close_rel(g.g1s, g.g1i, 1e-12));
    CHECK(close_rel(g.g2s, g.g2i, 1e-12));
}

TEST_CASE("g expansion refuses vanishing gamma") {
    WaveguideSpec wg = pwtest::linbo3_guide();
    for (double a : {0.0, 1e-7}) {
        wg.alpha = a;
        try {
            g_taylor(wg, w1064, w1064);
            FAIL("expected DegenerateExpansion");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DegenerateExpansion);
        }
    }
}

TEST_CASE("g expansion residual at half a percent") {
    const auto wg = pwtest::linbo3_guide();
    const GTaylor g = g_taylor(wg, w1064, w1064);
    auto exact = [&](double ws, double wi) { return 1.0 / (gamma(wg, ws) * gamma(wg, ws) + gamma(wg, wi) * gamma(wg, wi)); };
    for (double a : {-1.0, 1.0})
        for (double b : {-1.0, 0.0, 1.0}) {
            const double ds = 0.005 * a * w1064, di = 0.005 * b * w1064;
            CHECK(close_rel(g.eval(ds, di), exact(w1064 + ds, w1064 + di), 1e-5));
        }
}

}  // TEST_SUITE
