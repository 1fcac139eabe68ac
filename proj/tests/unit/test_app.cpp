#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pairwave/app/config.hpp"
#include "pairwave/app/inverse_io.hpp"
#include "pairwave/app/scenario.hpp"
#include "pairwave/app/sweep.hpp"
#include "pairwave/app/units.hpp"
#include "pairwave/constants.hpp"
#include "pairwave/dispersion.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/temporal.hpp"
#include "support.hpp"

using namespace pairwave;
using namespace pairwave::app;
using pwtest::close_rel;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string config_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        if (e.code() == Errc::ConfigInvalid) return e.what();
        return std::string("wrong code: ") + e.what();
    }
    return "no error";
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("pairwave_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

RawConfig baseline_cfg() { return load_config(pwtest::source_path("configs/baseline.cfg")); }

}  // namespace

TEST_SUITE("app") {

TEST_CASE("quantities with units") {
    CHECK(parse_quantity("532 nm", Dim::length, "x").si == doctest::Approx(5.32e-7).epsilon(1e-15));
    CHECK(parse_quantity("10 um", Dim::length, "x").si == doctest::Approx(1e-5).epsilon(1e-15));
    CHECK(parse_quantity("4e6 1/m", Dim::inv_length, "x").si == 4e6);
    CHECK(parse_quantity("41.05 pm/V", Dim::nonlinear, "x").si == doctest::Approx(41.05e-12).epsilon(1e-15));
    CHECK(parse_quantity("1e-13 s", Dim::time, "x").si == 1e-13);
    CHECK(parse_quantity("0.5", Dim::none, "x").si == 0.5);
    const auto d = parse_quantity("-3.2e8 deg/m", Dim::angle_per_len, "x");
    CHECK(close_rel(d.si, -3.2e8 * consts::pi / 180, 1e-15));
    CHECK(d.value == -3.2e8);
    CHECK(d.unit == "deg/m");
}

TEST_CASE("malformed quantities name the field") {
    auto msg = config_error([] { parse_quantity("532 furlongs", Dim::length, "pump.lambda_p0"); });
    CHECK(msg.find("ConfigInvalid") != std::string::npos);
    CHECK(msg.find("pump.lambda_p0") != std::string::npos);
    msg = config_error([] { parse_quantity("nm", Dim::length, "pump.Z_p"); });
    CHECK(msg.find("pump.Z_p") != std::string::npos);
    msg = config_error([] { parse_quantity("1 s", Dim::length, "pump.Y_p"); });
    CHECK(msg.find("pump.Y_p") != std::string::npos);
}

TEST_CASE("config syntax") {
    const auto c = parse_config("# comment\npump.tau_p = 1e-13 s  # trailing\n\n  pump.Z_p=5 um\n");
    REQUIRE(c.entries.size() == 2);
    CHECK(*c.find("pump.tau_p") == "1e-13 s");
    CHECK(*c.find("pump.Z_p") == "5 um");
    CHECK(c.find("pump.Y_p") == nullptr);
    CHECK(config_error([] { parse_config("pump.tau_p 1e-13 s\n"); }).find("expected") != std::string::npos);
    CHECK(config_error([] { parse_config("pump.tau = 1e-13 s\n"); }).find("pump.tau") != std::string::npos);
    CHECK(config_error([] { parse_config("pump.Z_p = 1 um\npump.Z_p = 2 um\n"); }).find("duplicate") !=
          std::string::npos);
    CHECK(config_error([] { parse_config("pump.Z_p =\n"); }).find("empty") != std::string::npos);
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("baseline scenario") {
    const auto s = resolve_scenario(baseline_cfg());
    CHECK(s.theta_auto);
    CHECK(std::abs(s.pump.theta_p0) < 1e-12);
    const auto rep = scenario_report(s);
    const double n = rep["rate"]["N[1/s]"].get<double>();
    CHECK(n > 3e4 / 3);
    CHECK(n < 3e4 * 3);
    CHECK(rep["hom"]["A[1]"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("scenario errors name the key") {
    auto c = baseline_cfg();
    c.set("pump.tau_p", "-1 s");
    CHECK(config_error([&] { resolve_scenario(c); }).find("pump.tau_p") != std::string::npos);
    c = baseline_cfg();
    c.set("pump.Dtilde_theta", "1e-16 rad*s");
    CHECK(config_error([&] { resolve_scenario(c); }).find("at most one") != std::string::npos);
    c = baseline_cfg();
    c.set("options.include_g", "maybe");
    CHECK(config_error([&] { resolve_scenario(c); }).find("options.include_g") != std::string::npos);
}

TEST_CASE("symmetric configuration is separable") {
    auto c = baseline_cfg();
    const auto s0 = resolve_scenario(c);
    const double vs = group_velocity(s0.wg, s0.centrals.omega_s0, Velocity::guided);
    c.set("pump.tau_p", "1e-13 s");
    c.set("pump.Z_p", format_number(vs * 1e-13) + " m");
    c.set("options.include_g", "false");
    const auto s = resolve_scenario(c);
    const auto v = evaluate_quantities(s, {"Se", "n_min", "P"});
    CHECK(std::abs(v[0]) < 1e-9);
    CHECK(v[1] == 1.0);
    CHECK(v[2] > 0.999999);
}

TEST_CASE("single-point sweep equals the scenario") {
    auto c = baseline_cfg();
    c.set("sweep.axis1", "pump.tau_p");
    c.set("sweep.axis1_from", "3.162e-13 s");
    c.set("sweep.axis1_to", "3.162e-13 s");
    c.set("sweep.axis1_points", "1");
    c.set("sweep.quantities", "N, Se, delta_tau_l, sigma_lambda_s");
    const auto spec = resolve_sweep(c);
    const auto r = run_sweep(c, spec, std::nullopt, 1);
    REQUIRE(r.data.size() == 1);
    const auto direct = evaluate_quantities(resolve_scenario(c), spec.quantities);
    for (std::size_t k = 0; k < direct.size(); ++k) CHECK(r.data[0][k] == direct[k]);
    const auto rep = scenario_report(resolve_scenario(c));
    CHECK(close_rel(r.data[0][0], rep["rate"]["N[1/s]"].get<double>(), 1e-15));
    CHECK(close_rel(r.data[0][1], rep["schmidt"]["Se[bit]"].get<double>(), 1e-15));
}

TEST_CASE("sweep axes") {
    SweepAxis a{"pump.tau_p", 1e-14, 1e-12, "s", 3, true};
    const auto v = a.values();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1e-14);
    CHECK(v[2] == 1e-12);
    CHECK(close_rel(v[1], 1e-13, 1e-14));
    auto c = baseline_cfg();
    c.set("sweep.axis1", "pump.Y_p");
    c.set("sweep.axis1_from", "1 um");
    c.set("sweep.axis1_to", "2 um");
    c.set("sweep.axis1_points", "5000");
    c.set("sweep.quantities", "N");
    CHECK(config_error([&] { resolve_sweep(c); }).find("axis1_points") != std::string::npos);
    c.set("sweep.axis1_points", "4");
    c.set("sweep.quantities", "N, bogus");
    CHECK(config_error([&] { resolve_sweep(c); }).find("bogus") != std::string::npos);
}

TEST_CASE("sweep output is independent of the thread count") {
    auto c = load_config(pwtest::source_path("configs/sweep_entropy.cfg"));
    c.set("sweep.axis1_points", "6");
    c.set("sweep.axis2_points", "5");
    const auto spec = resolve_sweep(c);
    const auto a = scratch("sweep_a"), b = scratch("sweep_b");
    const auto pa = write_sweep(run_sweep(c, spec, std::nullopt, 1), c, a.string(), "csv");
    const auto pb = write_sweep(run_sweep(c, spec, std::nullopt, 4), c, b.string(), "csv");
    REQUIRE(pa.size() == pb.size());
    REQUIRE(!pa.empty());
    for (std::size_t k = 0; k < pa.size(); ++k) {
        CHECK(fs::path(pa[k]).filename() == fs::path(pb[k]).filename());
        CHECK(slurp(pa[k]) == slurp(pb[k]));
    }
}

TEST_CASE("inverse files round trip") {
    const auto s = resolve_scenario(baseline_cfg());
    const auto dir = scratch("inverse");
    const auto paths = write_inverse_inputs(s, dir.string());
    REQUIRE(paths.size() == 2);
    const auto out = run_inverse(paths[0], paths[1]);
    const double se = schmidt(build(s), s.p_min).entropy;
    bool hit = false;
    for (const auto& r : out["roots"]) hit = hit || std::abs(r["Se[bit]"].get<double>() - se) < 1e-6;
    CHECK(hit);
    CHECK(close_rel(out["fit"]["B[s^-2]"].get<double>(), hom_params(build(s)).b, 1e-8));
}

TEST_CASE("short HOM file is rejected") {
    const auto dir = scratch("short_hom");
    const auto s = resolve_scenario(baseline_cfg());
    const auto paths = write_inverse_inputs(s, dir.string());
    std::ifstream in(paths[1]);
    std::string line, kept;
    for (int k = 0; k < 6 && std::getline(in, line); ++k) kept += line + "\n";  // header + 5 rows
    in.close();
    std::ofstream(paths[1], std::ios::binary) << kept;
    try {
        run_inverse(paths[0], paths[1]);
        FAIL("expected InsufficientSamples");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InsufficientSamples);
    }
    std::ofstream(paths[1], std::ios::binary) << "tau_l[fs],R_n[1]\n1.0,0.5,7\n";
    CHECK(config_error([&] { run_inverse(paths[0], paths[1]); }).find("hom.csv") != std::string::npos);
}

}  // TEST_SUITE
