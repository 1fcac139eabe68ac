#include "pairwave/dispersion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/numerics.hpp"

namespace pairwave {

namespace {

void check_model(const DispersionModel& m) {
    if (!(m.omega_lo > 0.0) || !(m.omega_hi > m.omega_lo))
        throw Error(Errc::ConfigInvalid, "dispersion model '" + m.label + "': empty validity window");
    if (m.form == DispersionModel::Form::constant) {
        if (!(m.constant_index > 1.0))
            throw Error(Errc::ConfigInvalid, "dispersion model '" + m.label + "': constant index must exceed 1");
        return;
    }
    if (m.terms.empty()) throw Error(Errc::ConfigInvalid, "dispersion model '" + m.label + "': no Sellmeier terms");
    const double l_lo = wavelength_from_omega(m.omega_hi) * 1e6;
    const double l_hi = wavelength_from_omega(m.omega_lo) * 1e6;
    for (const auto& t : m.terms) {
        if (t.c_um2 >= l_lo * l_lo && t.c_um2 <= l_hi * l_hi)
            throw Error(Errc::ConfigInvalid, "dispersion model '" + m.label + "': Sellmeier pole inside window");
    }
    // n > 1 and finite across the window
    for (int k = 0; k <= 64; ++k) {
        const double w = m.omega_lo + (m.omega_hi - m.omega_lo) * k / 64.0;
        const double n = refractive_index(m, w);
        if (!std::isfinite(n) || !(n > 1.0))
            throw Error(Errc::ConfigInvalid, "dispersion model '" + m.label + "': index not above 1 inside window");
    }
}

}  // namespace

DispersionModel constant_index_model(double n, double omega_lo, double omega_hi) {
    DispersionModel m;
    m.label = "constant n=" + std::to_string(n);
    m.form = DispersionModel::Form::constant;
    m.constant_index = n;
    m.omega_lo = omega_lo;
    m.omega_hi = omega_hi;
    check_model(m);
    return m;
}

DispersionModel congruent_linbo3() {
    DispersionModel m;
    m.label = "LiNbO3 congruent, extraordinary index, 25 C (Zelmon et al. 1997)";
    m.form = DispersionModel::Form::sellmeier;
    m.a = 1.0;
    m.terms = {{2.9804, 0.02047}, {0.5981, 0.0666}, {8.9543, 416.08}};
    m.omega_lo = omega_from_wavelength(5.0e-6);
    m.omega_hi = omega_from_wavelength(4.0e-7);
    return m;
}

DispersionModel parse_dispersion_model(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ConfigInvalid, std::string("dispersion file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != 1)
            throw Error(Errc::ConfigInvalid, "dispersion file: unsupported schema_version");
        DispersionModel m;
        m.label = j.at("material").get<std::string>();
        const auto form = j.at("form").get<std::string>();
        const auto window = j.at("wavelength_window_m").get<std::vector<double>>();
        if (window.size() != 2 || !(window[0] > 0.0) || !(window[1] > window[0]))
            throw Error(Errc::ConfigInvalid, "dispersion file: wavelength_window_m must be [lo, hi] with 0 < lo < hi");
        m.omega_lo = omega_from_wavelength(window[1]);
        m.omega_hi = omega_from_wavelength(window[0]);
        if (form == "constant") {
            m.form = DispersionModel::Form::constant;
            m.constant_index = j.at("n").get<double>();
        } else if (form == "sellmeier") {
            m.form = DispersionModel::Form::sellmeier;
            m.a = j.value("A", 1.0);
            for (const auto& t : j.at("terms")) m.terms.push_back({t.at("B").get<double>(), t.at("C_um2").get<double>()});
        } else {
            throw Error(Errc::ConfigInvalid, "dispersion file: unknown form '" + form + "'");
        }
        check_model(m);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ConfigInvalid, std::string("dispersion file: ") + e.what());
    }
}

DispersionModel load_dispersion_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ConfigInvalid, "cannot open dispersion file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dispersion_model(ss.str());
}

std::string default_dispersion_path() { return std::string(PAIRWAVE_DATA_DIR) + "/linbo3_congruent_e.json"; }

double refractive_index(const DispersionModel& model, double omega) {
    if (!(omega >= model.omega_lo && omega <= model.omega_hi)) {
        std::ostringstream os;
        os << "omega = " << omega << " rad/s outside [" << model.omega_lo << ", " << model.omega_hi << "] for "
           << model.label;
        throw Error(Errc::OutOfValidityWindow, os.str());
    }
    if (model.form == DispersionModel::Form::constant) return model.constant_index;
    const double l = wavelength_from_omega(omega) * 1e6;
    const double l2 = l * l;
    double n2 = model.a;
    for (const auto& t : model.terms) n2 += t.b * l2 / (l2 - t.c_um2);
    return std::sqrt(n2);
}

double index_derivative(const DispersionModel& model, double omega) {
    return num::derivative([&](double w) { return refractive_index(model, w); }, omega, first_derivative_step * omega);
}

double bulk_wavenumber(const DispersionModel& model, double omega) {
    return refractive_index(model, omega) * omega / consts::c;
}

void validate(const WaveguideSpec& wg) {
    if (!(wg.alpha >= 0.0)) throw Error(Errc::InvalidArgument, "waveguide alpha must be non-negative");
    if (!(wg.ly > 0.0)) throw Error(Errc::InvalidArgument, "waveguide Ly must be positive");
    if (!(wg.d > 0.0)) throw Error(Errc::InvalidArgument, "waveguide d must be positive");
}

double beta_sqrt_factor(const WaveguideSpec& wg, double omega) {
    const double n = refractive_index(wg.model, omega);
    const double radicand = 1.0 - wg.alpha * consts::c / (n * omega);
    if (!(radicand > 0.0)) {
        std::ostringstream os;
        os << "guided-mode radicand " << radicand << " at omega = " << omega;
        throw Error(Errc::ModeCutoff, os.str());
    }
    return std::sqrt(radicand);
}

double beta(const WaveguideSpec& wg, double omega) {
    return bulk_wavenumber(wg.model, omega) * beta_sqrt_factor(wg, omega);
}

double group_velocity(const WaveguideSpec& wg, double omega, Velocity which) {
    const double h = first_derivative_step * omega;
    double inv_v;
    if (which == Velocity::guided)
        inv_v = num::derivative([&](double w) { return beta(wg, w); }, omega, h);
    else
        inv_v = num::derivative([&](double w) { return bulk_wavenumber(wg.model, w); }, omega, h);
    return 1.0 / inv_v;
}

double gamma(const WaveguideSpec& wg, double omega) {
    return std::sqrt(refractive_index(wg.model, omega) * omega * wg.alpha / consts::c);
}

double phase_matching_residual(const WaveguideSpec& wg, double omega_s0, double omega_i0, double theta_p0) {
    const double kp0 = bulk_wavenumber(wg.model, omega_s0 + omega_i0);
    return kp0 * std::sin(theta_p0) - beta(wg, omega_s0) + beta(wg, omega_i0);
}

double solve_phase_matching(const WaveguideSpec& wg, double omega_s0, double omega_i0) {
    const double kp0 = bulk_wavenumber(wg.model, omega_s0 + omega_i0);
    const double s = (beta(wg, omega_s0) - beta(wg, omega_i0)) / kp0;
    if (std::abs(s) > 1.0) {
        std::ostringstream os;
        os << "|beta_s - beta_i| / k_p = " << std::abs(s) << " > 1";
        throw Error(Errc::NoPhaseMatch, os.str());
    }
    return std::asin(s);
}

GTaylor g_taylor(const WaveguideSpec& wg, double omega_s0, double omega_i0) {
    auto gsq = [&](double w) { return refractive_index(wg.model, w) * w * wg.alpha / consts::c; };
    const double floor = 1e-12 * (std::pow(bulk_wavenumber(wg.model, omega_s0), 2) +
                                  std::pow(bulk_wavenumber(wg.model, omega_i0), 2));
    const double denom = gsq(omega_s0) + gsq(omega_i0);
    if (!(denom > floor)) throw Error(Errc::DegenerateExpansion, "gamma_s^2 + gamma_i^2 below floor (alpha too small)");

    auto g = [&](double ws, double wi) { return 1.0 / (gsq(ws) + gsq(wi)); };
    GTaylor t;
    t.g0 = 1.0 / denom;
    const double hs1 = first_derivative_step * omega_s0, hi1 = first_derivative_step * omega_i0;
    const double hs2 = second_derivative_step * omega_s0, hi2 = second_derivative_step * omega_i0;
    t.g1s = num::derivative([&](double w) { return g(w, omega_i0); }, omega_s0, hs1);
    t.g1i = num::derivative([&](double w) { return g(omega_s0, w); }, omega_i0, hi1);
    t.g2s = 0.5 * num::second_derivative([&](double w) { return g(w, omega_i0); }, omega_s0, hs2);
    t.g2i = 0.5 * num::second_derivative([&](double w) { return g(omega_s0, w); }, omega_i0, hi2);
    t.g2si = num::mixed_partial(g, omega_s0, omega_i0, hs2, hi2);
    return t;
}

}  // namespace pairwave
