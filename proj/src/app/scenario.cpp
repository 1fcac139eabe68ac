#include "pairwave/app/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "pairwave/constants.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/temporal.hpp"

namespace pairwave::app {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double to_deg = 180.0 / consts::pi;

const std::string& require(const RawConfig& c, const std::string& key) {
    const std::string* v = c.find(key);
    if (!v) throw Error(Errc::ConfigInvalid, c.origin + ": missing required key '" + key + "'");
    return *v;
}

double number(const RawConfig& c, const std::string& key, Dim d) { return parse_quantity(require(c, key), d, key).si; }

double positive(const RawConfig& c, const std::string& key, Dim d) {
    const double v = number(c, key, d);
    if (!(v > 0.0)) throw Error(Errc::ConfigInvalid, c.origin + ": " + key + " must be positive");
    return v;
}

double number_or(const RawConfig& c, const std::string& key, Dim d, double fallback) {
    const std::string* v = c.find(key);
    return v ? parse_quantity(*v, d, key).si : fallback;
}

bool flag(const RawConfig& c, const std::string& key, bool fallback) {
    const std::string* v = c.find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "on" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "off" || *v == "0") return false;
    throw Error(Errc::ConfigInvalid, key + ": expected true or false, got '" + *v + "'");
}

// wavelength widths are converted at the field's own central frequency
std::optional<double> filter_width(const RawConfig& c, const std::string& key, const std::string& value, double omega0) {
    if (value == "none" || value == "inf") return std::nullopt;
    Quantity q;
    try {
        q = parse_quantity(value, Dim::length, key);
        q.si = omega_width_from_wavelength(q.si, omega0);
    } catch (const Error& e) {
        if (e.code() != Errc::ConfigInvalid) throw;
        try {
            q = parse_quantity(value, Dim::omega, key);
        } catch (const Error&) {
            throw Error(Errc::ConfigInvalid, c.origin + ": " + key + ": '" + value +
                                                 "' is neither 'none', a wavelength width (nm, um, m) nor rad/s");
        }
    }
    if (!(q.si > 0.0)) throw Error(Errc::ConfigInvalid, key + ": filter width must be positive");
    return q.si;
}

DispersionModel dispersion(const RawConfig& c, std::string& source) {
    const std::string* v = c.find("waveguide.dispersion");
    if (!v || *v == "builtin") {
        source = "builtin";
        return congruent_linbo3();
    }
    if (v->rfind("constant", 0) == 0) {
        std::istringstream in(v->substr(8));
        double n = 0.0;
        if (!(in >> n)) throw Error(Errc::ConfigInvalid, "waveguide.dispersion: expected 'constant <n>'");
        source = *v;
        const auto m = congruent_linbo3();
        return constant_index_model(n, m.omega_lo, m.omega_hi);
    }
    std::filesystem::path p(*v);
    if (p.is_relative()) p = std::filesystem::path(c.base_dir) / p;
    source = p.string();
    return load_dispersion_model(p.string());
}

}  // namespace

Scenario resolve_scenario(const RawConfig& c, std::optional<GTerms> g_override) {
    Scenario s;
    s.wg.alpha = number(c, "waveguide.alpha", Dim::inv_length);
    s.wg.ly = positive(c, "waveguide.Ly", Dim::length);
    s.wg.d = positive(c, "waveguide.d", Dim::nonlinear);
    s.wg.model = dispersion(c, s.dispersion_source);
    validate(s.wg);

    PumpSpec& p = s.pump;
    p.lambda_p0 = positive(c, "pump.lambda_p0", Dim::length);
    p.tau_p = positive(c, "pump.tau_p", Dim::time);
    p.chirp = number_or(c, "pump.chirp", Dim::none, 0.0);
    p.z_p = positive(c, "pump.Z_p", Dim::length);
    p.y_p = positive(c, "pump.Y_p", Dim::length);
    p.power = positive(c, "pump.P_p", Dim::power);
    p.f_rep = positive(c, "pump.f_rep", Dim::rate);

    const double lambda_s0 = number_or(c, "centrals.lambda_s0", Dim::length, 2.0 * p.lambda_p0);
    s.centrals = centrals_from_wavelengths(p.lambda_p0, lambda_s0);
    const double wp0 = s.centrals.omega_p0();

    const std::string* th = c.find("pump.theta_p0");
    s.theta_auto = !th || *th == "auto";
    p.theta_p0 = s.theta_auto ? solve_phase_matching(s.wg, s.centrals.omega_s0, s.centrals.omega_i0)
                              : parse_quantity(*th, Dim::angle, "pump.theta_p0").si;

    int n_disp = 0;
    for (const char* k : {"pump.Dtilde_theta", "pump.D_theta", "pump.D_theta_out"}) n_disp += c.find(k) ? 1 : 0;
    if (n_disp > 1)
        throw Error(Errc::ConfigInvalid, "give at most one of pump.Dtilde_theta, pump.D_theta, pump.D_theta_out");
    if (c.find("pump.Dtilde_theta"))
        p.dtilde_theta = number(c, "pump.Dtilde_theta", Dim::rad_time);
    else if (c.find("pump.D_theta"))
        p.dtilde_theta = d_to_dtilde(number(c, "pump.D_theta", Dim::angle_per_len), wp0);
    else if (c.find("pump.D_theta_out"))
        p.dtilde_theta = internal_from_external(s.wg.model, wp0, p.theta_p0,
                                                d_to_dtilde(number(c, "pump.D_theta_out", Dim::angle_per_len), wp0));
    validate(p);

    const std::string* both = c.find("filter.sigma");
    const std::string* fs = c.find("filter.sigma_s");
    const std::string* fi = c.find("filter.sigma_i");
    if (both && (fs || fi)) throw Error(Errc::ConfigInvalid, "filter.sigma cannot be combined with filter.sigma_s/_i");
    if (both) fs = fi = both;
    if (fs) s.filter.sigma_s = filter_width(c, both ? "filter.sigma" : "filter.sigma_s", *fs, s.centrals.omega_s0);
    if (fi) s.filter.sigma_i = filter_width(c, both ? "filter.sigma" : "filter.sigma_i", *fi, s.centrals.omega_i0);

    s.opts.g = flag(c, "options.include_g", true) ? GTerms::include : GTerms::neglect;
    if (g_override) s.opts.g = *g_override;
    if (const std::string* fc = c.find("options.filter_cross")) {
        if (*fc == "none")
            s.opts.cross = FilterCross::none;
        else if (*fc == "product")
            s.opts.cross = FilterCross::product;
        else
            throw Error(Errc::ConfigInvalid, "options.filter_cross: expected none or product, got '" + *fc + "'");
    }
    s.p_min = number_or(c, "options.p_min", Dim::none, 0.95);
    if (!(s.p_min > 0.0 && s.p_min < 1.0)) throw Error(Errc::ConfigInvalid, "options.p_min must lie in (0, 1)");

    const double hp = number_or(c, "hom.points", Dim::none, 81.0);
    if (!(hp >= 7.0) || hp != std::floor(hp) || hp > 1e6) throw Error(Errc::ConfigInvalid, "hom.points must be an integer >= 7");
    s.hom_points = static_cast<int>(hp);
    s.hom_span = number_or(c, "hom.span", Dim::none, 3.0);
    if (!(s.hom_span > 0.0)) throw Error(Errc::ConfigInvalid, "hom.span must be positive");
    return s;
}

GaussianTPSA build(const Scenario& s) { return build_tpsa(s.wg, s.pump, s.filter, s.centrals, s.opts); }

const std::vector<QuantityInfo>& quantity_catalog() {
    static const std::vector<QuantityInfo> q{
        {"N", "1/s"},
        {"per_pulse", "1"},
        {"sigma_omega_s", "rad/s"},
        {"sigma_omega_i", "rad/s"},
        {"sigma_lambda_s", "nm"},
        {"sigma_lambda_i", "nm"},
        {"ratio_lambda_s_i", "1"},
        {"sigma_tau_s", "fs"},
        {"sigma_tau_i", "fs"},
        {"time_bandwidth_s", "1"},
        {"hom_A", "1"},
        {"hom_B", "s^-2"},
        {"visibility", "1"},
        {"delta_tau_l", "fs"},
        {"P", "1"},
        {"vartheta", "1"},
        {"Se", "bit"},
        {"n_min", "1"},
        {"psi_si", "deg"},
        {"theta_p0", "deg"},
        {"Dtilde_theta", "rad*s"},
        {"D_theta_out", "deg/m"},
    };
    return q;
}

std::vector<double> evaluate_quantities(const Scenario& s, const std::vector<std::string>& names,
                                        std::string* first_error) {
    std::vector<double> out(names.size(), nan);
    std::optional<GaussianTPSA> t;
    try {
        t = build(s);
    } catch (const Error& e) {
        if (first_error && first_error->empty()) *first_error = e.what();
    }
    const double wp0 = s.centrals.omega_p0();
    const std::map<std::string, std::function<double()>> calc{
        {"N", [&] { return pair_rate(*t).n; }},
        {"per_pulse", [&] { return pair_rate(*t).per_pulse; }},
        {"sigma_omega_s", [&] { return spectrum(*t, Field::signal).sigma_omega; }},
        {"sigma_omega_i", [&] { return spectrum(*t, Field::idler).sigma_omega; }},
        {"sigma_lambda_s", [&] { return 1e9 * wavelength_width(spectrum(*t, Field::signal).sigma_omega, t->omega_s0); }},
        {"sigma_lambda_i", [&] { return 1e9 * wavelength_width(spectrum(*t, Field::idler).sigma_omega, t->omega_i0); }},
        {"ratio_lambda_s_i",
         [&] {
             return wavelength_width(spectrum(*t, Field::signal).sigma_omega, t->omega_s0) /
                    wavelength_width(spectrum(*t, Field::idler).sigma_omega, t->omega_i0);
         }},
        {"sigma_tau_s", [&] { return 1e15 * flux(*t, Field::signal).sigma_tau; }},
        {"sigma_tau_i", [&] { return 1e15 * flux(*t, Field::idler).sigma_tau; }},
        {"time_bandwidth_s", [&] { return time_bandwidth(*t).product_s; }},
        {"hom_A", [&] { return hom_params(*t).a; }},
        {"hom_B", [&] { return hom_params(*t).b; }},
        {"visibility", [&] { return hom_params(*t).visibility; }},
        {"delta_tau_l", [&] { return 1e15 * hom_params(*t).delta_tau_l; }},
        {"P", [&] { return schmidt(*t, s.p_min).p; }},
        {"vartheta", [&] { return schmidt(*t, s.p_min).vartheta; }},
        {"Se", [&] { return schmidt(*t, s.p_min).entropy; }},
        {"n_min", [&] { return static_cast<double>(schmidt(*t, s.p_min).n_min); }},
        {"psi_si", [&] { return to_deg * principal_axes(*t).psi_si; }},
        {"theta_p0", [&] { return to_deg * s.pump.theta_p0; }},
        {"Dtilde_theta", [&] { return s.pump.dtilde_theta; }},
        {"D_theta_out",
         [&] {
             return to_deg * external_angular_dispersion(s.wg.model, wp0, s.pump.theta_p0, s.pump.dtilde_theta).d_out;
         }},
    };
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto it = calc.find(names[k]);
        if (it == calc.end()) throw Error(Errc::ConfigInvalid, "unknown quantity '" + names[k] + "'");
        const bool needs_t = names[k] != "theta_p0" && names[k] != "Dtilde_theta" && names[k] != "D_theta_out";
        if (needs_t && !t) continue;
        try {
            out[k] = it->second();
        } catch (const Error& e) {
            if (first_error && first_error->empty()) *first_error = names[k] + ": " + e.what();
        }
    }
    return out;
}

nlohmann::json scenario_report(const Scenario& s) {
    using nlohmann::json;
    const GaussianTPSA t = build(s);
    const double wp0 = s.centrals.omega_p0();
    json r;
    r["version"] = PAIRWAVE_VERSION;

    json& in = r["resolved"];
    in["dispersion"] = s.wg.model.label;
    in["dispersion_source"] = s.dispersion_source;
    in["alpha[1/m]"] = s.wg.alpha;
    in["Ly[m]"] = s.wg.ly;
    in["d[m/V]"] = s.wg.d;
    in["lambda_p0[m]"] = s.pump.lambda_p0;
    in["lambda_s0[m]"] = wavelength_from_omega(s.centrals.omega_s0);
    in["lambda_i0[m]"] = wavelength_from_omega(s.centrals.omega_i0);
    in["tau_p[s]"] = s.pump.tau_p;
    in["chirp[1]"] = s.pump.chirp;
    in["Z_p[m]"] = s.pump.z_p;
    in["Y_p[m]"] = s.pump.y_p;
    in["theta_p0[deg]"] = s.pump.theta_p0 * to_deg;
    in["theta_p0_auto"] = s.theta_auto;
    in["Dtilde_theta[rad*s]"] = s.pump.dtilde_theta;
    const auto ext = external_angular_dispersion(s.wg.model, wp0, s.pump.theta_p0, s.pump.dtilde_theta);
    in["D_theta[deg/m]"] = dtilde_to_d(s.pump.dtilde_theta, wp0) * to_deg;
    in["D_theta_out[deg/m]"] = ext.d_out * to_deg;
    in["theta_out[deg]"] = ext.theta_out * to_deg;
    in["P_p[W]"] = s.pump.power;
    in["f_rep[1/s]"] = s.pump.f_rep;
    in["sigma_s[rad/s]"] = s.filter.sigma_s ? json(*s.filter.sigma_s) : json("none");
    in["sigma_i[rad/s]"] = s.filter.sigma_i ? json(*s.filter.sigma_i) : json("none");
    in["include_g"] = s.opts.g == GTerms::include;
    in["filter_cross"] = s.opts.cross == FilterCross::product ? "product" : "none";
    in["p_min[1]"] = s.p_min;

    json& co = r["coefficients"];
    auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
    co["f2s[s^2]"] = cj(t.f2s);
    co["f2i[s^2]"] = cj(t.f2i);
    co["f2si[s^2]"] = cj(t.f2si);
    co["f1s[s]"] = cj(t.f1s);
    co["f1i[s]"] = cj(t.f1i);
    co["f0[1]"] = t.f0;
    co["G_s[s^2]"] = cj(t.g_s);
    co["G_i[s^2]"] = cj(t.g_i);
    co["G_si[s^2]"] = cj(t.g_si);
    co["V_ps[s/m]"] = t.v_ps;
    co["V_pi[s/m]"] = t.v_pi;
    co["V_si[s/m]"] = t.v_si;
    co["C_phi_sq[1/m]"] = t.c_phi_sq;

    const RateResult rate = pair_rate(t);
    r["rate"] = {{"N[1/s]", rate.n},
                 {"per_pulse[1]", rate.per_pulse},
                 {"N_simplified[1/s]", pair_rate(t, Formula::simplified).n}};

    for (Field f : {Field::signal, Field::idler}) {
        const bool sig = f == Field::signal;
        const SpectrumParams sp = spectrum(t, f);
        const FluxParams fx = flux(t, f);
        const double w0 = sig ? t.omega_s0 : t.omega_i0;
        json& j = r[sig ? "signal" : "idler"];
        j["sigma_omega[rad/s]"] = sp.sigma_omega;
        j["sigma_lambda[nm]"] = 1e9 * wavelength_width(sp.sigma_omega, w0);
        j["fwhm_lambda[nm]"] = 1e9 * fwhm_from_width(wavelength_width(sp.sigma_omega, w0));
        j["delta_omega0[rad/s]"] = sp.delta_omega0;
        j["spectrum_peak[W*s/rad]"] = sp.amplitude;
        j["sigma_tau[fs]"] = 1e15 * fx.sigma_tau;
        j["delta_tau0[fs]"] = 1e15 * fx.delta_tau0;
        j["flux_peak[1/s^2]"] = fx.amplitude;
    }
    const TimeBandwidth tb = time_bandwidth(t);
    r["time_bandwidth"] = {{"signal[1]", tb.product_s}, {"idler[1]", tb.product_i}, {"ratio[1]", tb.ratio}};
    const WidthRatio wr = width_ratio(t);
    r["width_ratio"] = {{"sigma_omega_s/sigma_omega_i[1]", wr.ratio}, {"F[1]", wr.f}};

    const HomDip h = hom_params(t);
    r["hom"] = {{"A[1]", h.a},
                {"B[s^-2]", h.b},
                {"visibility[1]", h.visibility},
                {"delta_tau_l[fs]", 1e15 * h.delta_tau_l},
                {"beat[rad/s]", h.beat}};

    const SchmidtSpectrum sc = schmidt(t, s.p_min);
    json lam = json::array();
    for (double v : sc.lambda_sq) lam.push_back(v);
    r["schmidt"] = {{"P[1]", std::isinf(sc.p) ? json("inf") : json(sc.p)},
                    {"vartheta[1]", sc.vartheta},
                    {"Se[bit]", sc.entropy},
                    {"n_min[1]", sc.n_min},
                    {"lambda_sq[1]", lam}};
    const PrincipalAxes pa = principal_axes(t);
    r["principal_axes"] = {{"mu1[s^2]", pa.mu1}, {"mu2[s^2]", pa.mu2}, {"psi_si[deg]", pa.psi_si * to_deg}};

    if (s.pump.chirp == 0.0) {
        const auto sep = separability_roots(s.wg, s.pump, s.centrals, s.opts.g);
        json roots = json::array();
        for (double d : sep.dtilde_roots) roots.push_back(d);
        json outs = json::array();
        for (double d : sep.dtilde_roots) {
            try {
                outs.push_back(to_deg * external_angular_dispersion(s.wg.model, wp0, s.pump.theta_p0, d).d_out);
            } catch (const Error&) {
                outs.push_back(nullptr);
            }
        }
        r["separability"] = {{"Dtilde_theta_roots[rad*s]", roots},
                             {"D_theta_out_roots[deg/m]", outs},
                             {"discriminant", sep.discriminant},
                             {"Z_min[m]", sep.z_min}};
    } else {
        r["separability"] = "not evaluated for a chirped pump";
    }
    return r;
}

HomTable hom_table(const Scenario& s) {
    const GaussianTPSA t = build(s);
    const HomDip h = hom_params(t);
    HomTable out;
    const double half = s.hom_span * h.delta_tau_l;
    for (int k = 0; k < s.hom_points; ++k) {
        const double tau = -half + 2.0 * half * k / (s.hom_points - 1);
        out.tau_l.push_back(tau);
        out.r_n.push_back(hom_curve(h, tau));
    }
    return out;
}

}  // namespace pairwave::app
