#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairwave/app/config.hpp"
#include "pairwave/app/inverse_io.hpp"
#include "pairwave/app/scenario.hpp"
#include "pairwave/app/sweep.hpp"
#include "pairwave/constants.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/temporal.hpp"

namespace fs = std::filesystem;
using namespace pairwave;
using nlohmann::json;

namespace {

struct Common {
    std::string config;
    std::string out_dir;
    std::string format;
    bool include_g = false;
    bool neglect_g = false;

    std::optional<GTerms> g() const {
        if (include_g) return GTerms::include;
        if (neglect_g) return GTerms::neglect;
        return std::nullopt;
    }
};

void emit(const std::string& text, const Common& c, const std::string& filename) {
    if (c.out_dir.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(c.out_dir);
    const fs::path p = fs::path(c.out_dir) / filename;
    std::ofstream(p, std::ios::binary) << text;
    std::cerr << "wrote " << p.string() << "\n";
}

// nested report flattened to section.key,value rows
void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
    } else if (j.is_number()) {
        out << prefix << "," << app::format_number(j.get<double>()) << "\n";
    } else {
        out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string render(const json& j, const std::string& format) {
    if (format == "csv") {
        std::ostringstream os;
        os << "key,value\n";
        flatten(j, "", os);
        return os.str();
    }
    return j.dump(2) + "\n";
}

app::Scenario load_scenario(const Common& c) {
    if (c.config.empty()) throw Error(Errc::ConfigInvalid, "--config is required");
    return app::resolve_scenario(app::load_config(c.config), c.g());
}

std::string guidance(Errc e) {
    switch (e) {
        case Errc::NoPhysicalRoot:
            return "hint: the widths and B are inconsistent with a Gaussian amplitude; check the width convention "
                   "(e^-1 half widths of the intensity spectra) and the units of B";
        case Errc::NegativeDiscriminant:
            return "hint: no real solution for f2s; the measured widths and B are mutually inconsistent";
        case Errc::FitDiverged:
            return "hint: the HOM samples do not show a resolvable dip; extend the delay range or add points near zero";
        case Errc::InsufficientSamples:
            return "hint: record at least 7 delays spanning the dip";
        case Errc::ConfigInvalid:
            return "hint: see README for the config keys and accepted units";
        default:
            return "";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"pairwave: photon pairs from a transversely pumped planar waveguide"};
    cli.require_subcommand(1);
    cli.set_version_flag("--version", std::string(PAIRWAVE_VERSION));
    Common c;
    std::map<CLI::App*, std::string> default_format;
    auto add_common = [&](CLI::App* s, bool needs_config, const std::string& fmt) {
        default_format[s] = fmt;
        if (needs_config) s->add_option("--config", c.config, "scenario config file")->required();
        s->add_option("--out-dir", c.out_dir, "write files here instead of stdout");
        s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        auto* ig = s->add_flag("--include-g", c.include_g, "keep the transverse-overlap corrections");
        auto* ng = s->add_flag("--neglect-g", c.neglect_g, "drop the transverse-overlap corrections");
        ig->excludes(ng);
    };

    auto* sc = cli.add_subcommand("scenario", "all closed-form results for one configuration (JSON)");
    add_common(sc, true, "json");
    std::string emit_dir;
    sc->add_option("--emit-inverse-inputs", emit_dir, "also write widths.txt and hom.csv for the inverse subcommand");

    auto* sw = cli.add_subcommand("sweep", "grid of quantities over one or two config keys");
    add_common(sw, true, "csv");
    unsigned threads = 0;
    sw->add_option("--threads", threads, "worker threads (default: all cores)");

    auto* hm = cli.add_subcommand("hom", "normalized coincidence rate versus delay");
    add_common(hm, true, "csv");

    auto* sh = cli.add_subcommand("schmidt", "Schmidt eigenvalues, entropy and mode count");
    add_common(sh, true, "json");
    int modes = 16;
    sh->add_option("--modes", modes, "eigenvalues to list")->check(CLI::Range(1, 10000));

    auto* iv = cli.add_subcommand("inverse", "entropy of entanglement from measured widths and a HOM scan");
    add_common(iv, false, "json");
    std::string widths, hom_csv;
    iv->add_option("--widths", widths, "widths file")->required();
    iv->add_option("--hom", hom_csv, "HOM samples, CSV tau_l[fs],R_n[1]");

    auto* pm = cli.add_subcommand("phase-match", "pump angle, group velocities and mismatch coefficients");
    add_common(pm, true, "json");

    auto* di = cli.add_subcommand("dispersion-info", "dispersion model summary");
    add_common(di, false, "json");
    std::string disp_file;
    std::vector<double> wavelengths_nm;
    di->add_option("--dispersion", disp_file, "dispersion JSON (default: built-in LiNbO3)");
    di->add_option("--lambda-nm", wavelengths_nm, "wavelengths to tabulate");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (c.format.empty())
        for (const auto& [sub, fmt] : default_format)
            if (sub->parsed()) c.format = fmt;

    try {
        if (*sc) {
            const auto s = load_scenario(c);
            emit(render(app::scenario_report(s), c.format), c, "scenario." + c.format);
            if (!emit_dir.empty())
                for (const auto& p : app::write_inverse_inputs(s, emit_dir)) std::cerr << "wrote " << p << "\n";
        } else if (*sw) {
            const auto cfg = app::load_config(c.config);
            const auto spec = app::resolve_sweep(cfg);
            const auto res = app::run_sweep(cfg, spec, c.g(), threads);
            const std::string dir = c.out_dir.empty() ? "." : c.out_dir;
            for (const auto& p : app::write_sweep(res, cfg, dir, c.format)) std::cerr << "wrote " << p << "\n";
            if (res.failures > 0)
                std::cerr << "warning: " << res.failures << " grid point(s) undefined; first: " << res.first_error << "\n";
        } else if (*hm) {
            const auto s = load_scenario(c);
            const auto t = app::build(s);
            const auto h = hom_params(t);
            const auto tab = app::hom_table(s);
            if (c.format == "csv") {
                std::ostringstream os;
                os << "tau_l[fs],R_n[1]\n";
                for (std::size_t k = 0; k < tab.tau_l.size(); ++k)
                    os << app::format_number(tab.tau_l[k] * 1e15) << "," << app::format_number(tab.r_n[k]) << "\n";
                emit(os.str(), c, "hom.csv");
            } else {
                json j{{"A[1]", h.a}, {"B[s^-2]", h.b}, {"visibility[1]", h.visibility},
                       {"delta_tau_l[fs]", h.delta_tau_l * 1e15}, {"beat[rad/s]", h.beat}};
                for (std::size_t k = 0; k < tab.tau_l.size(); ++k)
                    j["curve"].push_back({tab.tau_l[k] * 1e15, tab.r_n[k]});
                emit(render(j, "json"), c, "hom.json");
            }
        } else if (*sh) {
            const auto s = load_scenario(c);
            const auto sp = schmidt(app::build(s), s.p_min, modes);
            if (c.format == "csv") {
                std::ostringstream os;
                os << "n[1],lambda_sq[1]\n";
                for (int k = 0; k < modes; ++k) os << k << "," << app::format_number(sp.eigenvalue_sq(k)) << "\n";
                emit(os.str(), c, "schmidt.csv");
            } else {
                json j{{"P[1]", std::isinf(sp.p) ? json("inf") : json(sp.p)},
                       {"vartheta[1]", sp.vartheta},
                       {"Se[bit]", sp.entropy},
                       {"n_min[1]", sp.n_min},
                       {"p_min[1]", sp.p_min},
                       {"lambda_sq[1]", sp.lambda_sq}};
                emit(render(j, "json"), c, "schmidt.json");
            }
        } else if (*iv) {
            const std::optional<std::string> hp = hom_csv.empty() ? std::nullopt : std::optional<std::string>(hom_csv);
            emit(render(app::run_inverse(widths, hp), c.format), c, "inverse." + c.format);
        } else if (*pm) {
            const auto s = load_scenario(c);
            const auto& wg = s.wg;
            const auto& ce = s.centrals;
            const double wp = ce.omega_p0();
            const auto v = v_coefficients(wg, s.pump, ce);
            json j{{"theta_p0[deg]", s.pump.theta_p0 * 180.0 / consts::pi},
                   {"residual[1/m]", phase_matching_residual(wg, ce.omega_s0, ce.omega_i0, s.pump.theta_p0)},
                   {"k_p[1/m]", bulk_wavenumber(wg.model, wp)},
                   {"beta_s[1/m]", beta(wg, ce.omega_s0)},
                   {"beta_i[1/m]", beta(wg, ce.omega_i0)},
                   {"v_p[m/s]", group_velocity(wg, wp, Velocity::pump_bulk)},
                   {"v_s[m/s]", group_velocity(wg, ce.omega_s0, Velocity::guided)},
                   {"v_i[m/s]", group_velocity(wg, ce.omega_i0, Velocity::guided)},
                   {"gamma_s[1/m]", gamma(wg, ce.omega_s0)},
                   {"gamma_i[1/m]", gamma(wg, ce.omega_i0)},
                   {"V_ps[s/m]", v.v_ps},
                   {"V_pi[s/m]", v.v_pi},
                   {"V_si[s/m]", v.v_si}};
            emit(render(j, c.format), c, "phase_match." + c.format);
        } else if (*di) {
            DispersionModel m = disp_file.empty() ? congruent_linbo3() : load_dispersion_model(disp_file);
            json j{{"label", m.label},
                   {"form", m.form == DispersionModel::Form::constant ? "constant" : "sellmeier"},
                   {"window_lambda[nm]", {wavelength_from_omega(m.omega_hi) * 1e9, wavelength_from_omega(m.omega_lo) * 1e9}}};
            if (wavelengths_nm.empty()) wavelengths_nm = {532.0, 1064.0};
            for (double l : wavelengths_nm) {
                const double w = omega_from_wavelength(l * 1e-9);
                const double n = refractive_index(m, w);
                const double ng = n + w * index_derivative(m, w);
                j["table"].push_back({{"lambda[nm]", l}, {"n[1]", n}, {"n_group[1]", ng}});
            }
            emit(render(j, c.format), c, "dispersion." + c.format);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string g = guidance(e.code());
        if (!g.empty()) std::cerr << g << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
