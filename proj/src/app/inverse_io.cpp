#include "pairwave/app/inverse_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pairwave/app/sweep.hpp"
#include "pairwave/constants.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/spectral.hpp"
#include "pairwave/temporal.hpp"

namespace pairwave::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

WidthsFile read_widths(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ConfigInvalid, "cannot open widths file " + path);
    const std::map<std::string, Dim> known{{"sigma_omega_s", Dim::omega}, {"sigma_omega_i", Dim::omega},
                                           {"sigma_lambda_s", Dim::length}, {"sigma_lambda_i", Dim::length},
                                           {"lambda_s0", Dim::length},     {"lambda_i0", Dim::length},
                                           {"B", Dim::none}};
    std::map<std::string, double> v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw Error(Errc::ConfigInvalid, where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        const auto it = known.find(key);
        if (it == known.end()) throw Error(Errc::ConfigInvalid, where + "unknown key '" + key + "'");
        if (key == "B") {
            // accept "s^-2" or "1/s^2"
            const Quantity q = parse_quantity(val.substr(0, val.find_first_of(" \t")), Dim::none, key);
            const std::string unit = trim(val.substr(std::min(val.size(), val.find_first_of(" \t"))));
            if (!unit.empty() && unit != "s^-2" && unit != "1/s^2")
                throw Error(Errc::ConfigInvalid, where + "B: unit must be s^-2");
            v[key] = q.si;
        } else {
            v[key] = parse_quantity(val, it->second, key).si;
        }
    }
    WidthsFile w;
    if (v.count("lambda_s0")) w.ms.omega_s0 = omega_from_wavelength(v["lambda_s0"]);
    if (v.count("lambda_i0")) w.ms.omega_i0 = omega_from_wavelength(v["lambda_i0"]);
    auto width = [&](const char* om, const char* lam, const std::optional<double>& w0) {
        if (v.count(om)) return v[om];
        if (v.count(lam)) {
            if (!w0) throw Error(Errc::ConfigInvalid, std::string(lam) + " needs the matching central wavelength");
            return omega_width_from_wavelength(v[lam], *w0);
        }
        throw Error(Errc::ConfigInvalid, path + ": missing " + om + " (or " + lam + ")");
    };
    w.ms.sigma_omega_s = width("sigma_omega_s", "sigma_lambda_s", w.ms.omega_s0);
    w.ms.sigma_omega_i = width("sigma_omega_i", "sigma_lambda_i", w.ms.omega_i0);
    if (v.count("B")) {
        w.ms.b = v["B"];
        w.has_b = true;
    }
    return w;
}

namespace {

// the whole field must be one number; "0.5,7" is not
bool full_number(const std::string& s, double& v) {
    const char* b = s.data();
    const char* e = b + s.size();
    const auto r = std::from_chars(b, e, v);
    return r.ec == std::errc() && r.ptr == e;
}

}  // namespace

std::vector<HomSample> read_hom_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ConfigInvalid, "cannot open HOM file " + path);
    std::string line;
    double tscale = 1.0;
    std::vector<HomSample> out;
    bool header = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(Errc::ConfigInvalid, path + ":" + std::to_string(lineno) + ": expected 'tau_l,R_n'");
        const std::string a = trim(line.substr(0, comma)), b = trim(line.substr(comma + 1));
        if (header) {
            header = false;
            if (!a.empty() && (std::isalpha(static_cast<unsigned char>(a[0])))) {
                const auto lb = a.find('['), rb = a.find(']');
                if (lb != std::string::npos && rb != std::string::npos && rb > lb)
                    tscale = unit_factor(a.substr(lb + 1, rb - lb - 1), Dim::time, "HOM delay column");
                continue;
            }
        }
        double x = 0.0, y = 0.0;
        if (!full_number(a, x) || !full_number(b, y))
            throw Error(Errc::ConfigInvalid, path + ":" + std::to_string(lineno) + ": not a number pair");
        out.push_back({x * tscale, y});
    }
    return out;
}

nlohmann::json run_inverse(const std::string& widths_path, const std::optional<std::string>& hom_path) {
    using nlohmann::json;
    WidthsFile w = read_widths(widths_path);
    json r;
    r["version"] = PAIRWAVE_VERSION;
    if (hom_path) {
        std::optional<double> beat;
        if (w.ms.omega_s0 && w.ms.omega_i0) beat = *w.ms.omega_s0 - *w.ms.omega_i0;
        const HomFit fit = fit_hom_B(read_hom_csv(*hom_path), beat);
        r["fit"] = {{"A[1]", fit.a}, {"B[s^-2]", fit.b}, {"beat[rad/s]", fit.beat}, {"rms[1]", fit.rms},
                    {"samples", fit.samples}};
        if (w.has_b) r["fit"]["B_from_widths_file[s^-2]"] = w.ms.b;
        w.ms.b = fit.b;
    } else if (!w.has_b) {
        throw Error(Errc::ConfigInvalid, "no HOM samples and no B in the widths file");
    }
    r["measurements"] = {{"sigma_omega_s[rad/s]", w.ms.sigma_omega_s},
                         {"sigma_omega_i[rad/s]", w.ms.sigma_omega_i},
                         {"B[s^-2]", w.ms.b}};
    const InverseResult inv = estimate(w.ms);
    auto root_json = [](const InverseRoot& x) {
        return json{{"f2s[s^2]", x.f2s},
                    {"f2i[s^2]", x.f2i},
                    {"f2si[s^2]", x.f2si},
                    {"Dfr[s^4]", x.dfr},
                    {"P[1]", std::isinf(x.p) ? json("inf") : json(x.p)},
                    {"vartheta[1]", x.vartheta},
                    {"Se[bit]", x.entropy},
                    {"physical", x.physical}};
    };
    r["F[1]"] = inv.f;
    r["closed_form"] = inv.closed_form;
    r["root_multiplicity"] = inv.root_multiplicity;
    r["discriminant"] = inv.discriminant;
    r["roots"] = json::array();
    for (const auto& x : inv.roots) r["roots"].push_back(root_json(x));
    r["rejected"] = json::array();
    for (const auto& x : inv.rejected) r["rejected"].push_back(root_json(x));
    r["ambiguous"] = inv.ambiguous;
    if (inv.ambiguous)
        r["note"] = "two physical roots with entropies more than 0.1 bit apart; the widths and B alone cannot decide";
    return r;
}

std::vector<std::string> write_inverse_inputs(const Scenario& s, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const GaussianTPSA t = build(s);
    const fs::path wp = fs::path(out_dir) / "widths.txt";
    {
        std::ofstream out(wp, std::ios::binary);
        out << "sigma_omega_s = " << format_number(spectrum(t, Field::signal).sigma_omega) << " rad/s\n";
        out << "sigma_omega_i = " << format_number(spectrum(t, Field::idler).sigma_omega) << " rad/s\n";
        out << "lambda_s0 = " << format_number(wavelength_from_omega(t.omega_s0)) << " m\n";
        out << "lambda_i0 = " << format_number(wavelength_from_omega(t.omega_i0)) << " m\n";
    }
    const fs::path hp = fs::path(out_dir) / "hom.csv";
    {
        Scenario h = s;
        h.hom_points = 41;
        const HomTable tab = hom_table(h);
        std::ofstream out(hp, std::ios::binary);
        out << "tau_l[fs],R_n[1]\n";
        for (std::size_t k = 0; k < tab.tau_l.size(); ++k)
            out << format_number(tab.tau_l[k] * 1e15) << "," << format_number(tab.r_n[k]) << "\n";
    }
    return {wp.string(), hp.string()};
}

}  // namespace pairwave::app
