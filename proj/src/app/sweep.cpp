#include "pairwave/app/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pairwave/app/scenario.hpp"
#include "pairwave/errors.hpp"

namespace pairwave::app {

namespace {

std::string get(const RawConfig& c, const std::string& key) {
    const std::string* v = c.find(key);
    if (!v) throw Error(Errc::ConfigInvalid, c.origin + ": sweep needs '" + key + "'");
    return *v;
}

SweepAxis axis(const RawConfig& c, const std::string& n) {
    SweepAxis a;
    a.key = get(c, "sweep." + n);
    if (!is_sweepable(a.key)) throw Error(Errc::ConfigInvalid, "sweep." + n + ": '" + a.key + "' is not a sweepable key");
    const Dim d = *key_dimension(a.key);
    const std::string f = "sweep." + n + "_from", t = "sweep." + n + "_to";
    const Quantity from = parse_quantity(get(c, f), d, f);
    a.from = from.value;
    a.unit = from.unit;
    const std::string pts = get(c, "sweep." + n + "_points");
    try {
        std::size_t used = 0;
        a.points = std::stoi(pts, &used);
        if (used != pts.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw Error(Errc::ConfigInvalid, "sweep." + n + "_points: '" + pts + "' is not an integer");
    }
    if (a.points < 1 || a.points > 4096) throw Error(Errc::ConfigInvalid, "sweep." + n + "_points must lie in [1, 4096]");
    if (a.points > 1) {
        const Quantity to = parse_quantity(get(c, t), d, t);
        a.to = to.si / unit_factor(a.unit, d, f);
    } else {
        a.to = a.from;
    }
    if (const std::string* sc = c.find("sweep." + n + "_scale")) {
        if (*sc == "log")
            a.log = true;
        else if (*sc != "lin")
            throw Error(Errc::ConfigInvalid, "sweep." + n + "_scale: expected lin or log, got '" + *sc + "'");
    }
    if (a.log && !(a.from * a.to > 0.0))
        throw Error(Errc::ConfigInvalid, "sweep." + n + ": a log axis needs two endpoints of the same sign");
    return a;
}

std::string override_text(double v, const std::string& unit) {
    std::string s = format_number(v);
    if (!unit.empty()) s += " " + unit;
    return s;
}

}  // namespace

std::vector<double> SweepAxis::values() const {
    std::vector<double> v;
    if (points == 1) return {from};
    for (int k = 0; k < points; ++k) {
        const double u = static_cast<double>(k) / (points - 1);
        v.push_back(log ? from * std::pow(to / from, u) : from + (to - from) * u);
    }
    v.back() = to;
    return v;
}

SweepSpec resolve_sweep(const RawConfig& c) {
    SweepSpec s;
    s.axis1 = axis(c, "axis1");
    if (c.find("sweep.axis2")) {
        s.axis2 = axis(c, "axis2");
        if (s.axis2->key == s.axis1.key) throw Error(Errc::ConfigInvalid, "sweep axes must differ");
    }
    std::string q = get(c, "sweep.quantities");
    std::stringstream ss(q);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, e - b + 1);
        bool known = false;
        for (const auto& qi : quantity_catalog()) known = known || qi.name == item;
        if (!known) throw Error(Errc::ConfigInvalid, "sweep.quantities: unknown quantity '" + item + "'");
        s.quantities.push_back(item);
    }
    if (s.quantities.empty()) throw Error(Errc::ConfigInvalid, "sweep.quantities is empty");
    return s;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SweepResult run_sweep(const RawConfig& cfg, const SweepSpec& spec, std::optional<GTerms> g_override, unsigned threads) {
    SweepResult r;
    r.spec = spec;
    r.axis1 = spec.axis1.values();
    if (spec.axis2) r.axis2 = spec.axis2->values();
    const std::size_t n2 = spec.axis2 ? r.axis2.size() : 1;
    const std::size_t total = r.axis1.size() * n2;
    r.data.assign(total, {});
    std::vector<std::string> errors(total);

    // resolve the base point once so config errors surface before any work starts
    resolve_scenario(cfg, g_override);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            RawConfig local = cfg;
            local.set(spec.axis1.key, override_text(r.axis1[k / n2], spec.axis1.unit));
            if (spec.axis2) local.set(spec.axis2->key, override_text(r.axis2[k % n2], spec.axis2->unit));
            try {
                const Scenario s = resolve_scenario(local, g_override);
                r.data[k] = evaluate_quantities(s, spec.quantities, &errors[k]);
            } catch (const Error& e) {
                r.data[k].assign(spec.quantities.size(), std::nan(""));
                errors[k] = e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (std::size_t k = 0; k < total; ++k) {
        bool bad = !errors[k].empty();
        for (double v : r.data[k]) bad = bad || std::isnan(v);
        if (bad) {
            ++r.failures;
            if (r.first_error.empty() && !errors[k].empty()) r.first_error = errors[k];
        }
    }
    return r;
}

std::vector<std::string> write_sweep(const SweepResult& r, const RawConfig& cfg, const std::string& out_dir,
                                     const std::string& format) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    const auto& sp = r.spec;
    auto unit_of = [](const std::string& q) {
        for (const auto& qi : quantity_catalog())
            if (qi.name == q) return qi.unit;
        return std::string("1");
    };
    auto head = [](const SweepAxis& a) { return a.key + "[" + (a.unit.empty() ? "1" : a.unit) + "]"; };
    const std::size_t n2 = sp.axis2 ? r.axis2.size() : 1;

    if (format == "csv") {
        for (std::size_t q = 0; q < sp.quantities.size(); ++q) {
            const fs::path p = fs::path(out_dir) / (sp.quantities[q] + ".csv");
            std::ofstream out(p, std::ios::binary);
            out << head(sp.axis1);
            if (sp.axis2) out << "," << head(*sp.axis2);
            out << "," << sp.quantities[q] << "[" << unit_of(sp.quantities[q]) << "]\n";
            for (std::size_t k = 0; k < r.data.size(); ++k) {
                out << format_number(r.axis1[k / n2]);
                if (sp.axis2) out << "," << format_number(r.axis2[k % n2]);
                out << "," << format_number(r.data[k][q]) << "\n";
            }
            written.push_back(p.string());
        }
    } else if (format == "json") {
        nlohmann::json j;
        j["axis1"] = {{"key", sp.axis1.key}, {"unit", sp.axis1.unit}, {"values", r.axis1}};
        if (sp.axis2) j["axis2"] = {{"key", sp.axis2->key}, {"unit", sp.axis2->unit}, {"values", r.axis2}};
        for (std::size_t q = 0; q < sp.quantities.size(); ++q) {
            nlohmann::json col = nlohmann::json::array();
            for (const auto& row : r.data) col.push_back(std::isfinite(row[q]) ? nlohmann::json(row[q]) : nlohmann::json());
            j["quantities"][sp.quantities[q]] = {{"unit", unit_of(sp.quantities[q])}, {"values", col}};
        }
        const fs::path p = fs::path(out_dir) / "sweep.json";
        std::ofstream(p, std::ios::binary) << j.dump(1) << "\n";
        written.push_back(p.string());
    } else {
        throw Error(Errc::InvalidArgument, "unknown format '" + format + "' (csv or json)");
    }

    nlohmann::json prov;
    prov["tool"] = "pairwave";
    prov["version"] = PAIRWAVE_VERSION;
    prov["config"] = cfg.origin;
    prov["config_sha256"] = sha256_hex(cfg.text);
    prov["axis1"] = {{"key", sp.axis1.key}, {"from", sp.axis1.from}, {"to", sp.axis1.to}, {"unit", sp.axis1.unit},
                     {"points", sp.axis1.points}, {"scale", sp.axis1.log ? "log" : "lin"}};
    if (sp.axis2)
        prov["axis2"] = {{"key", sp.axis2->key}, {"from", sp.axis2->from}, {"to", sp.axis2->to},
                         {"unit", sp.axis2->unit}, {"points", sp.axis2->points}, {"scale", sp.axis2->log ? "log" : "lin"}};
    prov["quantities"] = sp.quantities;
    prov["ordering"] = "row-major, axis1 outer";
    prov["failed_points"] = r.failures;
    if (!r.first_error.empty()) prov["first_error"] = r.first_error;
    prov["files"] = nlohmann::json::array();
    for (const auto& w : written) prov["files"].push_back(fs::path(w).filename().string());
    const fs::path p = fs::path(out_dir) / "sweep.provenance.json";
    std::ofstream(p, std::ios::binary) << prov.dump(1) << "\n";
    written.push_back(p.string());
    return written;
}

}  // namespace pairwave::app
