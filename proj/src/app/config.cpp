#include "pairwave/app/config.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "pairwave/errors.hpp"

namespace pairwave::app {

namespace {

const std::map<std::string, std::optional<Dim>>& keys() {
    // nullopt: non-numeric value
    static const std::map<std::string, std::optional<Dim>> k{
        {"waveguide.alpha", Dim::inv_length},
        {"waveguide.Ly", Dim::length},
        {"waveguide.d", Dim::nonlinear},
        {"waveguide.dispersion", std::nullopt},
        {"pump.lambda_p0", Dim::length},
        {"pump.tau_p", Dim::time},
        {"pump.chirp", Dim::none},
        {"pump.Z_p", Dim::length},
        {"pump.Y_p", Dim::length},
        {"pump.theta_p0", Dim::angle},
        {"pump.Dtilde_theta", Dim::rad_time},
        {"pump.D_theta", Dim::angle_per_len},
        {"pump.D_theta_out", Dim::angle_per_len},
        {"pump.P_p", Dim::power},
        {"pump.f_rep", Dim::rate},
        {"centrals.lambda_s0", Dim::length},
        {"filter.sigma_s", Dim::length},
        {"filter.sigma_i", Dim::length},
        {"filter.sigma", Dim::length},
        {"options.include_g", std::nullopt},
        {"options.p_min", Dim::none},
        {"options.filter_cross", std::nullopt},
        {"hom.points", Dim::none},
        {"hom.span", Dim::none},
        {"sweep.axis1", std::nullopt},
        {"sweep.axis1_from", std::nullopt},
        {"sweep.axis1_to", std::nullopt},
        {"sweep.axis1_points", std::nullopt},
        {"sweep.axis1_scale", std::nullopt},
        {"sweep.axis2", std::nullopt},
        {"sweep.axis2_from", std::nullopt},
        {"sweep.axis2_to", std::nullopt},
        {"sweep.axis2_points", std::nullopt},
        {"sweep.axis2_scale", std::nullopt},
        {"sweep.quantities", std::nullopt},
    };
    return k;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::string* RawConfig::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

void RawConfig::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries)
        if (k == key) {
            v = value;
            return;
        }
    entries.emplace_back(key, value);
}

bool is_known_key(const std::string& key) { return keys().count(key) > 0; }

std::optional<Dim> key_dimension(const std::string& key) {
    const auto it = keys().find(key);
    if (it == keys().end()) return std::nullopt;
    return it->second;
}

bool is_sweepable(const std::string& key) {
    if (!key_dimension(key)) return false;
    return key.rfind("pump.", 0) == 0 || key.rfind("filter.", 0) == 0 || key.rfind("waveguide.", 0) == 0 ||
           key == "centrals.lambda_s0";
}

RawConfig parse_config(const std::string& text, const std::string& origin, const std::string& base_dir) {
    RawConfig cfg;
    cfg.text = text;
    cfg.origin = origin;
    cfg.base_dir = base_dir;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
        if (eq == std::string::npos) throw Error(Errc::ConfigInvalid, where() + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!is_known_key(key)) throw Error(Errc::ConfigInvalid, where() + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw Error(Errc::ConfigInvalid, where() + "duplicate key '" + key + "'");
        if (val.empty()) throw Error(Errc::ConfigInvalid, where() + "empty value for '" + key + "'");
        cfg.entries.emplace_back(key, val);
    }
    return cfg;
}

RawConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ConfigInvalid, "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), path, dir.empty() ? "." : dir.string());
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

}  // namespace pairwave::app
