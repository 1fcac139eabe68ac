#include "pairwave/app/units.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"

namespace pairwave::app {

namespace {

const std::map<std::string, double>& table(Dim d) {
    static const std::map<std::string, double> length{{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string, double> time{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12},
                                                    {"fs", 1e-15}};
    static const std::map<std::string, double> inv_length{{"1/m", 1.0}, {"m^-1", 1.0}, {"1/um", 1e6}, {"um^-1", 1e6}};
    const double deg = consts::pi / 180.0;
    static const std::map<std::string, double> angle{{"rad", 1.0}, {"deg", deg}, {"mrad", 1e-3}};
    static const std::map<std::string, double> apl{{"rad/m", 1.0}, {"deg/m", deg}, {"deg*m^-1", deg},
                                                   {"deg/nm", deg * 1e9}, {"rad/nm", 1e9}};
    static const std::map<std::string, double> rad_time{{"rad*s", 1.0}, {"rad s", 1.0}, {"s", 1.0}, {"rad*fs", 1e-15},
                                                        {"fs", 1e-15}};
    static const std::map<std::string, double> power{{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}};
    static const std::map<std::string, double> rate{{"1/s", 1.0}, {"s^-1", 1.0}, {"Hz", 1.0}, {"kHz", 1e3},
                                                    {"MHz", 1e6}, {"GHz", 1e9}};
    static const std::map<std::string, double> nonlinear{{"m/V", 1.0}, {"pm/V", 1e-12}};
    static const std::map<std::string, double> omega{{"rad/s", 1.0}, {"1/s", 1.0}, {"s^-1", 1.0}};
    static const std::map<std::string, double> none{{"", 1.0}, {"1", 1.0}};
    switch (d) {
        case Dim::length: return length;
        case Dim::time: return time;
        case Dim::inv_length: return inv_length;
        case Dim::angle: return angle;
        case Dim::angle_per_len: return apl;
        case Dim::rad_time: return rad_time;
        case Dim::power: return power;
        case Dim::rate: return rate;
        case Dim::nonlinear: return nonlinear;
        case Dim::omega: return omega;
        case Dim::none: return none;
    }
    return none;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string si_unit(Dim d) {
    switch (d) {
        case Dim::length: return "m";
        case Dim::time: return "s";
        case Dim::inv_length: return "1/m";
        case Dim::angle: return "rad";
        case Dim::angle_per_len: return "rad/m";
        case Dim::rad_time: return "rad*s";
        case Dim::power: return "W";
        case Dim::rate: return "1/s";
        case Dim::nonlinear: return "m/V";
        case Dim::omega: return "rad/s";
        case Dim::none: return "1";
    }
    return "";
}

double unit_factor(const std::string& unit, Dim dim, const std::string& field) {
    const auto& t = table(dim);
    const auto it = t.find(unit);
    if (it == t.end()) {
        std::ostringstream os;
        os << field << ": unknown unit '" << unit << "' (expected one of:";
        for (const auto& [k, v] : t) os << " '" << k << "'";
        os << ")";
        throw Error(Errc::ConfigInvalid, os.str());
    }
    return it->second;
}

Quantity parse_quantity(const std::string& text, Dim dim, const std::string& field) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(Errc::ConfigInvalid, field + ": '" + s + "' does not start with a number");
    }
    if (!std::isfinite(v)) throw Error(Errc::ConfigInvalid, field + ": value must be finite");
    Quantity q;
    q.value = v;
    q.unit = trim(s.substr(used));
    q.si = v * unit_factor(q.unit, dim, field);
    return q;
}

}  // namespace pairwave::app
