#pragma once

#include <string>

namespace pairwave::app {

enum class Dim {
    none,          // plain number
    length,        // m
    time,          // s
    inv_length,    // 1/m
    angle,         // rad
    angle_per_len, // rad/m (angle per unit wavelength)
    rad_time,      // rad s
    power,         // W
    rate,          // 1/s
    nonlinear,     // m/V
    omega,         // rad/s
};

struct Quantity {
    double si = 0.0;
    double value = 0.0;  // as written
    std::string unit;    // as written, empty for none
};

// "1e-13 s", "532 nm", "4e6 1/m", "-3.2e8 deg/m"; throws ConfigInvalid naming the field
Quantity parse_quantity(const std::string& text, Dim dim, const std::string& field);

// factor converting the written unit to SI, or throws
double unit_factor(const std::string& unit, Dim dim, const std::string& field);

std::string si_unit(Dim dim);

}  // namespace pairwave::app
