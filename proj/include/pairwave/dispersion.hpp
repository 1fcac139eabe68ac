#pragma once

#include <string>
#include <vector>

namespace pairwave {

// n^2 = a + sum_k b_k L^2 / (L^2 - c_k), L in micrometres
struct SellmeierTerm {
    double b = 0.0;
    double c_um2 = 0.0;
};

struct DispersionModel {
    enum class Form { constant, sellmeier };

    std::string label;
    Form form = Form::constant;
    double constant_index = 1.0;
    double a = 1.0;
    std::vector<SellmeierTerm> terms;
    double omega_lo = 0.0;  // rad/s
    double omega_hi = 0.0;
};

DispersionModel constant_index_model(double n, double omega_lo, double omega_hi);
DispersionModel congruent_linbo3();  // compiled-in copy of data/linbo3_congruent_e.json
DispersionModel parse_dispersion_model(const std::string& json_text);
DispersionModel load_dispersion_model(const std::string& path);
std::string default_dispersion_path();

double refractive_index(const DispersionModel& model, double omega);
double index_derivative(const DispersionModel& model, double omega);  // dn/domega
double bulk_wavenumber(const DispersionModel& model, double omega);   // n omega / c

struct WaveguideSpec {
    double alpha = 0.0;  // parabolic-profile parameter, 1/m
    double ly = 0.0;     // m
    double d = 0.0;      // m/V
    DispersionModel model;
};

void validate(const WaveguideSpec& wg);

double beta(const WaveguideSpec& wg, double omega);
double beta_sqrt_factor(const WaveguideSpec& wg, double omega);  // sqrt(1 - alpha c/(n omega))

enum class Velocity { guided, pump_bulk };
double group_velocity(const WaveguideSpec& wg, double omega, Velocity which);

double gamma(const WaveguideSpec& wg, double omega);

double phase_matching_residual(const WaveguideSpec& wg, double omega_s0, double omega_i0, double theta_p0);
double solve_phase_matching(const WaveguideSpec& wg, double omega_s0, double omega_i0);

// second-order expansion of g = 1/(gamma_s^2 + gamma_i^2) about the centrals:
// g ~ g0 + g1s ds + g1i di + g2s ds^2 + g2i di^2 + g2si ds di
struct GTaylor {
    double g0 = 0.0;
    double g1s = 0.0, g1i = 0.0;
    double g2s = 0.0, g2i = 0.0, g2si = 0.0;

    double eval(double ds, double di) const {
        return g0 + g1s * ds + g1i * di + g2s * ds * ds + g2i * di * di + g2si * ds * di;
    }
};

GTaylor g_taylor(const WaveguideSpec& wg, double omega_s0, double omega_i0);

// relative step sizes for the omega-derivatives
inline constexpr double first_derivative_step = 1e-6;
inline constexpr double second_derivative_step = 1e-3;

}  // namespace pairwave
