#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "pairwave/constants.hpp"
#include "pairwave/dispersion.hpp"
#include "pairwave/entanglement.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/tpsa.hpp"

namespace pwtest {

using namespace pairwave;

inline std::string source_path(const std::string& rel) { return std::string(PAIRWAVE_SOURCE_DIR) + "/" + rel; }

inline bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

inline double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Setup {
    WaveguideSpec wg;
    PumpSpec pump;
    FilterSpec filter;
    Centrals centrals;

    GaussianTPSA build(GTerms g = GTerms::include) const { return build_tpsa(wg, pump, filter, centrals, {g}); }
};

inline WaveguideSpec linbo3_guide() {
    WaveguideSpec wg;
    wg.alpha = 4e6;
    wg.ly = 1e-5;
    wg.d = 41.05e-12;
    wg.model = congruent_linbo3();
    return wg;
}

// degenerate 532 -> 1064 nm, unfiltered, no angular dispersion
inline Setup baseline(double tau_p = 3.162e-13, double z_p = 1e-5) {
    Setup s;
    s.wg = linbo3_guide();
    s.centrals = centrals_from_wavelengths(532e-9, 1064e-9);
    s.pump.lambda_p0 = 532e-9;
    s.pump.tau_p = tau_p;
    s.pump.z_p = z_p;
    s.pump.y_p = 1e-5;
    s.pump.power = 1.0;
    s.pump.f_rep = 8e7;
    s.pump.theta_p0 = solve_phase_matching(s.wg, s.centrals.omega_s0, s.centrals.omega_i0);
    return s;
}

// nondegenerate split used wherever a nonzero beat or pump angle is wanted
inline Setup nondegenerate(double tau_p = 2e-13, double z_p = 1e-5) {
    Setup s = baseline(tau_p, z_p);
    s.centrals = centrals_from_wavelengths(532e-9, 1040e-9);
    s.pump.theta_p0 = solve_phase_matching(s.wg, s.centrals.omega_s0, s.centrals.omega_i0);
    return s;
}

struct RandomOptions {
    bool chirp = true;
    bool filters = true;
    bool angular = true;
    bool nondegenerate = true;
    double max_vartheta = 1.0;  // reject draws more entangled than this
};

// fixed-seed generator of physically valid scenarios
class ScenarioGen {
public:
    explicit ScenarioGen(std::uint64_t seed, RandomOptions o = {}) : rng_(seed), opt_(o) {}

    Setup next() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Setup s = baseline(log_uniform(3e-14, 1e-12), log_uniform(2e-6, 1e-4));
            s.pump.y_p = log_uniform(3e-6, 3e-5);
            const double ls = opt_.nondegenerate ? uniform(1.0e-6, 1.12e-6) : 1064e-9;
            s.centrals = centrals_from_wavelengths(532e-9, ls);
            if (opt_.chirp) s.pump.chirp = uniform(-1.0, 1.0);
            if (opt_.angular) s.pump.dtilde_theta = uniform(-3e-16, 3e-16);
            if (opt_.filters && uniform(0.0, 1.0) < 0.5) {
                s.filter.sigma_s = omega_width(uniform(3e-9, 40e-9), s.centrals.omega_s0);
                s.filter.sigma_i = omega_width(uniform(3e-9, 40e-9), s.centrals.omega_i0);
            }
            try {
                s.pump.theta_p0 = solve_phase_matching(s.wg, s.centrals.omega_s0, s.centrals.omega_i0);
                const GaussianTPSA t = s.build();
                if (opt_.max_vartheta < 1.0 && schmidt(t).vartheta > opt_.max_vartheta) continue;
                return s;
            } catch (const Error&) {
                continue;
            }
        }
        throw Error(Errc::InvalidArgument, "no valid random scenario drawn");
    }

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

private:
    static double omega_width(double sigma_lambda, double omega0) {
        return sigma_lambda * omega0 * omega0 / (2.0 * consts::pi * consts::c);
    }

    std::mt19937_64 rng_;
    RandomOptions opt_;
};

}  // namespace pwtest
