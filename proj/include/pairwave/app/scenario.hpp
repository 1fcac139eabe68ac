#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairwave/app/config.hpp"
#include "pairwave/tpsa.hpp"

namespace pairwave::app {

struct Scenario {
    WaveguideSpec wg;
    PumpSpec pump;
    FilterSpec filter;
    Centrals centrals;
    BuildOptions opts;
    double p_min = 0.95;
    bool theta_auto = true;
    std::string dispersion_source;
    int hom_points = 81;
    double hom_span = 3.0;  // in units of the dip width
};

// resolves units, the pump angle and angular dispersion; errors name the offending key
Scenario resolve_scenario(const RawConfig& cfg, std::optional<GTerms> g_override = std::nullopt);

GaussianTPSA build(const Scenario& s);

struct QuantityInfo {
    std::string name;
    std::string unit;
};

// every quantity a sweep can emit, in output order
const std::vector<QuantityInfo>& quantity_catalog();

// values for the requested catalogue names; NaN where the quantity is undefined at this point
std::vector<double> evaluate_quantities(const Scenario& s, const std::vector<std::string>& names,
                                        std::string* first_error = nullptr);

nlohmann::json scenario_report(const Scenario& s);

struct HomTable {
    std::vector<double> tau_l;  // s
    std::vector<double> r_n;
};
HomTable hom_table(const Scenario& s);

}  // namespace pairwave::app
