#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairwave/app/scenario.hpp"
#include "pairwave/inverse.hpp"

namespace pairwave::app {

struct WidthsFile {
    MeasurementSet ms;  // b stays zero unless the file gives B
    bool has_b = false;
};

// "key = value unit" lines: sigma_omega_s/_i (rad/s) or sigma_lambda_s/_i (nm, with lambda_s0/_i0), B, lambda_s0/_i0
WidthsFile read_widths(const std::string& path);
std::vector<HomSample> read_hom_csv(const std::string& path);

nlohmann::json run_inverse(const std::string& widths_path, const std::optional<std::string>& hom_path);

// widths.txt and hom.csv for the scenario, in the formats above
std::vector<std::string> write_inverse_inputs(const Scenario& s, const std::string& out_dir);

}  // namespace pairwave::app
