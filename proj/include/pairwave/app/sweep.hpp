#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pairwave/app/config.hpp"
#include "pairwave/tpsa.hpp"

namespace pairwave::app {

struct SweepAxis {
    std::string key;
    double from = 0.0, to = 0.0;  // in `unit`
    std::string unit;
    int points = 1;
    bool log = false;

    std::vector<double> values() const;
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<std::string> quantities;
};

SweepSpec resolve_sweep(const RawConfig& cfg);

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis1, axis2;       // axis2 empty for 1-D sweeps
    std::vector<std::vector<double>> data;  // [point][quantity], axis1 outer
    int failures = 0;
    std::string first_error;
};

// points run on `threads` workers; results land in fixed slots so output order never depends on scheduling
SweepResult run_sweep(const RawConfig& cfg, const SweepSpec& spec, std::optional<GTerms> g_override = std::nullopt,
                      unsigned threads = 0);

std::string format_number(double v);

// one CSV per quantity (or one JSON) plus a provenance sidecar; returns the written paths
std::vector<std::string> write_sweep(const SweepResult& r, const RawConfig& cfg, const std::string& out_dir,
                                     const std::string& format);

}  // namespace pairwave::app
