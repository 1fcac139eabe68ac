#pragma once

#include <optional>
#include <vector>

namespace pairwave {

// measured e^-1 half widths of the two intensity spectra and the HOM curvature
struct MeasurementSet {
    double sigma_omega_s = 0.0;  // rad/s
    double sigma_omega_i = 0.0;  // rad/s
    double b = 0.0;              // 1/s^2
    std::optional<double> omega_s0, omega_i0;
};

void validate(const MeasurementSet& ms);

struct InverseRoot {
    double f2s = 0.0, f2i = 0.0, f2si = 0.0;  // real parts, s^2
    double dfr = 0.0;
    double p = 0.0;
    double vartheta = 0.0;
    double entropy = 0.0;  // bits
    bool physical = false;
};

struct InverseResult {
    double f = 1.0;  // sigma_i^2 / sigma_s^2
    double discriminant = 0.0;
    int root_multiplicity = 0;  // roots of the quadratic (1 on the closed-form path)
    bool closed_form = false;
    std::vector<InverseRoot> roots;  // physical ones only, ascending entropy
    std::vector<InverseRoot> rejected;
    bool ambiguous = false;  // two physical roots whose entropies differ by more than 0.1 bit
};

InverseResult estimate(const MeasurementSet& ms);

struct HomSample {
    double tau_l = 0.0;
    double r_n = 0.0;
};

struct HomFit {
    double a = 0.0;
    double b = 0.0;
    double beat = 0.0;
    double rms = 0.0;
    int samples = 0;
};

// R = 1 - A exp(-B tau^2) cos(beat tau); the beat is held fixed (zero when absent)
HomFit fit_hom_B(const std::vector<HomSample>& samples, std::optional<double> beat = std::nullopt);

}  // namespace pairwave
