#include "pairwave/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pairwave/entanglement.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/numerics.hpp"

namespace pairwave {

namespace {

InverseRoot make_root(double f2s, double f) {
    InverseRoot r;
    r.f2s = f2s;
    r.f2i = f2s / f;
    return r;
}

void classify(InverseRoot& r) {
    r.dfr = 4.0 * r.f2s * r.f2i - r.f2si * r.f2si;
    r.physical = r.f2s > 0.0 && r.f2i > 0.0 && r.dfr > 0.0;
    if (!r.physical) return;
    // P = Re e2 / e2c - 1 with real coefficients
    r.p = r.f2si == 0.0 ? std::numeric_limits<double>::infinity() : 2.0 * r.dfr / (r.f2si * r.f2si);
    r.vartheta = vartheta_from_p(r.p);
    r.entropy = entropy(r.vartheta);
}

}  // namespace

void validate(const MeasurementSet& ms) {
    if (!(ms.sigma_omega_s > 0.0) || !(ms.sigma_omega_i > 0.0))
        throw Error(Errc::InvalidArgument, "spectral widths must be positive");
    if (!(ms.b > 0.0)) throw Error(Errc::InvalidArgument, "HOM curvature B must be positive");
    if (!std::isfinite(ms.sigma_omega_s) || !std::isfinite(ms.sigma_omega_i) || !std::isfinite(ms.b))
        throw Error(Errc::InvalidArgument, "measurements must be finite");
}

InverseResult estimate(const MeasurementSet& ms) {
    validate(ms);
    InverseResult res;
    const double ss = ms.sigma_omega_s * ms.sigma_omega_s;
    const double b = ms.b;
    const double f = ms.sigma_omega_i * ms.sigma_omega_i / ss;
    res.f = f;

    // f2i = f2s/F, f2s + f2i - f2si = 1/(2B), sigma_s^2 = 2 f2i / Dfr
    std::vector<double> cands;
    if (std::abs(f - 1.0) <= 1e-12) {
        res.closed_form = true;
        res.root_multiplicity = 1;
        if (!(ss > b)) {
            std::ostringstream os;
            os << "symmetric widths need sigma_s^2 > B; got sigma_s^2 = " << ss << " s^-2, B = " << b << " s^-2";
            throw Error(Errc::NoPhysicalRoot, os.str());
        }
        cands.push_back(ss / (8.0 * b * (ss - b)));
    } else {
        const double qa = -(f - 1.0) * (f - 1.0) / f;
        const double qb = (f + 1.0) / b - 2.0 / ss;
        const double qc = -f / (4.0 * b * b);
        const auto q = num::solve_quadratic(qa, qb, qc);
        res.discriminant = q.discriminant;
        if (q.count == 0) {
            std::ostringstream os;
            os << "discriminant " << q.discriminant << " < 0: widths and B admit no Gaussian amplitude";
            throw Error(Errc::NegativeDiscriminant, os.str());
        }
        res.root_multiplicity = q.count;
        cands.push_back(q.r1);
        if (q.count == 2 && q.r2 != q.r1) cands.push_back(q.r2);
    }

    for (double f2s : cands) {
        InverseRoot r = make_root(f2s, f);
        r.f2si = (f + 1.0) * f2s / f - 1.0 / (2.0 * b);
        classify(r);
        (r.physical ? res.roots : res.rejected).push_back(r);
    }
    if (res.roots.empty()) {
        std::ostringstream os;
        os << "no root gives f2s > 0, f2i > 0 and a positive determinant (" << res.rejected.size()
           << " candidate(s) rejected)";
        throw Error(Errc::NoPhysicalRoot, os.str());
    }
    std::sort(res.roots.begin(), res.roots.end(),
              [](const InverseRoot& x, const InverseRoot& y) { return x.entropy < y.entropy; });
    if (res.roots.size() == 2) res.ambiguous = res.roots[1].entropy - res.roots[0].entropy > 0.1;
    return res;
}

namespace {

struct Projection {
    double a = 0.0;
    double sse = 0.0;
};

// best A for fixed B, in closed form
Projection project(const std::vector<HomSample>& s, double b, double beat) {
    double num = 0.0, den = 0.0;
    for (const auto& p : s) {
        const double g = std::exp(-b * p.tau_l * p.tau_l) * std::cos(beat * p.tau_l);
        num += (1.0 - p.r_n) * g;
        den += g * g;
    }
    Projection pr;
    pr.a = den > 0.0 ? num / den : 0.0;
    for (const auto& p : s) {
        const double g = std::exp(-b * p.tau_l * p.tau_l) * std::cos(beat * p.tau_l);
        const double r = 1.0 - p.r_n - pr.a * g;
        pr.sse += r * r;
    }
    return pr;
}

}  // namespace

HomFit fit_hom_B(const std::vector<HomSample>& samples, std::optional<double> beat_in) {
    if (samples.size() < 7) {
        std::ostringstream os;
        os << "HOM fit needs at least 7 samples spanning the dip, got " << samples.size();
        throw Error(Errc::InsufficientSamples, os.str());
    }
    double tmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    std::vector<double> taus;
    for (const auto& s : samples) {
        if (!std::isfinite(s.tau_l) || !std::isfinite(s.r_n))
            throw Error(Errc::InvalidArgument, "HOM samples must be finite");
        // the beat term lets R_n rise above one, up to 1 + A
        if (s.r_n < -0.1 || s.r_n > 2.1) throw Error(Errc::InvalidArgument, "normalized coincidences must lie in [0, 2]");
        tmax = std::max(tmax, std::abs(s.tau_l));
        taus.push_back(std::abs(s.tau_l));
    }
    std::sort(taus.begin(), taus.end());
    for (std::size_t k = 1; k < taus.size(); ++k)
        if (taus[k] > taus[k - 1]) dmin = std::min(dmin, taus[k] - taus[k - 1]);
    if (!(tmax > 0.0) || !std::isfinite(dmin))
        throw Error(Errc::FitDiverged, "delays do not span an interval; B is unidentifiable");
    const double beat = beat_in.value_or(0.0);

    // B from well below the span to well above the finest spacing, log-spaced coarse scan
    const double lo = std::log(1e-4 / (tmax * tmax));
    const double hi = std::log(1e4 / (dmin * dmin));
    auto cost = [&](double lb) { return project(samples, std::exp(lb), beat).sse; };
    const int n_scan = 400;
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n_scan; ++k) {
        const double c = cost(lo + (hi - lo) * k / n_scan);
        if (c < best_cost) {
            best_cost = c;
            best = k;
        }
    }
    const double step = (hi - lo) / n_scan;
    double lb = num::golden_section(cost, lo + std::max(0, best - 1) * step, lo + std::min(n_scan, best + 1) * step, 1e-14);
    Projection pr = project(samples, std::exp(lb), beat);
    const double scale = std::sqrt(pr.sse / samples.size());

    if (!(std::abs(pr.a) > 1e-6) || std::abs(pr.a) < 3.0 * scale) {
        std::ostringstream os;
        os << "fitted dip depth A = " << pr.a << " is indistinguishable from zero; B cannot be identified";
        throw Error(Errc::FitDiverged, os.str());
    }
    if (best == 0 || best == n_scan) {
        std::ostringstream os;
        os << "best B = " << std::exp(lb) << " s^-2 sits on the search boundary; delays do not resolve the dip";
        throw Error(Errc::FitDiverged, os.str());
    }

    // Gauss-Newton polish on (A, B)
    double a = pr.a, b = std::exp(lb);
    for (int it = 0; it < 20; ++it) {
        double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
        for (const auto& s : samples) {
            const double t2 = s.tau_l * s.tau_l;
            const double g = std::exp(-b * t2) * std::cos(beat * s.tau_l);
            const double r = 1.0 - s.r_n - a * g;
            const double da = g, db = -a * t2 * g;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        const double det = jaa * jbb - jab * jab;
        if (!(det > 0.0)) break;
        const double dA = (jbb * ga - jab * gb) / det;
        const double dB = (jaa * gb - jab * ga) / det;
        if (!std::isfinite(dA) || !std::isfinite(dB) || b + dB <= 0.0) break;
        a += dA;
        b += dB;
        if (std::abs(dB) <= 1e-15 * b && std::abs(dA) <= 1e-15 * std::abs(a)) break;
    }

    HomFit fit;
    fit.a = a;
    fit.b = b;
    fit.beat = beat;
    fit.samples = static_cast<int>(samples.size());
    double sse = 0.0;
    for (const auto& s : samples) {
        const double r = 1.0 - s.r_n - a * std::exp(-b * s.tau_l * s.tau_l) * std::cos(beat * s.tau_l);
        sse += r * r;
    }
    fit.rms = std::sqrt(sse / samples.size());
    return fit;
}

}  // namespace pairwave
