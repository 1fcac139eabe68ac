#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <fftw3.h>

#include "pairwave/constants.hpp"
#include "pairwave/errors.hpp"
#include "pairwave/oracle.hpp"

namespace pairwave::oracle {

using cd = std::complex<double>;

namespace {

double log_abs_sq(const GaussianTPSA& t, double ws, double wi) { return 2.0 * std::log(std::abs(evaluate(t, ws, wi))); }

Frame amplitude_frame(const GaussianTPSA& t) {
    auto l = [&](double x, double y) { return log_abs_sq(t, x, y); };
    Frame f0 = gaussian_frame(l, t.omega_s0, t.omega_i0, 1e-5 * t.omega_s0, 1e-5 * t.omega_i0);
    // second pass with steps on the scale of the widths
    return gaussian_frame(l, f0.cx, f0.cy, std::sqrt(f0.cov[0][0]), std::sqrt(f0.cov[1][1]));
}

// x = c + axis diag(sd) u
struct Mapped {
    const Frame& f;
    double x(double u, double v) const { return f.cx + f.axis[0][0] * f.sd[0] * u + f.axis[0][1] * f.sd[1] * v; }
    double y(double u, double v) const { return f.cy + f.axis[1][0] * f.sd[0] * u + f.axis[1][1] * f.sd[1] * v; }
    double jacobian() const { return f.sd[0] * f.sd[1]; }
};

constexpr double box = 9.0;  // principal standard deviations

}  // namespace

Frame gaussian_frame(const std::function<double(double, double)>& log_density, double x0, double y0, double hx,
                     double hy) {
    const double c = log_density(x0, y0);
    const double px = log_density(x0 + hx, y0), mx = log_density(x0 - hx, y0);
    const double py = log_density(x0, y0 + hy), my = log_density(x0, y0 - hy);
    const double pp = log_density(x0 + hx, y0 + hy), pm = log_density(x0 + hx, y0 - hy);
    const double mp = log_density(x0 - hx, y0 + hy), mm = log_density(x0 - hx, y0 - hy);
    Eigen::Vector2d g((px - mx) / (2.0 * hx), (py - my) / (2.0 * hy));
    Eigen::Matrix2d h;
    h(0, 0) = (px - 2.0 * c + mx) / (hx * hx);
    h(1, 1) = (py - 2.0 * c + my) / (hy * hy);
    h(0, 1) = h(1, 0) = (pp - pm - mp + mm) / (4.0 * hx * hy);
    Eigen::Matrix2d cov = -h.inverse();
    if (!(cov(0, 0) > 0.0) || !(cov(1, 1) > 0.0) || !(cov.determinant() > 0.0))
        throw Error(Errc::NonNormalizable, "log-density is not concave at the probe point");
    const Eigen::Vector2d shift = -h.inverse() * g;
    Frame f;
    f.cx = x0 + shift(0);
    f.cy = y0 + shift(1);
    f.log_peak = c + 0.5 * g.dot(shift);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f.cov[i][j] = cov(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    for (int k = 0; k < 2; ++k) {
        f.sd[k] = std::sqrt(es.eigenvalues()(k));
        f.axis[0][k] = es.eigenvectors()(0, k);
        f.axis[1][k] = es.eigenvectors()(1, k);
    }
    return f;
}

double quad_norm(const GaussianTPSA& t, const QuadOptions& opt) {
    const Frame f = amplitude_frame(t);
    const Mapped m{f};
    auto g = [&](double u, double v) { return std::exp(log_abs_sq(t, m.x(u, v), m.y(u, v)) - f.log_peak); };
    const QuadResult r = integrate_2d(g, -box, box, -box, box, opt);
    return r.value * std::exp(f.log_peak) * m.jacobian();
}

Marginal numeric_marginal(const GaussianTPSA& t, Field field, int samples) {
    const Frame f = amplitude_frame(t);
    const bool sig = field == Field::signal;
    // x: kept variable, y: integrated out
    const double cx = sig ? f.cx : f.cy, cy = sig ? f.cy : f.cx;
    const double vxx = sig ? f.cov[0][0] : f.cov[1][1];
    const double vyy = sig ? f.cov[1][1] : f.cov[0][0];
    const double vxy = f.cov[0][1];
    const double sx = std::sqrt(vxx);
    const double sy_cond = std::sqrt(vyy - vxy * vxy / vxx);
    const double w0 = sig ? t.omega_s0 : t.omega_i0;

    QuadOptions inner;
    inner.rel_tol = 1e-12;
    auto dens = [&](double x) {
        const double ym = cy + vxy / vxx * (x - cx);
        auto h = [&](double v) {
            const double y = ym + sy_cond * v;
            const double l = sig ? log_abs_sq(t, x, y) : log_abs_sq(t, y, x);
            return std::exp(l - f.log_peak);
        };
        return integrate_1d(h, -box, box, inner).value * sy_cond;
    };

    QuadOptions outer;
    outer.rel_tol = 1e-11;
    // moments in the scaled variable u = (x - cx)/sx
    const double m0 = integrate_1d([&](double u) { return dens(cx + sx * u); }, -box, box, outer).value;
    outer.abs_tol = 1e-12 * m0;
    const double m1 = integrate_1d([&](double u) { return u * dens(cx + sx * u); }, -box, box, outer).value;
    const double m2 = integrate_1d([&](double u) { return u * u * dens(cx + sx * u); }, -box, box, outer).value;

    Marginal out;
    out.field = field;
    const double scale = std::exp(f.log_peak) * sx;
    out.mass = m0 * scale;
    const double mu = m1 / m0;
    out.mean = cx + sx * mu - w0;
    out.variance = sx * sx * (m2 / m0 - mu * mu);
    out.sigma = std::sqrt(2.0 * out.variance);
    for (int k = 0; k < samples; ++k) {
        const double w = w0 + out.mean + out.sigma * (-4.0 + 8.0 * k / std::max(1, samples - 1));
        out.omega.push_back(w);
        out.spectrum.push_back(consts::hbar * w * dens(w) * std::exp(f.log_peak));
    }
    return out;
}

TemporalMoments numeric_temporal_marginal(const GaussianTPSA& t, Field field) {
    const Frame f = amplitude_frame(t);
    const Mapped m{f};
    const bool sig = field == Field::signal;
    // five-point derivative along the chosen frequency
    const double h = 1e-3 * std::sqrt(sig ? f.cov[0][0] : f.cov[1][1]);
    const double amp = std::exp(-0.5 * f.log_peak);
    auto phi = [&](double x, double y) { return evaluate(t, x, y) * amp; };
    auto dphi = [&](double x, double y) {
        auto at = [&](double s) { return sig ? phi(x + s, y) : phi(x, y + s); };
        return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    };
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    auto over = [&](auto&& g) {
        return integrate_2d([&](double u, double v) { return g(m.x(u, v), m.y(u, v)); }, -box, box, -box, box, opt)
            .value;
    };
    const double n0 = over([&](double x, double y) { return std::norm(phi(x, y)); });
    const double n2 = over([&](double x, double y) { return std::norm(dphi(x, y)); });
    // the first moment can vanish, so it gets an absolute target; |n1| <= sqrt(n0 n2)
    opt.abs_tol = 1e-11 * std::sqrt(n0 * n2);
    // d/domega <-> i t under Phi(t) = (1/2pi) int Phi(omega) exp(-i domega t)
    const double n1 = over([&](double x, double y) { return (std::conj(phi(x, y)) * cd(0.0, -1.0) * dphi(x, y)).real(); });
    TemporalMoments tm;
    tm.mean = n1 / n0;
    tm.variance = n2 / n0 - tm.mean * tm.mean;
    tm.sigma = std::sqrt(2.0 * tm.variance);
    return tm;
}

std::vector<double> numeric_schmidt(const GaussianTPSA& t, int n_points, double span_widths) {
    if (n_points < 256) throw Error(Errc::InvalidArgument, "SVD grid needs at least 256 points per axis");
    const Frame f = amplitude_frame(t);
    const double ls = span_widths * std::sqrt(2.0 * f.cov[0][0]);
    const double li = span_widths * std::sqrt(2.0 * f.cov[1][1]);
    const double dx = 2.0 * ls / n_points, dy = 2.0 * li / n_points;
    const double amp = std::exp(-0.5 * f.log_peak);
    Eigen::MatrixXcd mat(n_points, n_points);
    double riemann = 0.0;
    for (int j = 0; j < n_points; ++j) {
        const double x = f.cx - ls + (j + 0.5) * dx;
        for (int k = 0; k < n_points; ++k) {
            const double y = f.cy - li + (k + 0.5) * dy;
            const cd v = evaluate(t, x, y) * amp * std::sqrt(dx * dy);
            mat(j, k) = v;
            riemann += std::norm(v);
        }
    }
    const double total = quad_norm(t) * amp * amp;
    const double tail = std::abs(1.0 - riemann / total);
    if (tail > 1e-6) {
        std::ostringstream os;
        os << "sampled mass differs from the full integral by " << tail << " (> 1e-6)";
        throw Error(Errc::GridTooCoarse, os.str());
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
    const Eigen::VectorXd s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    double sum = 0.0;
    for (double v : out) sum += v * v;
    for (double& v : out) v /= std::sqrt(sum);
    return out;
}

std::vector<TimeProbe> fft_time_domain(const GaussianTPSA& t, int n) {
    if (n < 64 || n % 4 != 0) throw Error(Errc::InvalidArgument, "FFT grid size must be a multiple of 4, at least 64");
    const Frame f = amplitude_frame(t);
    const double ls = 10.0 * std::sqrt(f.cov[0][0]), li = 10.0 * std::sqrt(f.cov[1][1]);
    const double dws = 2.0 * ls / n, dwi = 2.0 * li / n;
    const double dts = 2.0 * consts::pi / (n * dws), dti = 2.0 * consts::pi / (n * dwi);

    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    fftw_plan plan = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    for (int m = 0; m < n; ++m) {
        const double ws = f.cx + (m - n / 2) * dws;
        for (int l = 0; l < n; ++l) {
            const double wi = f.cy + (l - n / 2) * dwi;
            const cd v = evaluate(t, ws, wi) * (((m + l) % 2) ? -1.0 : 1.0);
            buf[static_cast<std::size_t>(m) * n + l][0] = v.real();
            buf[static_cast<std::size_t>(m) * n + l][1] = v.imag();
        }
    }
    fftw_execute(plan);

    const double os = f.cx - t.omega_s0, oi = f.cy - t.omega_i0;
    auto value = [&](int j, int k) {
        const std::size_t idx = static_cast<std::size_t>(j) * n + k;
        const double ts = (j - n / 2) * dts, ti = (k - n / 2) * dti;
        const cd raw(buf[idx][0], buf[idx][1]);
        const double sign = ((j + k) % 2) ? -1.0 : 1.0;
        return raw * sign * std::exp(cd(0.0, -(os * ts + oi * ti))) * dws * dwi / (2.0 * consts::pi);
    };

    // peak node and covariance of |Phi(t)|^2 on the grid
    int pj = 0, pk = 0;
    double best = -1.0, w = 0.0, ms = 0.0, mi = 0.0, vs = 0.0, vi = 0.0, vc = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double a = std::norm(value(j, k));
            if (a > best) {
                best = a;
                pj = j;
                pk = k;
            }
            const double ts = (j - n / 2) * dts, ti = (k - n / 2) * dti;
            w += a;
            ms += a * ts;
            mi += a * ti;
            vs += a * ts * ts;
            vi += a * ti * ti;
            vc += a * ts * ti;
        }
    ms /= w;
    mi /= w;
    vs = vs / w - ms * ms;
    vi = vi / w - mi * mi;
    vc = vc / w - ms * mi;

    // peak plus 8 nodes on the one-sigma ellipse; square offsets would land deep in the
    // tails of a strongly correlated amplitude where only round-off is left
    const double l11 = std::sqrt(vs), l21 = vc / l11, l22 = std::sqrt(std::max(vi - l21 * l21, 0.0));
    std::vector<TimeProbe> out;
    out.push_back({(pj - n / 2) * dts, (pk - n / 2) * dti, value(pj, pk)});
    for (int q = 0; q < 8; ++q) {
        const double c = std::cos(q * consts::pi / 4), sn = std::sin(q * consts::pi / 4);
        const int j = std::clamp(pj + static_cast<int>(std::lround(l11 * c / dts)), 0, n - 1);
        const int k = std::clamp(pk + static_cast<int>(std::lround((l21 * c + l22 * sn) / dti)), 0, n - 1);
        out.push_back({(j - n / 2) * dts, (k - n / 2) * dti, value(j, k)});
    }
    fftw_destroy_plan(plan);
    fftw_free(buf);
    return out;
}

double hom_overlap(const std::function<cd(double, double)>& phi_t, double beat, double tau_l, double center_s,
                   double center_i, double half_width) {
    const double alo = std::min(center_s, center_i + tau_l) - half_width;
    const double ahi = std::max(center_s, center_i + tau_l) + half_width;
    const double blo = std::min(center_i, center_s - tau_l) - half_width;
    const double bhi = std::max(center_i, center_s - tau_l) + half_width;
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    const double norm = integrate_2d([&](double a, double b) { return std::norm(phi_t(a, b)); }, center_s - half_width,
                                     center_s + half_width, center_i - half_width, center_i + half_width, opt)
                            .value;
    opt.rel_tol = 0.0;
    opt.abs_tol = 1e-11 * norm;
    const cd ph = std::exp(cd(0.0, -beat * tau_l));
    const double over = integrate_2d(
                            [&](double a, double b) {
                                return (ph * phi_t(a, b) * std::conj(phi_t(b + tau_l, a - tau_l))).real();
                            },
                            alo, ahi, blo, bhi, opt)
                            .value;
    return over / norm;
}

cd exact_phi1p(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c, double omega_s, double omega_i) {
    const DispersionModel& md = wg.model;
    const double wp0 = c.omega_p0(), wp = omega_s + omega_i;
    auto n = [&](double w) { return refractive_index(md, w); };
    auto kp = [&](double w) { return n(w) * w / consts::c; };
    auto gsq = [&](double w) { return n(w) * w * wg.alpha / consts::c; };
    auto beta = [&](double w) { return kp(w) * std::sqrt(1.0 - wg.alpha * consts::c / (n(w) * w)); };
    // constant pump group velocity, five-point stencil
    const double h = 1e-4 * wp0;
    const double inv_vp = (-kp(wp0 + 2 * h) + 8 * kp(wp0 + h) - 8 * kp(wp0 - h) + kp(wp0 - 2 * h)) / (12 * h);
    const double vp = 1.0 / inv_vp;

    const double th = pump.theta_p0 + pump.dtilde_theta * (wp - wp0);
    const double a2 = 1.0 + pump.chirp * pump.chirp;
    const double cp_sq = pump.tau_p / (std::sqrt(2.0 * consts::pi) * consts::pi * consts::eps0 * n(wp) * n(wp) *
                                       pump.y_p * pump.z_p * a2) *
                         pump.power / (vp * std::cos(th) * pump.f_rep);
    auto ca_sq = [&](double w) {
        return consts::hbar * w * std::sqrt(gsq(w)) /
               (2.0 * std::sqrt(consts::pi) * consts::eps0 * std::pow(n(w), 3) * consts::c * wg.ly);
    };
    const double gam = gsq(omega_s) + gsq(omega_i);
    const double lead = std::sqrt(2.0 * consts::pi) * 2.0 * consts::pi * consts::pi * consts::eps0 * wg.d / consts::hbar;
    const double mag = lead * std::sqrt(cp_sq * ca_sq(omega_s) * ca_sq(omega_i)) * pump.y_p * pump.z_p /
                       std::sqrt(gam) * erf_quad(wg.ly / (2.0 * pump.y_p));
    const double dwp = wp - wp0;
    const cd pulse = -pump.tau_p * pump.tau_p * dwp * dwp / (4.0 * cd(1.0, pump.chirp));
    const double mismatch = kp(wp) * std::sin(th) - beta(omega_s) + beta(omega_i);
    const double k = kp(wp) * std::cos(th);
    const cd expo = pulse - pump.z_p * pump.z_p * mismatch * mismatch / 4.0 - k * k / (2.0 * gam);
    return cd(0.0, -1.0) * mag * std::exp(expo);
}

Audit gaussian_audit(const WaveguideSpec& wg, const PumpSpec& pump, const Centrals& c, const GaussianTPSA& t, int n,
                     double span) {
    const Frame f = amplitude_frame(t);
    const double ws = span * std::sqrt(2.0 * f.cov[0][0]), wi = span * std::sqrt(2.0 * f.cov[1][1]);
    const double g0 = std::abs(evaluate(t, c.omega_s0, c.omega_i0));
    const double e0 = std::abs(exact_phi1p(wg, pump, c, c.omega_s0, c.omega_i0));
    Audit a;
    a.calibration_ratio = g0 / (std::sqrt(pump.f_rep) * e0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            AuditPoint p;
            p.d_omega_s = -ws + 2.0 * ws * j / (n - 1);
            p.d_omega_i = -wi + 2.0 * wi * k / (n - 1);
            const double x = c.omega_s0 + p.d_omega_s, y = c.omega_i0 + p.d_omega_i;
            p.gaussian = std::abs(evaluate(t, x, y)) / g0;
            p.exact = std::abs(exact_phi1p(wg, pump, c, x, y)) / e0;
            p.deviation = std::abs(p.gaussian - p.exact) / p.exact;
            p.inside = log_abs_sq(t, x, y) - f.log_peak >= -4.0;
            a.max_deviation_box = std::max(a.max_deviation_box, p.deviation);
            if (p.inside) a.max_deviation_inside = std::max(a.max_deviation_inside, p.deviation);
            a.points.push_back(p);
        }
    return a;
}

}  // namespace pairwave::oracle
